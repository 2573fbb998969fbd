// lexdb: command-line front end for the lexical database.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "lexdb/exchange.hpp"
#include "lexdb/fixtures.hpp"
#include "lexdb/http_server.hpp"
#include "lexdb/service.hpp"

namespace fs = std::filesystem;
using namespace lexdb;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string default_data_path() {
  if (const char* env = std::getenv("LEXDB_DATA"); env && *env) return env;
  return "lexdb.json";
}

ConceptStore load_store(const std::string& path, bool missing_ok) {
  if (!fs::exists(path)) {
    if (missing_ok) return {};
    throw LexError(ErrorCode::parse_error, "data file '" + path + "' does not exist");
  }
  return import_document(read_document_file(path));
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw LexError(ErrorCode::bad_request, "cannot write '" + out + "'");
  f << text;
}

std::vector<std::string> split_codes(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void print_diagnostics(const std::vector<Diagnostic>& diagnostics) {
  for (const Diagnostic& d : diagnostics) std::cerr << format_diagnostic(d) << '\n';
}

ModelCapability load_capability(const std::string& name_or_path) {
  if (auto preset = capability_preset(name_or_path)) return *preset;
  if (!fs::exists(name_or_path))
    throw LexError(ErrorCode::bad_request, "'" + name_or_path + "' is neither a preset nor a file");
  std::ifstream in(name_or_path);
  try {
    return capability_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw LexError(ErrorCode::parse_error, name_or_path + ": " + e.what());
  }
}

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string bias_table(const BiasReport& r) {
  std::ostringstream os;
  os << "task: " << r.task << "  system: " << r.system << "  direction: " << to_string(r.direction) << '\n';
  os << std::left << std::setw(12) << "language" << "value\n";
  for (const PerfRecord& p : r.per_language) os << std::left << std::setw(12) << p.language << fixed(p.value) << '\n';
  os << "n=" << r.n << "  mean=" << fixed(r.mean) << "  bias=" << fixed(r.bias) << '\n';
  return os.str();
}

// ---- commands ----------------------------------------------------------------

int cmd_validate(const std::string& file) {
  ExchangeDocument doc = read_document_file(file);
  auto diagnostics = validate_document(doc);
  print_diagnostics(diagnostics);
  std::size_t errors = std::count_if(diagnostics.begin(), diagnostics.end(),
                                     [](const Diagnostic& d) { return d.severity == Severity::error; });
  std::cout << file << ": " << errors << " error(s), " << diagnostics.size() - errors << " warning(s)\n";
  return errors ? kFailed : kOk;
}

int cmd_import(const std::string& file, const std::string& data) {
  ExchangeDocument doc = read_document_file(file);
  ConceptStore store = load_store(data, true);
  ImportSummary s = merge_document(doc, store);
  print_diagnostics(doc.parse_warnings);
  write_document_file(export_document(store), data);
  std::cout << "imported into " << data << ": " << s.languages << " languages, " << s.concepts << " concepts, "
            << s.semantic_relations << " relations, " << s.language_concepts << " language concepts, " << s.senses
            << " senses, " << s.gaps << " gaps, " << s.lexical_links << " links (" << s.unchanged
            << " unchanged)\n";
  return kOk;
}

int cmd_export(const std::string& langs, const std::string& out, const std::string& data) {
  ConceptStore store = load_store(data, false);
  ExportScope scope = langs.empty() ? ExportScope::all() : ExportScope::of(split_codes(langs));
  emit(serialize_document(export_document(store, scope)), out);
  return kOk;
}

int cmd_map(const std::string& from, const std::string& to, bool locals, const std::string& out,
            const std::string& data) {
  ConceptStore store = load_store(data, false);
  MappingSet set = derive_mappings(store, store.language_by_code(from), store.language_by_code(to),
                                   DeriveOptions{locals});
  ExchangeDocument doc;
  doc.mapping_sets.push_back(mapping_set_to_doc(set, store, from + "-" + to));
  for (const DocMappingRelation& r : doc.mapping_sets.front().relations) {
    for (const DocEndpoint* e : {&r.source, &r.target}) {
      if (e->concept_id) doc.external.push_back(*e->concept_id);
      if (e->interlingual) doc.external.push_back(*e->interlingual);
      if (e->gap) doc.external.push_back(*e->gap);
    }
  }
  doc.external.push_back(from);
  doc.external.push_back(to);
  std::sort(doc.external.begin(), doc.external.end());
  doc.external.erase(std::unique(doc.external.begin(), doc.external.end()), doc.external.end());
  emit(serialize_document(doc), out);
  return kOk;
}

int cmd_coverage(const std::string& gold_file, const std::string& capability_arg, const std::string& set_name,
                 bool json_out, const std::string& data) {
  ExchangeDocument gold_doc = read_document_file(gold_file);
  if (gold_doc.mapping_sets.empty()) throw LexError(ErrorCode::bad_request, gold_file + " holds no mapping set");
  ConceptStore store = load_store(data, true);
  merge_document(gold_doc, store);
  const DocMappingSet* chosen = &gold_doc.mapping_sets.front();
  if (!set_name.empty()) {
    auto it = std::find_if(gold_doc.mapping_sets.begin(), gold_doc.mapping_sets.end(),
                           [&](const DocMappingSet& s) { return s.name == set_name; });
    if (it == gold_doc.mapping_sets.end()) throw LexError(ErrorCode::unknown_ref, "no mapping set '" + set_name + "'");
    chosen = &*it;
  }
  ModelCapability cap = load_capability(capability_arg);
  MappingSet gold = resolve_mapping_set(*chosen, store);
  CoverageReport report = coverage(apply_capability(gold, cap, store), gold);
  std::optional<BiasReport> b;
  if (report.per_language.size() >= 2) b = coverage_bias(report, store, cap.name);

  if (json_out) {
    ordered_json j;
    j["capability"] = capability_to_json(cap);
    j["gold"] = report.gold;
    j["expressible"] = report.expressible;
    j["overall"] = report.overall;
    j["per_language"] = ordered_json::array();
    for (const auto& [lang, lc] : report.per_language)
      j["per_language"].push_back(
          {{"language", store.language(lang).code}, {"expressible", lc.expressible}, {"gold", lc.gold},
           {"ratio", lc.ratio}});
    j["bias"] = b ? bias_report_to_json(*b) : ordered_json();
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "capability: " << cap.name << "  gold set: " << chosen->name << '\n';
  std::cout << std::left << std::setw(12) << "language" << std::setw(13) << "expressible" << std::setw(8) << "gold"
            << "ratio\n";
  for (const auto& [lang, lc] : report.per_language)
    std::cout << std::left << std::setw(12) << store.language(lang).code << std::setw(13) << lc.expressible
              << std::setw(8) << lc.gold << fixed(lc.ratio) << '\n';
  std::cout << "overall " << report.expressible << "/" << report.gold << " = " << fixed(report.overall) << '\n';
  if (b) std::cout << "bias " << fixed(b->bias) << '\n';
  return kOk;
}

int cmd_bias(const std::string& perf_file, bool json_out) {
  ExchangeDocument doc = read_document_file(perf_file);
  std::vector<PerfRecord> records;
  for (const DocPerfTable& t : doc.perf_tables) records.insert(records.end(), t.records.begin(), t.records.end());
  if (records.empty()) throw LexError(ErrorCode::empty_input, perf_file + " holds no performance records");
  ordered_json reports = ordered_json::array();
  std::string text;
  for (const auto& group : group_by_task(records)) {
    BiasReport r = bias(group);
    reports.push_back(bias_report_to_json(r));
    if (!text.empty()) text += '\n';
    text += bias_table(r);
  }
  if (json_out) {
    std::cout << ordered_json{{"reports", reports}}.dump(2) << '\n';
  } else {
    std::cout << text;
  }
  return kOk;
}

int cmd_serve(int port, const std::string& host, const std::string& db) {
  // Block termination signals so the server thread inherits the mask and
  // the main thread can wait for them synchronously.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  LexiconService service;
  service.open(db);
  HttpServer server(service);
  int bound = server.bind(host, port);
  std::cout << "serving " << db << " on http://" << host << ":" << bound << std::endl;
  std::thread worker([&] { server.listen(); });
  int received = 0;
  sigwait(&signals, &received);
  server.stop();
  worker.join();
  service.write_snapshot();
  return kOk;
}

int cmd_fixtures(const std::string& dir) {
  fs::create_directories(dir);
  for (const std::string& name : fixtures::fixture_names()) {
    ConceptStore store = fixtures::by_name(name);
    write_document_file(export_document(store), (fs::path(dir) / (name + ".json")).string());
  }

  ConceptStore both = fixtures::rice_and_kinship();
  std::vector<LanguageId> langs;
  for (const Language& l : both.languages()) langs.push_back(l.id);
  ExchangeDocument gold = export_document(both);
  gold.mapping_sets.push_back(mapping_set_to_doc(derive_gold(both, langs, DeriveOptions{true}), both, "gold"));
  write_document_file(gold, (fs::path(dir) / "rice_kinship_gold.json").string());

  ExchangeDocument perf;
  perf.perf_tables.push_back(DocPerfTable{"kinship translation", fixtures::translation_perf_records()});
  write_document_file(perf, (fs::path(dir) / "kinship_perf.json").string());
  std::cout << "wrote fixtures to " << dir << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lexdb: diversity-aware multilingual lexical database"};
  app.require_subcommand(1);
  std::string data = default_data_path();
  app.add_option("--data", data, "Data file (default: $LEXDB_DATA or ./lexdb.json)");

  std::string file, langs, out, from, to, gold, capability, set_name, perf, db, host = "127.0.0.1", dir = "data";
  bool locals = false, json_out = false;
  int port = 8080;

  auto* validate = app.add_subcommand("validate", "Check an exchange document");
  validate->add_option("file", file, "Document")->required();

  auto* import = app.add_subcommand("import", "Merge a document into the data file");
  import->add_option("file", file, "Document")->required();

  auto* exp = app.add_subcommand("export", "Write lexicons as an exchange document");
  exp->add_option("--langs", langs, "Comma-separated language codes (default: all)");
  exp->add_option("--out", out, "Output file (default: stdout)");

  auto* map = app.add_subcommand("map", "Derive cross-lingual mappings between two languages");
  map->add_option("--from", from, "Source language")->required();
  map->add_option("--to", to, "Target language")->required();
  map->add_flag("--include-local", locals, "Map local concepts through their roots");
  map->add_option("--out", out, "Output file (default: stdout)");

  auto* cov = app.add_subcommand("coverage", "Coverage of a gold mapping set under a model");
  cov->add_option("--gold", gold, "Document holding the gold mapping set")->required();
  cov->add_option("--capability", capability, "Preset name or capability JSON file")->required();
  cov->add_option("--set", set_name, "Mapping set name (default: first)");
  cov->add_flag("--json", json_out, "Machine-readable output");

  auto* bias_cmd = app.add_subcommand("bias", "Bias of performance tables");
  bias_cmd->add_option("--perf", perf, "Document holding perf tables")->required();
  bias_cmd->add_flag("--json", json_out, "Machine-readable output");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--db", db, "Base document; snapshot and log are kept beside it (default: data file)");

  auto* fix = app.add_subcommand("fixtures", "Write the bundled fixture documents");
  fix->add_option("--out-dir", dir, "Directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*import) return cmd_import(file, data);
    if (*exp) return cmd_export(langs, out, data);
    if (*map) return cmd_map(from, to, locals, out, data);
    if (*cov) return cmd_coverage(gold, capability, set_name, json_out, data);
    if (*bias_cmd) return cmd_bias(perf, json_out);
    if (*serve) return cmd_serve(port, host, db.empty() ? data : db);
    if (*fix) return cmd_fixtures(dir);
  } catch (const ValidationError& e) {
    print_diagnostics(e.diagnostics());
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const LexError& e) {
    std::cerr << "error " << to_string(e.code()) << ": " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
