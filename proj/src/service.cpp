#include "lexdb/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <sstream>

#include "lexdb/query.hpp"

namespace lexdb {

using nlohmann::json;
using nlohmann::ordered_json;

// ---- events & errors ---------------------------------------------------------

ordered_json edit_event_to_json(const EditEvent& e) {
  ordered_json j;
  j["seq"] = e.seq;
  j["contributor"] = e.contributor;
  j["timestamp"] = e.timestamp;
  j["action"] = e.action;
  j["args"] = ordered_json::parse(e.args.dump());
  if (e.error) {
    j["result"] = "error";
    j["error"] = *e.error;
  } else {
    j["result"] = "ok";
    j["created"] = ordered_json::parse(e.created.dump());
  }
  return j;
}

EditEvent edit_event_from_json(const json& j) {
  try {
    EditEvent e;
    e.seq = j.at("seq").get<std::uint64_t>();
    e.contributor = j.at("contributor").get<std::string>();
    e.timestamp = j.at("timestamp").get<std::string>();
    e.action = j.at("action").get<std::string>();
    e.args = j.at("args");
    if (j.at("result").get<std::string>() == "error") {
      e.error = j.at("error").get<std::string>();
    } else {
      e.created = j.value("created", json::object());
    }
    return e;
  } catch (const json::exception& ex) {
    throw LexError(ErrorCode::parse_error, std::string("malformed edit event: ") + ex.what());
  }
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_ref:
    case ErrorCode::unknown_language:
      return 404;
    case ErrorCode::malformed_code:
    case ErrorCode::parse_error:
    case ErrorCode::bad_request:
    case ErrorCode::invalid_record:
    case ErrorCode::invalid_shares:
    case ErrorCode::empty_input:
      return 400;
    case ErrorCode::too_few_languages:
    case ErrorCode::mixed_tasks:
    case ErrorCode::duplicate_language:
    case ErrorCode::not_subset:
    case ErrorCode::no_common_subsumer:
    case ErrorCode::validation_failed:
      return 422;
    default:
      return 409;
  }
}

ApiResponse error_response(ErrorCode code, const std::string& message, const std::string& location) {
  ordered_json body;
  body["code"] = to_string(code);
  body["message"] = message;
  body["location"] = location;
  return ApiResponse{http_status(code), std::move(body)};
}

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// ---- edit actions ------------------------------------------------------------

namespace {

[[noreturn]] void bad_request(const std::string& message) { throw LexError(ErrorCode::bad_request, message); }

class Args {
 public:
  explicit Args(const json& j) : j_(j) {
    if (!j_.is_object()) bad_request("args must be an object");
  }

  std::string str(const std::string& key) const {
    auto v = opt(key);
    if (!v) bad_request("missing string argument '" + key + "'");
    return *v;
  }

  std::optional<std::string> opt(const std::string& key) const {
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) bad_request("argument '" + key + "' must be a string");
    return it->get<std::string>();
  }

  template <class Enum, class Parse>
  Enum enumeration(const std::string& key, Parse parse, Enum fallback) const {
    auto text = opt(key);
    if (!text) return fallback;
    auto v = parse(*text);
    if (!v) bad_request("argument '" + key + "' has unrecognized value '" + *text + "'");
    return *v;
  }

 private:
  const json& j_;
};

InterlingualId interlingual_ref(const ConceptStore& s, const std::string& ref) {
  auto id = s.find_interlingual(ref);
  if (!id) throw LexError(ErrorCode::unknown_ref, "unknown interlingual concept '" + ref + "'");
  return *id;
}

ConceptId concept_ref(const ConceptStore& s, const std::string& ref) {
  auto id = s.find_concept(ref);
  if (!id) throw LexError(ErrorCode::unknown_ref, "unknown language concept '" + ref + "'");
  return *id;
}

SenseId sense_ref(const ConceptStore& s, const std::string& ref) {
  auto id = s.find_sense(ref);
  if (!id) throw LexError(ErrorCode::unknown_ref, "unknown sense '" + ref + "'");
  return *id;
}

}  // namespace

const std::vector<std::string>& edit_actions() {
  static const std::vector<std::string> actions{
      "add_language",       "add_interlingual_concept", "add_semantic_relation", "lexicalize",
      "mark_gap",           "add_local_concept",        "add_lexical_link",      "set_label",
  };
  return actions;
}

json apply_action(ConceptStore& s, const std::string& action, const json& args) {
  Args a(args);
  if (action == "add_language") {
    std::string code = a.str("code");
    s.add_language(code, a.str("name"), a.enumeration("role", parse_language_role, LanguageRole::local));
    return {{"language", code}};
  }
  if (action == "add_interlingual_concept") {
    InterlingualId id = s.add_interlingual_concept(a.opt("label"));
    return {{"concept", s.interlingual(id).stable_id}};
  }
  if (action == "add_semantic_relation") {
    s.add_semantic_relation(interlingual_ref(s, a.str("source")), interlingual_ref(s, a.str("target")),
                            a.enumeration("kind", parse_semantic_kind, SemanticKind::hypernym));
    return json::object();
  }
  if (action == "lexicalize") {
    InterlingualId x = interlingual_ref(s, a.str("concept"));
    LanguageId lang = s.language_by_code(a.str("language"));
    SenseId sense = s.lexicalize(x, lang, a.str("lemma"), a.enumeration("pos", parse_part_of_speech, PartOfSpeech::noun),
                                 a.opt("gloss"));
    const WordSense& ws = s.sense(sense);
    return {{"sense", ws.stable_id}, {"language_concept", s.language_concept(ws.concept_id).stable_id}};
  }
  if (action == "mark_gap") {
    s.mark_gap(interlingual_ref(s, a.str("concept")), s.language_by_code(a.str("language")));
    return json::object();
  }
  if (action == "add_local_concept") {
    LanguageId lang = s.language_by_code(a.str("language"));
    ConceptId parent = concept_ref(s, a.str("parent"));
    auto lemma = a.opt("lemma");
    ConceptId id = s.add_local_concept(lang, parent, a.opt("gloss"), lemma);
    json created{{"language_concept", s.language_concept(id).stable_id}};
    if (lemma) created["sense"] = s.sense(s.senses_of_concept(id).front()).stable_id;
    return created;
  }
  if (action == "add_lexical_link") {
    auto kind = parse_link_kind(a.str("kind"));
    if (!kind) bad_request("argument 'kind' has an unrecognized value");
    s.add_lexical_link(sense_ref(s, a.str("source")), sense_ref(s, a.str("target")), *kind);
    return json::object();
  }
  if (action == "set_label") {
    s.set_label(interlingual_ref(s, a.str("concept")), a.opt("label"));
    return json::object();
  }
  bad_request("unknown action '" + action + "'");
}

ConceptStore replay(ConceptStore base, const std::vector<EditEvent>& events) {
  for (const EditEvent& e : events) {
    if (e.ok()) apply_action(base, e.action, e.args);
  }
  return base;
}

// ---- request helpers ---------------------------------------------------------

namespace {

std::optional<std::string> param(const ApiRequest& r, const std::string& key) {
  auto it = r.params.find(key);
  if (it == r.params.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string required_param(const ApiRequest& r, const std::string& key) {
  auto v = param(r, key);
  if (!v) bad_request("missing query parameter '" + key + "'");
  return *v;
}

std::uint64_t number_param(const ApiRequest& r, const std::string& key, std::uint64_t fallback) {
  auto v = param(r, key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || end != v->data() + v->size())
    bad_request("query parameter '" + key + "' must be a non-negative integer");
  return out;
}

bool bool_param(const ApiRequest& r, const std::string& key) {
  auto v = param(r, key);
  if (!v) return false;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  bad_request("query parameter '" + key + "' must be true or false");
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

struct Page {
  std::size_t page = 1;  // 1-based
  std::size_t size = kDefaultPageSize;
};

Page page_of(const ApiRequest& r) {
  Page p;
  p.page = number_param(r, "page", 1);
  p.size = number_param(r, "page_size", kDefaultPageSize);
  if (p.page == 0) bad_request("page numbers start at 1");
  if (p.size == 0 || p.size > 1000) bad_request("page_size must be between 1 and 1000");
  return p;
}

// Slices `items` into the requested page; a page past the end is empty.
ordered_json paginate(const ordered_json& items, const Page& page, const std::string& key = "items") {
  ordered_json out;
  std::size_t total = items.size();
  std::size_t begin = std::min(total, (page.page - 1) * page.size);
  std::size_t end = std::min(total, begin + page.size);
  out["page"] = page.page;
  out["page_size"] = page.size;
  out["total"] = total;
  out[key] = ordered_json::array();
  for (std::size_t i = begin; i < end; ++i) out[key].push_back(items[i]);
  return out;
}

ordered_json concept_brief(const ConceptStore& s, InterlingualId id) {
  ordered_json j;
  const InterlingualConcept& c = s.interlingual(id);
  j["id"] = c.stable_id;
  j["label"] = c.label ? ordered_json(*c.label) : ordered_json();
  j["has_children"] = !s.hypernym_children(id).empty();
  return j;
}

ordered_json senses_json(const ConceptStore& s, ConceptId id) {
  ordered_json out = ordered_json::array();
  for (SenseId sid : s.senses_of_concept(id)) {
    const WordSense& ws = s.sense(sid);
    out.push_back({{"id", ws.stable_id}, {"lemma", ws.lemma}});
  }
  return out;
}

ordered_json local_concept_json(const ConceptStore& s, ConceptId id) {
  const LanguageConcept& c = s.language_concept(id);
  ordered_json j;
  j["id"] = c.stable_id;
  j["gloss"] = c.gloss ? ordered_json(*c.gloss) : ordered_json();
  j["senses"] = senses_json(s, id);
  j["local_concepts"] = ordered_json::array();
  for (ConceptId child : s.local_children(id)) j["local_concepts"].push_back(local_concept_json(s, child));
  return j;
}

std::vector<LanguageId> languages_param(const ApiRequest& r, const ConceptStore& s) {
  std::vector<LanguageId> out;
  if (auto codes = param(r, "languages")) {
    for (const std::string& code : split_codes(*codes)) {
      LanguageId id = s.language_by_code(code);
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  } else {
    for (const Language& l : s.languages()) out.push_back(l.id);
  }
  return out;
}

ModelCapability capability_param(const ApiRequest& r) {
  std::string name = param(r, "capability").value_or("ukc");
  auto cap = capability_preset(name);
  if (!cap) bad_request("unknown capability '" + name + "'");
  return *cap;
}

ordered_json coverage_json(const ConceptStore& s, const std::vector<LanguageId>& langs, const ModelCapability& cap,
                           std::optional<BiasReport>* bias_out = nullptr) {
  MappingSet gold = derive_gold(s, langs, DeriveOptions{true});
  CoverageReport report = coverage(apply_capability(gold, cap, s), gold);
  ordered_json j;
  j["capability"] = capability_to_json(cap);
  j["languages"] = ordered_json::array();
  for (LanguageId l : langs) j["languages"].push_back(s.language(l).code);
  j["gold"] = report.gold;
  j["expressible"] = report.expressible;
  j["overall"] = report.overall;
  j["per_language"] = ordered_json::array();
  for (const auto& [lang, lc] : report.per_language) {
    ordered_json row;
    row["language"] = s.language(lang).code;
    row["expressible"] = lc.expressible;
    row["gold"] = lc.gold;
    row["ratio"] = lc.ratio;
    j["per_language"].push_back(std::move(row));
  }
  if (report.per_language.size() >= 2) {
    BiasReport b = coverage_bias(report, s, cap.name);
    j["bias"] = bias_report_to_json(b);
    if (bias_out) *bias_out = std::move(b);
  } else {
    j["bias"] = nullptr;
  }
  return j;
}

}  // namespace

// ---- service -----------------------------------------------------------------

LexiconService::LexiconService(ConceptStore initial, Clock clock)
    : store_(initial), clock_(std::move(clock)), base_(std::move(initial)) {}

std::uint64_t LexiconService::last_seq() const {
  std::lock_guard lock(log_mutex_);
  return log_.empty() ? 0 : log_.back().seq;
}

std::vector<EditEvent> LexiconService::changelog(std::uint64_t since) const {
  std::lock_guard lock(log_mutex_);
  auto it = std::upper_bound(log_.begin(), log_.end(), since,
                             [](std::uint64_t s, const EditEvent& e) { return s < e.seq; });
  return std::vector<EditEvent>(it, log_.end());
}

ApiResponse LexiconService::apply_edit(const json& request) {
  if (!request.is_object()) return error_response(ErrorCode::bad_request, "edit request must be a JSON object", "body");
  auto contributor = request.find("contributor");
  if (contributor == request.end() || !contributor->is_string() || contributor->get<std::string>().empty())
    return error_response(ErrorCode::bad_request, "a nonempty contributor is required", "contributor");
  auto action = request.find("action");
  if (action == request.end() || !action->is_string() ||
      std::find(edit_actions().begin(), edit_actions().end(), action->get<std::string>()) == edit_actions().end())
    return error_response(ErrorCode::bad_request, "unknown or missing action", "action");

  std::lock_guard edit(edit_mutex_);
  EditEvent event;
  event.contributor = contributor->get<std::string>();
  event.action = action->get<std::string>();
  event.args = request.value("args", json::object());
  event.timestamp = clock_();
  ApiResponse response;
  try {
    event.created = store_.write([&](ConceptStore& s) { return apply_action(s, event.action, event.args); });
  } catch (const LexError& e) {
    event.error = std::string(to_string(e.code()));
    response = error_response(e.code(), e.what(), event.action);
  }
  {
    std::lock_guard lock(log_mutex_);
    event.seq = log_.empty() ? 1 : log_.back().seq + 1;
    log_.push_back(event);
  }
  if (log_file_.is_open()) {
    log_file_ << edit_event_to_json(event).dump() << '\n';
    log_file_.flush();
  }
  if (event.ok()) {
    response.body = edit_event_to_json(event);
    if (db_ && ++edits_since_snapshot_ >= kSnapshotInterval) save_snapshot(event.seq);
  } else {
    response.body["event"] = edit_event_to_json(event);
  }
  return response;
}

void LexiconService::open(const std::filesystem::path& db) {
  std::lock_guard edit(edit_mutex_);
  ConceptStore base;
  if (std::filesystem::exists(db)) base = import_document(read_document_file(db.string()));

  std::string log_path = db.string() + ".log";
  std::vector<EditEvent> events;
  if (std::ifstream in(log_path); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) events.push_back(edit_event_from_json(json::parse(line)));
    }
  }

  ConceptStore current = base;
  std::uint64_t snapshot_seq = 0;
  if (std::ifstream in(db.string() + ".snapshot.json"); in) {
    json snap = json::parse(in);
    snapshot_seq = snap.at("seq").get<std::uint64_t>();
    current = import_document(document_from_json(snap.at("document")));
  }
  for (const EditEvent& e : events) {
    if (e.seq > snapshot_seq && e.ok()) apply_action(current, e.action, e.args);
  }

  store_.reset(std::move(current));
  base_ = std::move(base);
  {
    std::lock_guard lock(log_mutex_);
    log_ = std::move(events);
  }
  db_ = db;
  log_file_.close();
  log_file_.open(log_path, std::ios::app);
  if (!log_file_) throw LexError(ErrorCode::bad_request, "cannot open edit log '" + log_path + "'");
}

void LexiconService::write_snapshot() {
  std::lock_guard edit(edit_mutex_);
  if (db_) save_snapshot(last_seq());
}

void LexiconService::save_snapshot(std::uint64_t seq) {
  ordered_json snap;
  snap["seq"] = seq;
  snap["document"] = document_to_json(export_document(*store_.snapshot()));
  std::string path = db_->string() + ".snapshot.json";
  std::ofstream(path + ".tmp", std::ios::trunc) << snap.dump(2) << '\n';
  std::filesystem::rename(path + ".tmp", path);
  edits_since_snapshot_ = 0;
}

ApiResponse LexiconService::handle(const ApiRequest& r) {
  try {
    const std::string& p = r.path;
    if (r.method == "POST") {
      if (p == "/edits") return apply_edit(r.body);
      if (p == "/bias") return post_bias(r);
      return error_response(ErrorCode::bad_request, "no POST route for " + p, p);
    }
    if (r.method != "GET") return error_response(ErrorCode::bad_request, "unsupported method " + r.method, p);
    if (p == "/languages") return get_languages(r);
    if (p == "/concepts") return get_concepts(r);
    if (p.starts_with("/concepts/")) return get_concept(p.substr(10), r);
    if (p == "/search") return get_search(r);
    if (p == "/mappings") return get_mappings(r);
    if (p == "/coverage") return get_coverage(r);
    if (p == "/bias") return get_bias(r);
    if (p == "/changelog") return get_changelog(r);
    return error_response(ErrorCode::unknown_ref, "no route for " + p, p);
  } catch (const LexError& e) {
    return error_response(e.code(), e.what(), r.path);
  }
}

ApiResponse LexiconService::get_languages(const ApiRequest& r) const {
  auto s = store_.snapshot();
  ordered_json items = ordered_json::array();
  for (const Language& l : s->languages()) {
    LexiconStats st = s->lexicon_stats(l.id);
    ordered_json j;
    j["code"] = l.code;
    j["name"] = l.name;
    j["role"] = to_string(l.role);
    if (!l.provenance.empty()) j["provenance"] = ordered_json::parse(l.provenance);
    j["stats"] = {{"concepts", st.concepts},           {"local_concepts", st.local_concepts},
                  {"senses", st.senses},               {"gaps", st.gaps},
                  {"cognate_links", st.cognate_links}, {"lexical_links", st.lexical_links}};
    items.push_back(std::move(j));
  }
  return {200, paginate(items, page_of(r))};
}

ApiResponse LexiconService::get_concepts(const ApiRequest& r) const {
  auto s = store_.snapshot();
  bool roots = bool_param(r, "roots");
  ordered_json items = ordered_json::array();
  for (const InterlingualConcept& c : s->interlingual_concepts()) {
    if (roots && !s->hypernym_parents(c.id).empty()) continue;
    items.push_back(concept_brief(*s, c.id));
  }
  return {200, paginate(items, page_of(r))};
}

ApiResponse LexiconService::get_concept(const std::string& id, const ApiRequest& r) const {
  auto s = store_.snapshot();
  InterlingualId x = interlingual_ref(*s, id);
  ordered_json j = concept_brief(*s, x);
  j["parents"] = ordered_json::array();
  for (InterlingualId p : s->hypernym_parents(x)) j["parents"].push_back(concept_brief(*s, p));
  j["children"] = ordered_json::array();
  for (InterlingualId c : s->hypernym_children(x)) j["children"].push_back(concept_brief(*s, c));
  j["lexicalizations"] = ordered_json::array();
  for (LanguageId lang : languages_param(r, *s)) {
    ordered_json row;
    row["language"] = s->language(lang).code;
    if (auto cid = s->concept_for(lang, x)) {
      const LanguageConcept& c = s->language_concept(*cid);
      row["status"] = "lexicalized";
      row["concept"] = c.stable_id;
      row["pos"] = to_string(c.pos);
      row["gloss"] = c.gloss ? ordered_json(*c.gloss) : ordered_json();
      row["senses"] = senses_json(*s, *cid);
      row["local_concepts"] = ordered_json::array();
      for (ConceptId child : s->local_children(*cid)) row["local_concepts"].push_back(local_concept_json(*s, child));
    } else {
      row["status"] = s->has_gap(lang, x) ? "gap" : "missing";
    }
    j["lexicalizations"].push_back(std::move(row));
  }
  return {200, std::move(j)};
}

ApiResponse LexiconService::get_search(const ApiRequest& r) const {
  auto s = store_.snapshot();
  std::string lemma = required_param(r, "lemma");
  std::vector<LanguageId> langs;
  if (auto code = param(r, "language")) {
    langs.push_back(s->language_by_code(*code));
  } else {
    for (const Language& l : s->languages()) langs.push_back(l.id);
  }
  ordered_json items = ordered_json::array();
  for (LanguageId lang : langs) {
    for (SenseId sid : s->find_lemma(lang, lemma)) {
      const WordSense& ws = s->sense(sid);
      const LanguageConcept& c = s->language_concept(ws.concept_id);
      ordered_json j;
      j["sense"] = ws.stable_id;
      j["lemma"] = ws.lemma;
      j["language"] = s->language(lang).code;
      j["concept"] = c.stable_id;
      j["interlingual"] = s->interlingual(*s->root_of(c.id).interlingual).stable_id;
      j["local"] = c.is_local();
      j["pos"] = to_string(c.pos);
      j["gloss"] = c.gloss ? ordered_json(*c.gloss) : ordered_json();
      items.push_back(std::move(j));
    }
  }
  return {200, paginate(items, page_of(r))};
}

ApiResponse LexiconService::get_mappings(const ApiRequest& r) const {
  auto s = store_.snapshot();
  LanguageId from = s->language_by_code(required_param(r, "from"));
  LanguageId to = s->language_by_code(required_param(r, "to"));
  Page page = page_of(r);
  MappingSet set = derive_mappings(*s, from, to, DeriveOptions{bool_param(r, "include_local")});
  ordered_json doc = mapping_set_to_json(
      mapping_set_to_doc(set, *s, s->language(from).code + "-" + s->language(to).code));
  ordered_json out = paginate(doc["relations"], page, "relations");
  out["name"] = doc["name"];
  out["languages"] = doc["languages"];
  return {200, std::move(out)};
}

ApiResponse LexiconService::get_coverage(const ApiRequest& r) const {
  auto s = store_.snapshot();
  return {200, coverage_json(*s, languages_param(r, *s), capability_param(r))};
}

ApiResponse LexiconService::get_bias(const ApiRequest& r) const {
  auto s = store_.snapshot();
  std::optional<BiasReport> report;
  auto langs = languages_param(r, *s);
  coverage_json(*s, langs, capability_param(r), &report);
  if (!report) throw LexError(ErrorCode::too_few_languages, "bias needs coverage for at least two languages");
  return {200, bias_report_to_json(*report)};
}

ApiResponse LexiconService::post_bias(const ApiRequest& r) const {
  if (!r.body.is_object() || !r.body.contains("records") || !r.body["records"].is_array())
    bad_request("body must be an object with a 'records' array");
  std::vector<PerfRecord> records;
  for (const json& j : r.body["records"]) records.push_back(perf_record_from_json(j));
  ordered_json out;
  out["reports"] = ordered_json::array();
  for (const auto& group : group_by_task(records)) out["reports"].push_back(bias_report_to_json(bias(group)));
  return {200, std::move(out)};
}

ApiResponse LexiconService::get_changelog(const ApiRequest& r) const {
  ordered_json out;
  out["events"] = ordered_json::array();
  for (const EditEvent& e : changelog(number_param(r, "since", 0))) out["events"].push_back(edit_event_to_json(e));
  out["last_seq"] = last_seq();
  return {200, std::move(out)};
}

}  // namespace lexdb
