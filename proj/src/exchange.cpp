#include "lexdb/exchange.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace lexdb {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(LexicalizationType type) {
  switch (type) {
    case LexicalizationType::linked: return "concept";
    case LexicalizationType::local_concept: return "local_concept";
    case LexicalizationType::sense: return "sense";
    case LexicalizationType::gap: return "gap";
  }
  return "?";
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream os;
  os << (d.severity == Severity::error ? "error" : "warning") << ' ' << d.code;
  if (!d.section.empty()) {
    os << " at " << d.section;
    if (d.index) os << '[' << *d.index << ']';
  }
  os << ": " << d.message;
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw LexError(ErrorCode::parse_error, where + ": " + what);
}

// Typed field access on one JSON object; keys never asked for are reported
// as UNKNOWN_KEY warnings by finish().
class ObjectReader {
 public:
  ObjectReader(const json& obj, std::string section, std::optional<std::size_t> index, std::string where,
               std::vector<Diagnostic>& warnings)
      : obj_(obj), section_(std::move(section)), index_(index), where_(std::move(where)), warnings_(warnings) {
    if (!obj_.is_object()) parse_fail(where_, "expected an object");
  }

  const json* find(const std::string& key) {
    known_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string string(const std::string& key) {
    auto v = opt_string(key);
    if (!v) parse_fail(where_ + "." + key, "missing string");
    return *v;
  }

  std::optional<std::string> opt_string(const std::string& key) {
    const json* v = find(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) parse_fail(where_ + "." + key, "expected a string");
    return v->get<std::string>();
  }

  double number(const std::string& key) {
    const json* v = find(key);
    if (!v || !v->is_number()) parse_fail(where_ + "." + key, "expected a number");
    return v->get<double>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_boolean()) parse_fail(where_ + "." + key, "expected a boolean");
    return v->get<bool>();
  }

  const json& array(const std::string& key) {
    static const json empty = json::array();
    const json* v = find(key);
    if (!v) return empty;
    if (!v->is_array()) parse_fail(where_ + "." + key, "expected an array");
    return *v;
  }

  template <class Enum, class Parse>
  Enum enumeration(const std::string& key, Parse parse, std::optional<Enum> fallback = std::nullopt) {
    auto text = opt_string(key);
    if (!text) {
      if (fallback) return *fallback;
      parse_fail(where_ + "." + key, "missing value");
    }
    auto v = parse(*text);
    if (!v) parse_fail(where_ + "." + key, "unrecognized value '" + *text + "'");
    return *v;
  }

  const std::string& where() const { return where_; }

  void finish() {
    for (const auto& [key, value] : obj_.items()) {
      if (!known_.contains(key))
        warnings_.push_back(
            Diagnostic{Severity::warning, "UNKNOWN_KEY", section_, index_, "unknown key '" + key + "' ignored"});
    }
  }

 private:
  const json& obj_;
  std::string section_;
  std::optional<std::size_t> index_;
  std::string where_;
  std::vector<Diagnostic>& warnings_;
  std::set<std::string> known_;
};

template <class F>
void for_each_record(ObjectReader& top, const std::string& section, std::vector<Diagnostic>& warnings, F&& f) {
  const json& arr = top.array(section);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader r(arr[i], section, i, section + "[" + std::to_string(i) + "]", warnings);
    f(r);
    r.finish();
  }
}

DocEndpoint read_endpoint(const json& j, const std::string& where, const std::string& section, std::size_t index,
                          std::vector<Diagnostic>& warnings) {
  ObjectReader r(j, section, index, where, warnings);
  DocEndpoint e;
  e.language = r.string("language");
  e.concept_id = r.opt_string("concept");
  e.interlingual = r.opt_string("interlingual");
  e.gap = r.opt_string("gap");
  int set = e.concept_id.has_value() + e.interlingual.has_value() + e.gap.has_value();
  if (set != 1) parse_fail(where, "endpoint needs exactly one of concept, interlingual, gap");
  r.finish();
  return e;
}

PerfRecord read_perf_record(ObjectReader& r) {
  PerfRecord p;
  p.language = r.string("language");
  p.task = r.string("task");
  p.system = r.string("system");
  p.value = r.number("value");
  p.direction = r.enumeration<MetricDirection>("direction", parse_metric_direction);
  p.input_set = r.opt_string("input_set");
  p.bounded = r.boolean("bounded", false);
  return p;
}

ordered_json to_ordered(const json& j) { return ordered_json::parse(j.dump()); }

ordered_json endpoint_json(const DocEndpoint& e) {
  ordered_json j;
  j["language"] = e.language;
  if (e.concept_id) j["concept"] = *e.concept_id;
  if (e.interlingual) j["interlingual"] = *e.interlingual;
  if (e.gap) j["gap"] = *e.gap;
  return j;
}

}  // namespace

ExchangeDocument document_from_json(const json& j) {
  ExchangeDocument doc;
  auto& warnings = doc.parse_warnings;
  ObjectReader top(j, "", std::nullopt, "document", warnings);

  doc.format_version = top.string("format_version");
  if (const json* p = top.find("provenance")) doc.provenance = *p;
  for (const json& e : top.array("external")) {
    if (!e.is_string()) parse_fail("external", "expected strings");
    doc.external.push_back(e.get<std::string>());
  }

  for_each_record(top, "languages", warnings, [&](ObjectReader& r) {
    DocLanguage l;
    l.code = r.string("code");
    l.name = r.opt_string("name").value_or("");
    l.role = r.enumeration<LanguageRole>("role", parse_language_role, LanguageRole::local);
    if (const json* p = r.find("provenance")) l.provenance = *p;
    doc.languages.push_back(std::move(l));
  });

  for_each_record(top, "concepts", warnings, [&](ObjectReader& r) {
    doc.concepts.push_back(DocConcept{r.string("id"), r.opt_string("label")});
  });

  for_each_record(top, "semantic_relations", warnings, [&](ObjectReader& r) {
    DocRelation rel;
    rel.source = r.string("source");
    rel.target = r.string("target");
    rel.kind = r.enumeration<SemanticKind>("kind", parse_semantic_kind);
    doc.semantic_relations.push_back(std::move(rel));
  });

  for_each_record(top, "lexicalizations", warnings, [&](ObjectReader& r) {
    DocLexicalization lx;
    auto type = r.string("type");
    if (type == "concept") {
      lx.type = LexicalizationType::linked;
    } else if (type == "local_concept") {
      lx.type = LexicalizationType::local_concept;
    } else if (type == "sense") {
      lx.type = LexicalizationType::sense;
    } else if (type == "gap") {
      lx.type = LexicalizationType::gap;
    } else {
      parse_fail(r.where() + ".type", "unrecognized value '" + type + "'");
    }
    lx.language = r.string("language");
    switch (lx.type) {
      case LexicalizationType::linked:
        lx.id = r.string("id");
        lx.interlingual = r.string("interlingual");
        lx.pos = r.enumeration<PartOfSpeech>("pos", parse_part_of_speech, PartOfSpeech::noun);
        lx.gloss = r.opt_string("gloss");
        break;
      case LexicalizationType::local_concept:
        lx.id = r.string("id");
        lx.parent = r.opt_string("parent");
        lx.pos = r.enumeration<PartOfSpeech>("pos", parse_part_of_speech, PartOfSpeech::noun);
        lx.gloss = r.opt_string("gloss");
        break;
      case LexicalizationType::sense:
        lx.id = r.string("id");
        lx.concept_id = r.string("concept");
        lx.lemma = r.opt_string("lemma").value_or("");
        break;
      case LexicalizationType::gap:
        lx.interlingual = r.string("interlingual");
        break;
    }
    doc.lexicalizations.push_back(std::move(lx));
  });

  for_each_record(top, "lexical_links", warnings, [&](ObjectReader& r) {
    DocLink link;
    link.source = r.string("source");
    link.target = r.string("target");
    link.kind = r.enumeration<LinkKind>("kind", parse_link_kind);
    doc.lexical_links.push_back(std::move(link));
  });

  for_each_record(top, "mapping_sets", warnings, [&](ObjectReader& r) {
    DocMappingSet set;
    set.name = r.opt_string("name").value_or("");
    for (const json& l : r.array("languages")) {
      if (!l.is_string()) parse_fail(r.where() + ".languages", "expected strings");
      set.languages.push_back(l.get<std::string>());
    }
    const json& rels = r.array("relations");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      std::string where = r.where() + ".relations[" + std::to_string(i) + "]";
      std::size_t set_index = doc.mapping_sets.size();
      ObjectReader rr(rels[i], "mapping_sets", set_index, where, warnings);
      DocMappingRelation rel;
      const json* src = rr.find("source");
      const json* tgt = rr.find("target");
      if (!src || !tgt) parse_fail(where, "missing source or target");
      rel.source = read_endpoint(*src, where + ".source", "mapping_sets", set_index, warnings);
      rel.target = read_endpoint(*tgt, where + ".target", "mapping_sets", set_index, warnings);
      rel.kind = rr.enumeration<MappingKind>("kind", parse_mapping_kind);
      rr.finish();
      set.relations.push_back(std::move(rel));
    }
    doc.mapping_sets.push_back(std::move(set));
  });

  for_each_record(top, "perf_tables", warnings, [&](ObjectReader& r) {
    DocPerfTable table;
    table.name = r.opt_string("name").value_or("");
    const json& records = r.array("records");
    for (std::size_t i = 0; i < records.size(); ++i) {
      ObjectReader rr(records[i], "perf_tables", doc.perf_tables.size(),
                      r.where() + ".records[" + std::to_string(i) + "]", warnings);
      table.records.push_back(read_perf_record(rr));
      rr.finish();
    }
    doc.perf_tables.push_back(std::move(table));
  });

  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> sections = {"format_version", "provenance",      "external",
                                                   "languages",      "concepts",        "semantic_relations",
                                                   "lexicalizations", "lexical_links",  "mapping_sets",
                                                   "perf_tables"};
    if (!sections.contains(key))
      warnings.push_back(Diagnostic{Severity::warning, "UNKNOWN_SECTION", key, std::nullopt,
                                    "unknown section '" + key + "' ignored"});
  }
  return doc;
}

ExchangeDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw LexError(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

ordered_json document_to_json(const ExchangeDocument& doc) {
  ordered_json j;
  j["format_version"] = doc.format_version;
  if (doc.provenance) j["provenance"] = to_ordered(*doc.provenance);
  if (!doc.external.empty()) j["external"] = doc.external;

  j["languages"] = ordered_json::array();
  for (const DocLanguage& l : doc.languages) {
    ordered_json r;
    r["code"] = l.code;
    r["name"] = l.name;
    r["role"] = to_string(l.role);
    if (l.provenance) r["provenance"] = to_ordered(*l.provenance);
    j["languages"].push_back(std::move(r));
  }

  j["concepts"] = ordered_json::array();
  for (const DocConcept& c : doc.concepts) {
    ordered_json r;
    r["id"] = c.id;
    if (c.label) r["label"] = *c.label;
    j["concepts"].push_back(std::move(r));
  }

  j["semantic_relations"] = ordered_json::array();
  for (const DocRelation& rel : doc.semantic_relations) {
    ordered_json r;
    r["source"] = rel.source;
    r["target"] = rel.target;
    r["kind"] = to_string(rel.kind);
    j["semantic_relations"].push_back(std::move(r));
  }

  j["lexicalizations"] = ordered_json::array();
  for (const DocLexicalization& lx : doc.lexicalizations) {
    ordered_json r;
    r["type"] = to_string(lx.type);
    if (lx.type != LexicalizationType::gap) r["id"] = lx.id;
    r["language"] = lx.language;
    switch (lx.type) {
      case LexicalizationType::linked:
      case LexicalizationType::local_concept:
        if (lx.interlingual) r["interlingual"] = *lx.interlingual;
        if (lx.parent) r["parent"] = *lx.parent;
        r["pos"] = to_string(lx.pos);
        if (lx.gloss) r["gloss"] = *lx.gloss;
        break;
      case LexicalizationType::sense:
        r["concept"] = lx.concept_id.value_or("");
        r["lemma"] = lx.lemma.value_or("");
        break;
      case LexicalizationType::gap:
        r["interlingual"] = lx.interlingual.value_or("");
        break;
    }
    j["lexicalizations"].push_back(std::move(r));
  }

  j["lexical_links"] = ordered_json::array();
  for (const DocLink& link : doc.lexical_links) {
    ordered_json r;
    r["source"] = link.source;
    r["target"] = link.target;
    r["kind"] = to_string(link.kind);
    j["lexical_links"].push_back(std::move(r));
  }

  j["mapping_sets"] = ordered_json::array();
  for (const DocMappingSet& set : doc.mapping_sets) j["mapping_sets"].push_back(mapping_set_to_json(set));

  j["perf_tables"] = ordered_json::array();
  for (const DocPerfTable& table : doc.perf_tables) {
    ordered_json t;
    t["name"] = table.name;
    t["records"] = ordered_json::array();
    for (const PerfRecord& p : table.records) t["records"].push_back(perf_record_to_json(p));
    j["perf_tables"].push_back(std::move(t));
  }
  return j;
}

std::string serialize_document(const ExchangeDocument& doc) { return document_to_json(doc).dump(2) + "\n"; }

ExchangeDocument read_document_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexError(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

void write_document_file(const ExchangeDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LexError(ErrorCode::bad_request, "cannot write '" + path + "'");
  out << serialize_document(doc);
  if (!out) throw LexError(ErrorCode::bad_request, "write to '" + path + "' failed");
}

ModelCapability capability_from_json(const json& j) {
  std::vector<Diagnostic> ignored;
  ObjectReader r(j, "capability", std::nullopt, "capability", ignored);
  ModelCapability cap;
  cap.name = r.opt_string("name").value_or("custom");
  auto pivot = r.opt_string("pivot").value_or("concept");
  if (pivot != "concept") cap.pivot_language = pivot;
  cap.supports_gaps = r.boolean("supports_gaps", true);
  cap.supports_broader_narrower = r.boolean("supports_broader_narrower", true);
  cap.supports_local_concepts = r.boolean("supports_local_concepts", true);
  return cap;
}

ordered_json capability_to_json(const ModelCapability& cap) {
  ordered_json j;
  j["name"] = cap.name;
  j["pivot"] = cap.pivot_language.value_or("concept");
  j["supports_gaps"] = cap.supports_gaps;
  j["supports_broader_narrower"] = cap.supports_broader_narrower;
  j["supports_local_concepts"] = cap.supports_local_concepts;
  return j;
}

PerfRecord perf_record_from_json(const json& j) {
  std::vector<Diagnostic> ignored;
  ObjectReader r(j, "perf_record", std::nullopt, "record", ignored);
  return read_perf_record(r);
}

ordered_json perf_record_to_json(const PerfRecord& p) {
  ordered_json r;
  r["language"] = p.language;
  r["task"] = p.task;
  r["system"] = p.system;
  r["value"] = p.value;
  r["direction"] = to_string(p.direction);
  if (p.input_set) r["input_set"] = *p.input_set;
  if (p.bounded) r["bounded"] = true;
  return r;
}

ordered_json mapping_set_to_json(const DocMappingSet& set) {
  ordered_json s;
  s["name"] = set.name;
  s["languages"] = set.languages;
  s["relations"] = ordered_json::array();
  for (const DocMappingRelation& rel : set.relations) {
    ordered_json r;
    r["source"] = endpoint_json(rel.source);
    r["target"] = endpoint_json(rel.target);
    r["kind"] = to_string(rel.kind);
    s["relations"].push_back(std::move(r));
  }
  return s;
}

ordered_json bias_report_to_json(const BiasReport& report) {
  ordered_json j;
  j["task"] = report.task;
  j["system"] = report.system;
  j["direction"] = to_string(report.direction);
  j["n"] = report.n;
  j["mean"] = report.mean;
  j["bias"] = report.bias;
  j["per_language"] = ordered_json::array();
  for (const PerfRecord& p : report.per_language) {
    ordered_json r;
    r["language"] = p.language;
    r["value"] = p.value;
    j["per_language"].push_back(std::move(r));
  }
  return j;
}

}  // namespace lexdb
