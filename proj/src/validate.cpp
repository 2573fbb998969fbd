#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "lexdb/exchange.hpp"

namespace lexdb {

namespace {

struct ConceptRecord {
  std::size_t index;
  const DocLexicalization* record;
};

class Validator {
 public:
  explicit Validator(const ExchangeDocument& doc) : doc_(doc) {}

  std::vector<Diagnostic> run() {
    if (doc_.format_version != kFormatVersion)
      error("UNSUPPORTED_VERSION", "", std::nullopt, "format_version '" + doc_.format_version + "' is not 1.0");
    external_.insert(doc_.external.begin(), doc_.external.end());
    check_languages();
    check_concepts();
    check_relations();
    check_lexicalizations();
    check_links();
    check_mapping_sets();
    check_perf_tables();
    out_.insert(out_.end(), doc_.parse_warnings.begin(), doc_.parse_warnings.end());
    return std::move(out_);
  }

 private:
  void error(std::string code, std::string section, std::optional<std::size_t> index, std::string message) {
    out_.push_back(Diagnostic{Severity::error, std::move(code), std::move(section), index, std::move(message)});
  }
  void warning(std::string code, std::string section, std::optional<std::size_t> index, std::string message) {
    out_.push_back(Diagnostic{Severity::warning, std::move(code), std::move(section), index, std::move(message)});
  }

  bool language_defined(const std::string& code) const { return languages_.contains(code) || external_.contains(code); }
  bool interlingual_defined(const std::string& id) const { return concepts_.contains(id) || external_.contains(id); }
  bool concept_defined(const std::string& id) const { return lang_concepts_.contains(id) || external_.contains(id); }
  bool sense_defined(const std::string& id) const { return senses_.contains(id) || external_.contains(id); }

  void require_language(const std::string& code, const std::string& section, std::size_t i) {
    if (!language_defined(code)) error("UNDEFINED_REF", section, i, "language '" + code + "' is not defined");
  }

  void check_languages() {
    for (std::size_t i = 0; i < doc_.languages.size(); ++i) {
      const DocLanguage& l = doc_.languages[i];
      if (!is_well_formed_code(l.code)) error("MALFORMED_CODE", "languages", i, "malformed code '" + l.code + "'");
      if (!languages_.insert(l.code).second) error("DUPLICATE_ID", "languages", i, "language '" + l.code + "' repeated");
      if (l.provenance && !l.provenance->is_object())
        error("MALFORMED_PROVENANCE", "languages", i, "provenance must be an object");
    }
    if (doc_.provenance && !doc_.provenance->is_object())
      error("MALFORMED_PROVENANCE", "provenance", std::nullopt, "provenance must be an object");
  }

  void check_concepts() {
    for (std::size_t i = 0; i < doc_.concepts.size(); ++i) {
      const DocConcept& c = doc_.concepts[i];
      if (c.id.empty()) error("EMPTY_ID", "concepts", i, "concept without an id");
      if (!concepts_.emplace(c.id, i).second) error("DUPLICATE_ID", "concepts", i, "concept '" + c.id + "' repeated");
    }
  }

  bool reaches_upward(const std::string& from, const std::string& target) const {
    std::unordered_set<std::string> seen{from};
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
      std::string cur = stack.back();
      stack.pop_back();
      if (cur == target) return true;
      auto it = parents_.find(cur);
      if (it == parents_.end()) continue;
      for (const std::string& p : it->second) {
        if (seen.insert(p).second) stack.push_back(p);
      }
    }
    return false;
  }

  void check_relations() {
    std::set<std::tuple<std::string, std::string, SemanticKind>> seen;
    for (std::size_t i = 0; i < doc_.semantic_relations.size(); ++i) {
      const DocRelation& r = doc_.semantic_relations[i];
      bool ok = true;
      for (const std::string* ref : {&r.source, &r.target}) {
        if (!interlingual_defined(*ref)) {
          error("UNDEFINED_REF", "semantic_relations", i, "concept '" + *ref + "' is not defined");
          ok = false;
        }
      }
      if (!ok) continue;
      if (r.source == r.target) {
        error("SELF_LOOP", "semantic_relations", i, "relation from '" + r.source + "' to itself");
        continue;
      }
      if (!seen.emplace(r.source, r.target, r.kind).second) {
        error("DUPLICATE_RECORD", "semantic_relations", i, "relation repeated");
        continue;
      }
      if (r.kind != SemanticKind::hypernym) continue;
      if (reaches_upward(r.target, r.source)) {
        error("HYPERNYM_CYCLE", "semantic_relations", i,
              "hypernym " + r.source + " -> " + r.target + " closes a cycle");
        continue;
      }
      parents_[r.source].push_back(r.target);
    }
  }

  void check_lexicalizations() {
    const std::string section = "lexicalizations";
    const auto& lx = doc_.lexicalizations;
    // Pass 1: ids, so forward references resolve.
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const DocLexicalization& r = lx[i];
      if (r.type == LexicalizationType::gap) continue;
      if (r.id.empty()) {
        error("EMPTY_ID", section, i, std::string(to_string(r.type)) + " without an id");
        continue;
      }
      auto& table = r.type == LexicalizationType::sense ? senses_ : lang_concepts_;
      if (!table.emplace(r.id, ConceptRecord{i, &r}).second)
        error("DUPLICATE_ID", section, i, "id '" + r.id + "' repeated");
    }

    std::map<std::pair<std::string, std::string>, std::size_t> pair_concepts;
    std::set<std::tuple<std::string, std::string, std::string>> sense_keys;
    std::set<std::pair<std::string, std::string>> gaps;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      const DocLexicalization& r = lx[i];
      require_language(r.language, section, i);
      switch (r.type) {
        case LexicalizationType::linked:
          if (!interlingual_defined(r.interlingual.value_or(""))) {
            error("UNDEFINED_REF", section, i, "interlingual concept '" + r.interlingual.value_or("") + "' is not defined");
          } else if (!pair_concepts.emplace(std::pair{r.language, r.interlingual.value_or("")}, i).second) {
            error("DUPLICATE_CONCEPT_PAIR", section, i,
                  "'" + r.language + "' already has a concept for " + r.interlingual.value_or(""));
          }
          break;
        case LexicalizationType::local_concept:
          check_rooted(r, i);
          break;
        case LexicalizationType::sense: {
          if (r.lemma.value_or("").empty()) error("EMPTY_LEMMA", section, i, "sense without a lemma");
          auto it = lang_concepts_.find(r.concept_id.value_or(""));
          if (it == lang_concepts_.end()) {
            if (!external_.contains(r.concept_id.value_or("")))
              error("UNDEFINED_REF", section, i, "concept '" + r.concept_id.value_or("") + "' is not defined");
          } else if (it->second.record->language != r.language) {
            error("SENSE_LANGUAGE_MISMATCH", section, i, "sense language differs from its concept's");
          }
          if (!sense_keys.emplace(r.language, r.lemma.value_or(""), r.concept_id.value_or("")).second)
            error("DUPLICATE_SENSE", section, i, "sense '" + r.lemma.value_or("") + "' repeated on its concept");
          break;
        }
        case LexicalizationType::gap:
          if (!interlingual_defined(r.interlingual.value_or("")))
            error("UNDEFINED_REF", section, i, "interlingual concept '" + r.interlingual.value_or("") + "' is not defined");
          if (!gaps.emplace(r.language, r.interlingual.value_or("")).second)
            error("DUPLICATE_RECORD", section, i, "gap repeated");
          break;
      }
    }

    for (std::size_t i = 0; i < lx.size(); ++i) {
      const DocLexicalization& r = lx[i];
      if (r.type != LexicalizationType::gap) continue;
      if (pair_concepts.contains({r.language, r.interlingual.value_or("")}))
        error("GAP_SENSE_CONFLICT", section, i,
              "'" + r.language + "' both lexicalizes and has a gap on " + r.interlingual.value_or(""));
      flag_local_overlap(r, i);
    }
  }

  // Walks the local parent chain; it must end at a concept linked to the
  // interlingua (or leave the document through an external id).
  void check_rooted(const DocLexicalization& r, std::size_t i) {
    const std::string section = "lexicalizations";
    if (!r.parent) {
      error("UNROOTED_LOCAL", section, i, "local concept '" + r.id + "' has no parent");
      return;
    }
    std::set<std::string> seen{r.id};
    const DocLexicalization* cur = &r;
    while (true) {
      const std::string& parent = *cur->parent;
      auto it = lang_concepts_.find(parent);
      if (it == lang_concepts_.end()) {
        if (external_.contains(parent)) return;
        error("UNROOTED_LOCAL", section, i, "parent '" + parent + "' of '" + cur->id + "' is not defined");
        return;
      }
      const DocLexicalization* p = it->second.record;
      if (cur == &r && p->language != r.language) {
        error("CROSS_LANGUAGE_PARENT", section, i, "parent '" + parent + "' belongs to another language");
        return;
      }
      if (p->type == LexicalizationType::linked) return;
      if (!p->parent) {
        error("UNROOTED_LOCAL", section, i, "chain from '" + r.id + "' ends at unparented '" + p->id + "'");
        return;
      }
      if (!seen.insert(p->id).second) {
        error("UNROOTED_LOCAL", section, i, "local parent chain from '" + r.id + "' loops");
        return;
      }
      cur = p;
    }
  }

  // A gap may coexist with local concepts, but one whose root is broader
  // than the gap's concept probably covers part of the missing meaning.
  void flag_local_overlap(const DocLexicalization& gap, std::size_t i) {
    std::set<std::string> ancestors;
    std::deque<std::string> queue{gap.interlingual.value_or("")};
    while (!queue.empty()) {
      auto it = parents_.find(queue.front());
      queue.pop_front();
      if (it == parents_.end()) continue;
      for (const std::string& p : it->second) {
        if (ancestors.insert(p).second) queue.push_back(p);
      }
    }
    if (ancestors.empty()) return;
    for (const DocLexicalization& local : doc_.lexicalizations) {
      const DocLexicalization* r = &local;
      if (r->type != LexicalizationType::local_concept || r->language != gap.language) continue;
      std::set<std::string> seen;
      while (r && r->type == LexicalizationType::local_concept && r->parent && seen.insert(r->id).second) {
        auto it = lang_concepts_.find(*r->parent);
        r = it == lang_concepts_.end() ? nullptr : it->second.record;
      }
      if (r && r->type == LexicalizationType::linked && ancestors.contains(r->interlingual.value_or(""))) {
        warning("GAP_LOCAL_OVERLAP", "lexicalizations", i,
                "local concept '" + local.id + "' sits under a broader meaning of gap " + gap.interlingual.value_or(""));
        return;
      }
    }
  }

  std::optional<std::string> sense_language(const std::string& id) const {
    auto it = senses_.find(id);
    if (it == senses_.end()) return std::nullopt;
    return it->second.record->language;
  }

  void check_links() {
    std::set<std::tuple<std::string, std::string, LinkKind>> seen;
    for (std::size_t i = 0; i < doc_.lexical_links.size(); ++i) {
      const DocLink& l = doc_.lexical_links[i];
      bool ok = true;
      for (const std::string* ref : {&l.source, &l.target}) {
        if (!sense_defined(*ref)) {
          error("UNDEFINED_REF", "lexical_links", i, "sense '" + *ref + "' is not defined");
          ok = false;
        }
      }
      if (!ok) continue;
      if (l.source == l.target) {
        error("SELF_LINK", "lexical_links", i, "link from '" + l.source + "' to itself");
        continue;
      }
      auto ls = sense_language(l.source);
      auto lt = sense_language(l.target);
      if (ls && lt) {
        if (l.kind == LinkKind::cognate && *ls == *lt)
          error("SAME_LANGUAGE_COGNATE", "lexical_links", i, "cognates must connect different languages");
        if (l.kind != LinkKind::cognate && *ls != *lt)
          error("CROSS_LANGUAGE_LINK", "lexical_links", i,
                std::string(to_string(l.kind)) + " links stay within one language");
      }
      auto key = std::tuple{l.source, l.target, l.kind};
      if (is_symmetric(l.kind) && l.target < l.source) key = std::tuple{l.target, l.source, l.kind};
      if (!seen.insert(key).second) error("DUPLICATE_RECORD", "lexical_links", i, "link repeated");
    }
  }

  bool endpoint_defined(const DocEndpoint& e, std::string& missing) const {
    if (!language_defined(e.language)) {
      missing = e.language;
      return false;
    }
    if (e.concept_id && !concept_defined(*e.concept_id)) missing = *e.concept_id;
    if (e.interlingual && !interlingual_defined(*e.interlingual)) missing = *e.interlingual;
    if (e.gap && !interlingual_defined(*e.gap)) missing = *e.gap;
    return missing.empty();
  }

  void check_mapping_sets() {
    for (std::size_t s = 0; s < doc_.mapping_sets.size(); ++s) {
      for (const DocMappingRelation& r : doc_.mapping_sets[s].relations) {
        for (const DocEndpoint* e : {&r.source, &r.target}) {
          std::string missing;
          if (!endpoint_defined(*e, missing))
            error("UNDEFINED_REF", "mapping_sets", s, "'" + missing + "' is not defined");
        }
        if (r.source.language == r.target.language)
          error("INVALID_MAPPING", "mapping_sets", s, "relation within one language");
        if (r.source.gap) error("INVALID_MAPPING", "mapping_sets", s, "a gap cannot be a relation source");
        if ((r.kind == MappingKind::untranslatable) != r.target.gap.has_value())
          error("INVALID_MAPPING", "mapping_sets", s, "untranslatable relations, and only they, target a gap");
      }
    }
  }

  void check_perf_tables() {
    for (std::size_t t = 0; t < doc_.perf_tables.size(); ++t) {
      for (const PerfRecord& p : doc_.perf_tables[t].records) {
        if (p.language.empty()) error("INVALID_PERF_RECORD", "perf_tables", t, "record without a language");
        if (!std::isfinite(p.value) || p.value < 0.0)
          error("INVALID_PERF_RECORD", "perf_tables", t, "value for '" + p.language + "' must be finite and >= 0");
        else if (p.bounded && p.value > 1.0)
          error("INVALID_PERF_RECORD", "perf_tables", t, "bounded value for '" + p.language + "' exceeds 1");
      }
    }
  }

  const ExchangeDocument& doc_;
  std::vector<Diagnostic> out_;
  std::unordered_set<std::string> external_;
  std::unordered_set<std::string> languages_;
  std::unordered_map<std::string, std::size_t> concepts_;
  std::unordered_map<std::string, std::vector<std::string>> parents_;
  std::unordered_map<std::string, ConceptRecord> lang_concepts_;
  std::unordered_map<std::string, ConceptRecord> senses_;
};

}  // namespace

std::vector<Diagnostic> validate_document(const ExchangeDocument& doc) { return Validator(doc).run(); }

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::error) return true;
  }
  return false;
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::size_t errors = 0;
  const Diagnostic* first = nullptr;
  for (const Diagnostic& d : diagnostics) {
    if (d.severity != Severity::error) continue;
    if (!first) first = &d;
    ++errors;
  }
  std::string msg = "document has " + std::to_string(errors) + " error(s)";
  if (first) msg += "; first: " + format_diagnostic(*first);
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : LexError(ErrorCode::validation_failed, summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace lexdb
