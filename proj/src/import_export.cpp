#include <algorithm>
#include <set>
#include <unordered_set>

#include "lexdb/exchange.hpp"

namespace lexdb {

using nlohmann::json;

// ---- export ------------------------------------------------------------------

ExchangeDocument export_document(const ConceptStore& store, const ExportScope& scope, const ExportSections& sections) {
  std::set<LanguageId> langs;
  if (scope.languages) {
    for (const std::string& code : *scope.languages) langs.insert(store.language_by_code(code));
  } else {
    for (const Language& l : store.languages()) langs.insert(l.id);
  }

  ExchangeDocument doc;
  if (!store.provenance().empty()) doc.provenance = json::parse(store.provenance());
  for (LanguageId id : langs) {
    const Language& l = store.language(id);
    DocLanguage dl{l.code, l.name, l.role, std::nullopt};
    if (!l.provenance.empty()) dl.provenance = json::parse(l.provenance);
    doc.languages.push_back(std::move(dl));
  }

  std::vector<bool> touched(store.interlingual_concepts().size(), !scope.languages.has_value());
  for (const LanguageConcept& c : store.language_concepts()) {
    if (langs.contains(c.language) && c.interlingual) touched[c.interlingual->index()] = true;
  }
  for (const LexicalGap& g : store.gaps()) {
    if (langs.contains(g.language)) touched[g.interlingual.index()] = true;
  }

  if (sections.concepts) {
    for (const InterlingualConcept& c : store.interlingual_concepts()) {
      if (touched[c.id.index()]) doc.concepts.push_back(DocConcept{c.stable_id, c.label});
    }
  }
  if (sections.semantic_relations) {
    for (const SemanticRelation& r : store.semantic_relations()) {
      if (touched[r.source.index()] && touched[r.target.index()])
        doc.semantic_relations.push_back(DocRelation{store.interlingual(r.source).stable_id,
                                                     store.interlingual(r.target).stable_id, r.kind});
    }
  }
  if (sections.lexicalizations) {
    for (const LanguageConcept& c : store.language_concepts()) {
      if (!langs.contains(c.language)) continue;
      DocLexicalization lx;
      lx.type = c.is_local() ? LexicalizationType::local_concept : LexicalizationType::linked;
      lx.id = c.stable_id;
      lx.language = store.language(c.language).code;
      if (c.interlingual) lx.interlingual = store.interlingual(*c.interlingual).stable_id;
      if (c.parent) lx.parent = store.language_concept(*c.parent).stable_id;
      lx.pos = c.pos;
      lx.gloss = c.gloss;
      doc.lexicalizations.push_back(std::move(lx));
    }
    for (const WordSense& s : store.senses()) {
      if (!langs.contains(s.language)) continue;
      DocLexicalization lx;
      lx.type = LexicalizationType::sense;
      lx.id = s.stable_id;
      lx.language = store.language(s.language).code;
      lx.concept_id = store.language_concept(s.concept_id).stable_id;
      lx.lemma = s.lemma;
      doc.lexicalizations.push_back(std::move(lx));
    }
    for (const LexicalGap& g : store.gaps()) {
      if (!langs.contains(g.language)) continue;
      DocLexicalization lx;
      lx.type = LexicalizationType::gap;
      lx.language = store.language(g.language).code;
      lx.interlingual = store.interlingual(g.interlingual).stable_id;
      doc.lexicalizations.push_back(std::move(lx));
    }
  }
  if (sections.lexical_links) {
    for (const LexicalLink& l : store.lexical_links()) {
      const WordSense& a = store.sense(l.source);
      const WordSense& b = store.sense(l.target);
      if (langs.contains(a.language) && langs.contains(b.language))
        doc.lexical_links.push_back(DocLink{a.stable_id, b.stable_id, l.kind});
    }
  }
  return doc;
}

// ---- import ------------------------------------------------------------------

namespace {

[[noreturn]] void conflict(const std::string& what) { throw LexError(ErrorCode::merge_conflict, what); }

[[noreturn]] void unresolved(const std::string& section, std::size_t index, const std::string& ref) {
  throw ValidationError({Diagnostic{Severity::error, "UNRESOLVED_EXTERNAL", section, index,
                                    "'" + ref + "' is neither in the document nor in the target store"}});
}

std::string provenance_text(const std::optional<json>& p) { return p ? p->dump() : std::string(); }

class Merger {
 public:
  Merger(const ExchangeDocument& doc, ConceptStore& store) : doc_(doc), store_(store) {}

  ImportSummary run() {
    merge_languages();
    merge_concepts();
    merge_relations();
    merge_lexicalizations();
    merge_links();
    if (store_.provenance().empty() && doc_.provenance) store_.set_provenance(doc_.provenance->dump());
    return summary_;
  }

 private:
  LanguageId language(const std::string& code, const std::string& section, std::size_t i) {
    auto id = store_.find_language(code);
    if (!id) unresolved(section, i, code);
    return *id;
  }

  InterlingualId interlingual(const std::string& ref, const std::string& section, std::size_t i) {
    auto id = store_.find_interlingual(ref);
    if (!id) unresolved(section, i, ref);
    return *id;
  }

  void merge_languages() {
    for (std::size_t i = 0; i < doc_.languages.size(); ++i) {
      const DocLanguage& l = doc_.languages[i];
      std::string provenance = provenance_text(l.provenance);
      if (auto id = store_.find_language(l.code)) {
        const Language& have = store_.language(*id);
        if (have.name != l.name || have.role != l.role)
          conflict("language '" + l.code + "' differs from the stored one");
        if (!provenance.empty()) {
          if (have.provenance.empty()) {
            store_.set_language_provenance(*id, provenance);
          } else if (have.provenance != provenance) {
            conflict("language '" + l.code + "' carries different provenance");
          }
        }
        ++summary_.unchanged;
        continue;
      }
      LanguageId id = store_.add_language(l.code, l.name, l.role);
      if (!provenance.empty()) store_.set_language_provenance(id, provenance);
      ++summary_.languages;
    }
  }

  void merge_concepts() {
    for (const DocConcept& c : doc_.concepts) {
      if (auto id = store_.find_interlingual(c.id)) {
        if (store_.interlingual(*id).label != c.label) conflict("concept '" + c.id + "' has a different label");
        ++summary_.unchanged;
        continue;
      }
      store_.create_interlingual(c.label, c.id);
      ++summary_.concepts;
    }
  }

  void merge_relations() {
    for (std::size_t i = 0; i < doc_.semantic_relations.size(); ++i) {
      const DocRelation& r = doc_.semantic_relations[i];
      SemanticRelation rel{interlingual(r.source, "semantic_relations", i),
                           interlingual(r.target, "semantic_relations", i), r.kind};
      if (store_.semantic_relations().contains(rel)) {
        ++summary_.unchanged;
        continue;
      }
      try {
        store_.add_semantic_relation(rel.source, rel.target, rel.kind);
      } catch (const LexError& e) {
        conflict("relation " + r.source + " -> " + r.target + ": " + e.what());
      }
      ++summary_.semantic_relations;
    }
  }

  // Returns false when the record depends on a concept defined later on.
  bool merge_lexicalization(const DocLexicalization& lx, std::size_t i) {
    const std::string section = "lexicalizations";
    LanguageId lang = language(lx.language, section, i);
    switch (lx.type) {
      case LexicalizationType::linked:
      case LexicalizationType::local_concept: {
        std::optional<InterlingualId> inter;
        std::optional<ConceptId> parent;
        if (lx.type == LexicalizationType::linked) {
          inter = interlingual(lx.interlingual.value_or(""), section, i);
        } else {
          parent = store_.find_concept(lx.parent.value_or(""));
          if (!parent) {
            if (later_concepts_.contains(lx.parent.value_or(""))) return false;
            unresolved(section, i, lx.parent.value_or(""));
          }
        }
        if (auto have_id = store_.find_concept(lx.id)) {
          const LanguageConcept& have = store_.language_concept(*have_id);
          if (have.language != lang || have.interlingual != inter || have.parent != parent || have.pos != lx.pos ||
              have.gloss != lx.gloss)
            conflict("concept '" + lx.id + "' differs from the stored one");
          ++summary_.unchanged;
          return true;
        }
        if (inter) {
          if (auto other = store_.concept_for(lang, *inter))
            conflict("'" + lx.language + "' already realizes " + *lx.interlingual + " as '" +
                     store_.language_concept(*other).stable_id + "'");
          if (store_.has_gap(lang, *inter))
            conflict("'" + lx.language + "' records a gap on " + *lx.interlingual);
        }
        try {
          store_.create_language_concept(lang, inter, parent, lx.pos, lx.gloss, lx.id);
        } catch (const LexError& e) {
          conflict("concept '" + lx.id + "': " + e.what());
        }
        ++summary_.language_concepts;
        return true;
      }
      case LexicalizationType::sense: {
        auto concept_id = store_.find_concept(lx.concept_id.value_or(""));
        if (!concept_id) {
          if (later_concepts_.contains(lx.concept_id.value_or(""))) return false;
          unresolved(section, i, lx.concept_id.value_or(""));
        }
        if (auto have_id = store_.find_sense(lx.id)) {
          const WordSense& have = store_.sense(*have_id);
          if (have.language != lang || have.concept_id != *concept_id || have.lemma != lx.lemma.value_or(""))
            conflict("sense '" + lx.id + "' differs from the stored one");
          ++summary_.unchanged;
          return true;
        }
        if (store_.language_concept(*concept_id).language != lang) conflict("sense '" + lx.id + "' changes language");
        try {
          store_.create_sense(*concept_id, lx.lemma.value_or(""), lx.id);
        } catch (const LexError& e) {
          conflict("sense '" + lx.id + "': " + e.what());
        }
        ++summary_.senses;
        return true;
      }
      case LexicalizationType::gap: {
        InterlingualId inter = interlingual(lx.interlingual.value_or(""), section, i);
        if (store_.has_gap(lang, inter)) {
          ++summary_.unchanged;
          return true;
        }
        try {
          store_.mark_gap(inter, lang);
        } catch (const LexError& e) {
          conflict("gap on " + *lx.interlingual + " in '" + lx.language + "': " + e.what());
        }
        ++summary_.gaps;
        return true;
      }
    }
    return true;
  }

  void merge_lexicalizations() {
    for (const DocLexicalization& lx : doc_.lexicalizations) {
      if (lx.type == LexicalizationType::linked || lx.type == LexicalizationType::local_concept)
        later_concepts_.insert(lx.id);
    }
    std::vector<std::size_t> deferred;
    for (std::size_t i = 0; i < doc_.lexicalizations.size(); ++i) {
      const DocLexicalization& lx = doc_.lexicalizations[i];
      if (!merge_lexicalization(lx, i)) deferred.push_back(i);
    }
    // Forward references: retry until nothing moves.
    while (!deferred.empty()) {
      std::vector<std::size_t> still;
      for (std::size_t i : deferred) {
        if (!merge_lexicalization(doc_.lexicalizations[i], i)) still.push_back(i);
      }
      if (still.size() == deferred.size())
        throw ValidationError({Diagnostic{Severity::error, "UNROOTED_LOCAL", "lexicalizations", still.front(),
                                          "local concept chain never reaches the interlingua"}});
      deferred = std::move(still);
    }
  }

  void merge_links() {
    for (std::size_t i = 0; i < doc_.lexical_links.size(); ++i) {
      const DocLink& l = doc_.lexical_links[i];
      auto a = store_.find_sense(l.source);
      auto b = store_.find_sense(l.target);
      if (!a) unresolved("lexical_links", i, l.source);
      if (!b) unresolved("lexical_links", i, l.target);
      LexicalLink key{*a, *b, l.kind};
      if (is_symmetric(l.kind) && key.target < key.source) std::swap(key.source, key.target);
      if (store_.lexical_links().contains(key)) {
        ++summary_.unchanged;
        continue;
      }
      try {
        store_.add_lexical_link(*a, *b, l.kind);
      } catch (const LexError& e) {
        conflict("link " + l.source + " -> " + l.target + ": " + e.what());
      }
      ++summary_.lexical_links;
    }
  }

  const ExchangeDocument& doc_;
  ConceptStore& store_;
  ImportSummary summary_;
  std::unordered_set<std::string> later_concepts_;
};

}  // namespace

ImportSummary merge_document(const ExchangeDocument& doc, ConceptStore& store) {
  auto diagnostics = validate_document(doc);
  if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
  ConceptStore next = store;
  ImportSummary summary = Merger(doc, next).run();
  store = std::move(next);
  return summary;
}

ConceptStore import_document(const ExchangeDocument& doc) {
  ConceptStore store;
  merge_document(doc, store);
  return store;
}

// ---- mapping sets ------------------------------------------------------------

namespace {

MappingEndpoint resolve_endpoint(const DocEndpoint& e, const ConceptStore& store) {
  LanguageId lang = store.language_by_code(e.language);
  auto interlingual = [&](const std::string& ref) {
    auto id = store.find_interlingual(ref);
    if (!id) throw LexError(ErrorCode::unknown_ref, "unknown interlingual concept '" + ref + "'");
    return *id;
  };
  if (e.gap) {
    InterlingualId x = interlingual(*e.gap);
    if (!store.has_gap(lang, x))
      throw LexError(ErrorCode::unknown_ref, "'" + e.language + "' records no gap on " + *e.gap);
    return gap_endpoint(lang, x);
  }
  std::optional<ConceptId> concept_id;
  if (e.interlingual) {
    concept_id = store.concept_for(lang, interlingual(*e.interlingual));
    if (!concept_id)
      throw LexError(ErrorCode::unknown_ref, "'" + e.language + "' does not lexicalize " + *e.interlingual);
  } else {
    concept_id = store.find_concept(e.concept_id.value_or(""));
    if (!concept_id) throw LexError(ErrorCode::unknown_ref, "unknown concept '" + e.concept_id.value_or("") + "'");
    if (store.language_concept(*concept_id).language != lang)
      throw LexError(ErrorCode::unknown_ref, "concept '" + *e.concept_id + "' is not in '" + e.language + "'");
  }
  return concept_endpoint(store, *concept_id);
}

DocEndpoint endpoint_to_doc(const MappingEndpoint& e, const ConceptStore& store) {
  DocEndpoint out;
  out.language = store.language(e.language).code;
  if (e.is_gap()) {
    out.gap = store.interlingual(e.interlingual).stable_id;
  } else if (const LanguageConcept& c = store.language_concept(*e.concept_id); c.interlingual) {
    out.interlingual = store.interlingual(*c.interlingual).stable_id;
  } else {
    out.concept_id = c.stable_id;
  }
  return out;
}

}  // namespace

MappingSet resolve_mapping_set(const DocMappingSet& set, const ConceptStore& store) {
  MappingSet out;
  for (const std::string& code : set.languages) out.add_language(store.language_by_code(code));
  for (const DocMappingRelation& r : set.relations)
    out.insert(MappingRelation{resolve_endpoint(r.source, store), resolve_endpoint(r.target, store), r.kind});
  return out;
}

DocMappingSet mapping_set_to_doc(const MappingSet& set, const ConceptStore& store, std::string name) {
  DocMappingSet out;
  out.name = std::move(name);
  for (LanguageId l : set.languages()) out.languages.push_back(store.language(l).code);
  for (const MappingRelation& r : set.relations())
    out.relations.push_back(
        DocMappingRelation{endpoint_to_doc(r.source, store), endpoint_to_doc(r.target, store), r.kind});
  return out;
}

}  // namespace lexdb
