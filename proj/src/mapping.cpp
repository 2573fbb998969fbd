#include "lexdb/mapping.hpp"

#include <algorithm>

namespace lexdb {

std::string_view to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::equivalent: return "equivalent";
    case MappingKind::broader: return "broader";
    case MappingKind::narrower: return "narrower";
    case MappingKind::untranslatable: return "untranslatable";
  }
  return "?";
}

std::optional<MappingKind> parse_mapping_kind(std::string_view text) {
  for (MappingKind k : {MappingKind::equivalent, MappingKind::broader, MappingKind::narrower,
                        MappingKind::untranslatable}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

MappingEndpoint concept_endpoint(const ConceptStore& store, ConceptId concept_id) {
  const LanguageConcept& c = store.language_concept(concept_id);
  return MappingEndpoint{c.language, concept_id, *store.root_of(concept_id).interlingual};
}

MappingEndpoint gap_endpoint(LanguageId language, InterlingualId interlingual) {
  return MappingEndpoint{language, std::nullopt, interlingual};
}

MappingRelation MappingRelation::inverted() const {
  switch (kind) {
    case MappingKind::equivalent: return {target, source, MappingKind::equivalent};
    case MappingKind::broader: return {target, source, MappingKind::narrower};
    case MappingKind::narrower: return {target, source, MappingKind::broader};
    case MappingKind::untranslatable: return *this;
  }
  return *this;
}

MappingRelation MappingRelation::canonical() const {
  switch (kind) {
    case MappingKind::equivalent: return target < source ? inverted() : *this;
    case MappingKind::broader: return inverted();
    default: return *this;
  }
}

bool MappingSet::insert(const MappingRelation& relation) {
  if (relation.source.language == relation.target.language)
    throw LexError(ErrorCode::language_mismatch, "mapping relations connect two different languages");
  if (relation.source.is_gap())
    throw LexError(ErrorCode::invalid_record, "a gap cannot be the source of a mapping relation");
  if ((relation.kind == MappingKind::untranslatable) != relation.target.is_gap())
    throw LexError(ErrorCode::invalid_record, "untranslatable relations, and only they, target a gap");
  languages_.insert(relation.source.language);
  languages_.insert(relation.target.language);
  return relations_.emplace(relation.canonical(), relation).second;
}

bool MappingSet::contains(const MappingRelation& relation) const {
  return relations_.contains(relation.canonical());
}

std::vector<MappingRelation> MappingSet::relations() const {
  std::vector<MappingRelation> out;
  out.reserve(relations_.size());
  for (const auto& [key, rel] : relations_) out.push_back(rel);
  return out;
}

namespace {

// Nearest strict (or, with include_self, non-strict) hypernym ancestors of
// `start` that satisfy `accept`, all at the minimum depth.
template <class Pred>
std::vector<InterlingualId> nearest_ancestors(const ConceptStore& store, InterlingualId start, bool include_self,
                                              Pred accept) {
  if (include_self && accept(start)) return {start};
  std::vector<bool> seen(store.interlingual_concepts().size(), false);
  seen[start.index()] = true;
  std::vector<InterlingualId> frontier(store.hypernym_parents(start).begin(), store.hypernym_parents(start).end());
  for (InterlingualId p : frontier) seen[p.index()] = true;
  while (!frontier.empty()) {
    std::vector<InterlingualId> hits;
    for (InterlingualId c : frontier) {
      if (accept(c)) hits.push_back(c);
    }
    if (!hits.empty()) {
      std::sort(hits.begin(), hits.end());
      return hits;
    }
    std::vector<InterlingualId> next;
    for (InterlingualId c : frontier) {
      for (InterlingualId p : store.hypernym_parents(c)) {
        if (!seen[p.index()]) {
          seen[p.index()] = true;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  return {};
}

// broader/narrower relations from concepts lexicalized only by `narrow_lang`
// up to their nearest ancestors lexicalized by `broad_lang`. The broader side
// is written as the relation's source when it lives in `source_lang`.
void add_hierarchy_relations(const ConceptStore& store, LanguageId source_lang, LanguageId broad_lang,
                             LanguageId narrow_lang, bool include_locals, MappingSet& out) {
  auto emit = [&](ConceptId broad, ConceptId narrow) {
    MappingRelation r{concept_endpoint(store, broad), concept_endpoint(store, narrow), MappingKind::broader};
    out.insert(broad_lang == source_lang ? r : r.inverted());
  };
  for (const LanguageConcept& c : store.language_concepts()) {
    if (c.language != narrow_lang) continue;
    if (c.interlingual) {
      if (store.lexicalizes(broad_lang, *c.interlingual)) continue;
      auto ancestors = nearest_ancestors(store, *c.interlingual, false,
                                         [&](InterlingualId x) { return store.lexicalizes(broad_lang, x); });
      for (InterlingualId y : ancestors) {
        if (store.lexicalizes(narrow_lang, y)) continue;
        emit(*store.concept_for(broad_lang, y), c.id);
      }
    } else if (include_locals) {
      InterlingualId root = *store.root_of(c.id).interlingual;
      auto ancestors =
          nearest_ancestors(store, root, true, [&](InterlingualId x) { return store.lexicalizes(broad_lang, x); });
      for (InterlingualId y : ancestors) emit(*store.concept_for(broad_lang, y), c.id);
    }
  }
}

}  // namespace

MappingSet derive_mappings(const ConceptStore& store, LanguageId a, LanguageId b, DeriveOptions options) {
  store.language(a);
  store.language(b);
  if (a == b) throw LexError(ErrorCode::language_mismatch, "mappings need two different languages");
  MappingSet out;
  out.add_language(a);
  out.add_language(b);
  for (const InterlingualConcept& x : store.interlingual_concepts()) {
    auto ca = store.concept_for(a, x.id);
    auto cb = store.concept_for(b, x.id);
    if (ca && cb) out.insert({concept_endpoint(store, *ca), concept_endpoint(store, *cb), MappingKind::equivalent});
    if (ca && store.has_gap(b, x.id))
      out.insert({concept_endpoint(store, *ca), gap_endpoint(b, x.id), MappingKind::untranslatable});
    if (cb && store.has_gap(a, x.id))
      out.insert({concept_endpoint(store, *cb), gap_endpoint(a, x.id), MappingKind::untranslatable});
  }
  add_hierarchy_relations(store, a, a, b, options.include_local_concepts, out);
  add_hierarchy_relations(store, a, b, a, options.include_local_concepts, out);
  return out;
}

MappingSet derive_gold(const ConceptStore& store, std::span<const LanguageId> languages, DeriveOptions options) {
  MappingSet out;
  for (std::size_t i = 0; i < languages.size(); ++i) {
    out.add_language(languages[i]);
    for (std::size_t j = i + 1; j < languages.size(); ++j) {
      for (const MappingRelation& r : derive_mappings(store, languages[i], languages[j], options).relations())
        out.insert(r);
    }
  }
  return out;
}

ModelCapability ModelCapability::full() { return ModelCapability{"ukc", std::nullopt, true, true, true}; }

std::optional<ModelCapability> capability_preset(std::string_view name) {
  if (name == "ukc" || name == "full") return ModelCapability{std::string(name), std::nullopt, true, true, true};
  if (name == "omw") return ModelCapability{"omw", "en", false, true, false};
  if (name == "iwn") return ModelCapability{"iwn", "hi", false, true, false};
  if (name == "babelnet") return ModelCapability{"babelnet", std::nullopt, false, true, false};
  if (name == "omw2") return ModelCapability{"omw2", std::nullopt, true, false, false};
  return std::nullopt;
}

std::vector<std::string> capability_preset_names() { return {"babelnet", "iwn", "omw", "omw2", "ukc"}; }

std::optional<InterlingualId> pivot_of(const ConceptStore& store, LanguageId pivot, InterlingualId interlingual) {
  auto hits =
      nearest_ancestors(store, interlingual, true, [&](InterlingualId x) { return store.lexicalizes(pivot, x); });
  if (hits.empty()) return std::nullopt;
  return hits.front();
}

namespace {

void check_endpoint(const ConceptStore& store, const MappingEndpoint& e) {
  store.language(e.language);
  store.interlingual(e.interlingual);
  if (e.concept_id) {
    const LanguageConcept& c = store.language_concept(*e.concept_id);
    if (c.language != e.language)
      throw LexError(ErrorCode::unknown_ref, "endpoint concept " + c.stable_id + " is not in the stated language");
  } else if (!store.has_gap(e.language, e.interlingual)) {
    throw LexError(ErrorCode::unknown_ref, "endpoint refers to a gap the store does not record");
  }
}

}  // namespace

MappingSet apply_capability(const MappingSet& gold, const ModelCapability& capability, const ConceptStore& store) {
  std::optional<LanguageId> pivot;
  if (capability.pivot_language) pivot = store.language_by_code(*capability.pivot_language);

  auto expressible_endpoint = [&](const MappingEndpoint& e) {
    if (e.is_gap()) return true;
    bool local = store.language_concept(*e.concept_id).is_local();
    if (local && !capability.supports_local_concepts) return false;
    if (!pivot) return true;
    // A local meaning has no pivot word of its own; it collapses onto its root's.
    return !local && pivot_of(store, *pivot, e.interlingual) == e.interlingual;
  };

  MappingSet out;
  for (LanguageId l : gold.languages()) out.add_language(l);
  for (const MappingRelation& r : gold.relations()) {
    check_endpoint(store, r.source);
    check_endpoint(store, r.target);
    if (r.kind == MappingKind::untranslatable && !capability.supports_gaps) continue;
    if ((r.kind == MappingKind::broader || r.kind == MappingKind::narrower) && !capability.supports_broader_narrower)
      continue;
    if (!expressible_endpoint(r.source) || !expressible_endpoint(r.target)) continue;
    out.insert(r);
  }
  return out;
}

CoverageReport coverage(const MappingSet& expressible, const MappingSet& gold) {
  for (const MappingRelation& r : expressible.relations()) {
    if (!gold.contains(r)) throw LexError(ErrorCode::not_subset, "expressible relation missing from the gold set");
  }
  CoverageReport report;
  report.gold = gold.size();
  report.expressible = expressible.size();
  for (const MappingRelation& r : gold.relations()) {
    bool kept = expressible.contains(r);
    for (LanguageId l : {r.source.language, r.target.language}) {
      LanguageCoverage& lc = report.per_language[l];
      ++lc.gold;
      if (kept) ++lc.expressible;
    }
  }
  for (auto& [lang, lc] : report.per_language)
    lc.ratio = static_cast<double>(lc.expressible) / static_cast<double>(lc.gold);
  if (report.gold > 0) report.overall = static_cast<double>(report.expressible) / static_cast<double>(report.gold);
  return report;
}

BiasReport coverage_bias(const CoverageReport& report, const ConceptStore& store, std::string_view system) {
  std::vector<PerfRecord> records;
  for (const auto& [lang, lc] : report.per_language) {
    records.push_back(PerfRecord{store.language(lang).code, "cross-lingual mapping", std::string(system), lc.ratio,
                                 MetricDirection::higher_better, std::nullopt, true});
  }
  return bias(records);
}

}  // namespace lexdb
