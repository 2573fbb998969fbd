#ifndef LEXDB_MAPPING_HPP
#define LEXDB_MAPPING_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexdb/bias.hpp"
#include "lexdb/concept_store.hpp"

namespace lexdb {

enum class MappingKind { equivalent, broader, narrower, untranslatable };

std::string_view to_string(MappingKind kind);
std::optional<MappingKind> parse_mapping_kind(std::string_view text);

// One side of a cross-lingual mapping: a language concept, or the lexical
// gap a language has for an interlingual concept.
struct MappingEndpoint {
  LanguageId language;
  std::optional<ConceptId> concept_id;  // unset for a gap
  InterlingualId interlingual;       // realized concept, gap concept, or a local concept's root

  bool is_gap() const { return !concept_id.has_value(); }

  friend auto operator<=>(const MappingEndpoint&, const MappingEndpoint&) = default;
};

MappingEndpoint concept_endpoint(const ConceptStore& store, ConceptId concept_id);
MappingEndpoint gap_endpoint(LanguageId language, InterlingualId interlingual);

// broader: the source meaning is broader than the target's.
// untranslatable: the source concept has a gap as its counterpart.
struct MappingRelation {
  MappingEndpoint source;
  MappingEndpoint target;
  MappingKind kind = MappingKind::equivalent;

  // Same assertion read from the other side; untranslatable keeps its
  // orientation since its target is always the gap.
  MappingRelation inverted() const;
  // Orientation-independent form: broader(a, b) and narrower(b, a) share it.
  MappingRelation canonical() const;

  friend auto operator<=>(const MappingRelation&, const MappingRelation&) = default;
};

// Duplicate-free relation set, closed under the broader/narrower symmetry:
// containing broader(a, b) is the same as containing narrower(b, a).
class MappingSet {
 public:
  // Returns false when the relation (in either orientation) is present.
  // Throws invalid_record / language_mismatch for malformed relations.
  bool insert(const MappingRelation& relation);
  bool contains(const MappingRelation& relation) const;
  void add_language(LanguageId language) { languages_.insert(language); }

  std::size_t size() const { return relations_.size(); }
  bool empty() const { return relations_.empty(); }
  // Relations in canonical order, each in the orientation it was inserted.
  std::vector<MappingRelation> relations() const;
  const std::set<LanguageId>& languages() const { return languages_; }

  // Same assertions, regardless of the orientation each was inserted in.
  friend bool operator==(const MappingSet& a, const MappingSet& b) {
    return std::ranges::equal(a.relations_, b.relations_, {}, [](const auto& e) { return e.first; },
                              [](const auto& e) { return e.first; });
  }

 private:
  std::map<MappingRelation, MappingRelation> relations_;  // canonical -> as inserted
  std::set<LanguageId> languages_;
};

struct DeriveOptions {
  bool include_local_concepts = false;
};

// Cross-lingual mappings implied by the store between two languages:
//  - equivalent for every interlingual concept both lexicalize;
//  - untranslatable from a lexicalized concept to the other side's gap;
//  - broader/narrower from a concept lexicalized by one language only to its
//    nearest hypernym ancestors lexicalized by the other, skipping ancestors
//    both lexicalize.
MappingSet derive_mappings(const ConceptStore& store, LanguageId a, LanguageId b, DeriveOptions options = {});
// Union of derive_mappings over every pair.
MappingSet derive_gold(const ConceptStore& store, std::span<const LanguageId> languages, DeriveOptions options = {});

// Expressive capability of a lexical-database architecture.
struct ModelCapability {
  std::string name;
  std::optional<std::string> pivot_language;  // unset: language-independent concept pivot
  bool supports_gaps = true;
  bool supports_broader_narrower = true;
  bool supports_local_concepts = true;

  static ModelCapability full();
};

// Built-in models: "ukc" (full), "omw" (English pivot, no gaps), "iwn" (Hindi
// pivot, no gaps), "babelnet" (concept pivot, no gaps), "omw2" (concept pivot,
// no broader/narrower).
std::optional<ModelCapability> capability_preset(std::string_view name);
std::vector<std::string> capability_preset_names();

// Nearest ancestor-or-self of `interlingual` that `pivot` lexicalizes; ties
// at equal depth resolve to the smallest id. This is the pivot meaning a
// language-pivot model can route the concept through.
std::optional<InterlingualId> pivot_of(const ConceptStore& store, LanguageId pivot, InterlingualId interlingual);

// Subset of `gold` the model can express. Under a language pivot every
// concept endpoint must be its own pivot meaning: concepts that only reach
// the pivot through a broader ancestor collapse onto it and are lost.
MappingSet apply_capability(const MappingSet& gold, const ModelCapability& capability, const ConceptStore& store);

struct LanguageCoverage {
  std::size_t expressible = 0;
  std::size_t gold = 0;
  double ratio = 0.0;
};

struct CoverageReport {
  std::map<LanguageId, LanguageCoverage> per_language;  // languages touched by gold relations
  std::size_t expressible = 0;
  std::size_t gold = 0;
  double overall = 1.0;  // vacuously complete for an empty gold set
};

CoverageReport coverage(const MappingSet& expressible, const MappingSet& gold);

// Bias of the per-language coverage ratios, labelled with the model name.
BiasReport coverage_bias(const CoverageReport& report, const ConceptStore& store, std::string_view system);

}  // namespace lexdb

#endif
