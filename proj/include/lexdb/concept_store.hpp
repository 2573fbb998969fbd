#ifndef LEXDB_CONCEPT_STORE_HPP
#define LEXDB_CONCEPT_STORE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lexdb/error.hpp"
#include "lexdb/ids.hpp"

namespace lexdb {

enum class LanguageRole { trade, local };
enum class SemanticKind { hypernym, meronym };
enum class PartOfSpeech { noun, verb, adjective, adverb, other };
enum class LinkKind { cognate, derivation, antonym, metonym };

std::string_view to_string(LanguageRole role);
std::string_view to_string(SemanticKind kind);
std::string_view to_string(PartOfSpeech pos);
std::string_view to_string(LinkKind kind);

std::optional<LanguageRole> parse_language_role(std::string_view text);
std::optional<SemanticKind> parse_semantic_kind(std::string_view text);
std::optional<PartOfSpeech> parse_part_of_speech(std::string_view text);
std::optional<LinkKind> parse_link_kind(std::string_view text);

// Cognates and antonyms hold in both directions.
constexpr bool is_symmetric(LinkKind kind) { return kind == LinkKind::cognate || kind == LinkKind::antonym; }

// BCP-47-style: lowercase primary subtag of 2-8 letters, then optional
// alphanumeric subtags separated by '-'.
bool is_well_formed_code(std::string_view code);

struct Language {
  LanguageId id;
  std::string code;
  std::string name;
  LanguageRole role = LanguageRole::local;
  std::string provenance;  // serialized JSON object, empty when absent
};

// The label is a reading aid for humans; no store operation depends on it.
struct InterlingualConcept {
  InterlingualId id;
  std::string stable_id;
  std::optional<std::string> label;
};

struct SemanticRelation {
  InterlingualId source;
  InterlingualId target;
  SemanticKind kind = SemanticKind::hypernym;

  friend auto operator<=>(const SemanticRelation&, const SemanticRelation&) = default;
};

// A concept in one language's lexico-semantic layer. Linked concepts carry
// the interlingual concept they realize; local concepts carry a parent in
// the same language instead.
struct LanguageConcept {
  ConceptId id;
  std::string stable_id;
  LanguageId language;
  std::optional<InterlingualId> interlingual;
  std::optional<ConceptId> parent;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::optional<std::string> gloss;

  bool is_local() const { return !interlingual.has_value(); }
};

struct LexicalGap {
  LanguageId language;
  InterlingualId interlingual;

  friend auto operator<=>(const LexicalGap&, const LexicalGap&) = default;
};

struct WordSense {
  SenseId id;
  std::string stable_id;
  LanguageId language;
  std::string lemma;
  ConceptId concept_id;
};

// Symmetric kinds are stored with source < target.
struct LexicalLink {
  SenseId source;
  SenseId target;
  LinkKind kind = LinkKind::cognate;

  friend auto operator<=>(const LexicalLink&, const LexicalLink&) = default;
};

struct SensesResult {
  std::optional<ConceptId> concept_id;
  std::vector<SenseId> senses;
  bool gap = false;

  friend bool operator==(const SensesResult&, const SensesResult&) = default;
};

struct LexiconStats {
  std::size_t concepts = 0;        // linked to the interlingua
  std::size_t local_concepts = 0;
  std::size_t senses = 0;
  std::size_t gaps = 0;
  std::size_t cognate_links = 0;   // touching this language
  std::size_t lexical_links = 0;   // derivation, antonym and metonym within the language

  friend bool operator==(const LexiconStats&, const LexiconStats&) = default;
};

struct LinkedSense {
  SenseId sense;
  LinkKind kind;
  bool outgoing;  // always true for symmetric kinds

  friend auto operator<=>(const LinkedSense&, const LinkedSense&) = default;
};

// In-memory lexical database: an interlingual concept graph plus one
// lexicon per language. Append-only; every mutation either succeeds or
// throws LexError leaving the store untouched.
class ConceptStore {
 public:
  LanguageId add_language(std::string code, std::string name, LanguageRole role = LanguageRole::local);
  InterlingualId add_interlingual_concept(std::optional<std::string> label = std::nullopt);
  void add_semantic_relation(InterlingualId source, InterlingualId target, SemanticKind kind);
  SenseId lexicalize(InterlingualId concept_id, LanguageId language, std::string lemma, PartOfSpeech pos,
                     std::optional<std::string> gloss = std::nullopt);
  void mark_gap(InterlingualId concept_id, LanguageId language);
  // Part of speech is inherited from the parent.
  ConceptId add_local_concept(LanguageId language, ConceptId parent, std::optional<std::string> gloss = std::nullopt,
                              std::optional<std::string> lemma = std::nullopt);
  void add_lexical_link(SenseId source, SenseId target, LinkKind kind);
  void set_label(InterlingualId concept_id, std::optional<std::string> label);

  // Lower-level constructors with caller-chosen stable ids (document import).
  InterlingualId create_interlingual(std::optional<std::string> label, std::string stable_id);
  ConceptId create_language_concept(LanguageId language, std::optional<InterlingualId> interlingual,
                                    std::optional<ConceptId> parent, PartOfSpeech pos,
                                    std::optional<std::string> gloss, std::string stable_id);
  SenseId create_sense(ConceptId concept_id, std::string lemma, std::string stable_id);
  void set_language_provenance(LanguageId language, std::string provenance);
  void set_provenance(std::string provenance) { provenance_ = std::move(provenance); }

  // Entity tables, ordered by id.
  std::span<const Language> languages() const { return languages_; }
  std::span<const InterlingualConcept> interlingual_concepts() const { return interlinguals_; }
  std::span<const LanguageConcept> language_concepts() const { return concepts_; }
  std::span<const WordSense> senses() const { return senses_; }
  const std::set<SemanticRelation>& semantic_relations() const { return relations_; }
  const std::set<LexicalGap>& gaps() const { return gaps_; }
  const std::set<LexicalLink>& lexical_links() const { return links_; }
  const std::string& provenance() const { return provenance_; }

  const Language& language(LanguageId id) const;
  const InterlingualConcept& interlingual(InterlingualId id) const;
  const LanguageConcept& language_concept(ConceptId id) const;
  const WordSense& sense(SenseId id) const;

  std::optional<LanguageId> find_language(std::string_view code) const;
  // Throws unknown_language.
  LanguageId language_by_code(std::string_view code) const;
  std::optional<InterlingualId> find_interlingual(std::string_view stable_id) const;
  std::optional<ConceptId> find_concept(std::string_view stable_id) const;
  std::optional<SenseId> find_sense(std::string_view stable_id) const;

  std::optional<ConceptId> concept_for(LanguageId language, InterlingualId interlingual) const;
  bool has_gap(LanguageId language, InterlingualId interlingual) const;
  bool lexicalizes(LanguageId language, InterlingualId interlingual) const {
    return concept_for(language, interlingual).has_value();
  }

  std::span<const InterlingualId> hypernym_parents(InterlingualId id) const;
  std::span<const InterlingualId> hypernym_children(InterlingualId id) const;
  std::span<const ConceptId> local_children(ConceptId id) const;
  std::span<const SenseId> senses_of_concept(ConceptId id) const;
  std::vector<LinkedSense> linked_senses(SenseId id) const;
  // Nearest linked concept up the local parent chain (the concept itself
  // when it is linked).
  const LanguageConcept& root_of(ConceptId id) const;

  // Read surface.
  SensesResult senses_of(InterlingualId concept_id, LanguageId language) const;
  ConceptId concept_of(SenseId sense) const;
  std::vector<InterlingualId> gaps_of(LanguageId language) const;
  // Transitive hypernym ancestors, excluding the concept itself.
  std::vector<InterlingualId> hypernym_ancestors(InterlingualId concept_id) const;
  LexiconStats lexicon_stats(LanguageId language) const;
  std::vector<SenseId> find_lemma(LanguageId language, std::string_view lemma) const;

 private:
  void check(LanguageId id) const;
  void check(InterlingualId id) const;
  void check(ConceptId id) const;
  void check(SenseId id) const;
  std::string fresh_stable_id(std::string_view prefix, std::uint32_t serial,
                              const std::unordered_map<std::string, std::uint32_t>& taken) const;
  bool reaches_upward(InterlingualId from, InterlingualId target) const;
  void check_local_parent(LanguageId language, ConceptId parent) const;

  std::vector<Language> languages_;
  std::vector<InterlingualConcept> interlinguals_;
  std::vector<LanguageConcept> concepts_;
  std::vector<WordSense> senses_;
  std::set<SemanticRelation> relations_;
  std::set<LexicalGap> gaps_;
  std::set<LexicalLink> links_;
  std::string provenance_;

  std::map<std::string, LanguageId, std::less<>> language_by_code_;
  std::unordered_map<std::string, std::uint32_t> interlingual_by_stable_;
  std::unordered_map<std::string, std::uint32_t> concept_by_stable_;
  std::unordered_map<std::string, std::uint32_t> sense_by_stable_;

  std::vector<std::vector<InterlingualId>> parents_;   // hypernym edges, sorted
  std::vector<std::vector<InterlingualId>> children_;
  std::map<std::pair<LanguageId, InterlingualId>, ConceptId> concept_by_pair_;
  std::vector<std::vector<ConceptId>> local_children_;
  std::vector<std::vector<SenseId>> concept_senses_;
  std::map<std::pair<LanguageId, std::string>, std::vector<SenseId>> senses_by_lemma_;
  std::vector<std::vector<LexicalLink>> links_by_sense_;
};

}  // namespace lexdb

#endif
