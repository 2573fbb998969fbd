#include "lexdb/concept_store.hpp"

#include <algorithm>
#include <deque>

namespace lexdb {

namespace {

template <class Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view text, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

constexpr std::pair<std::string_view, LanguageRole> kRoles[] = {{"trade", LanguageRole::trade},
                                                                 {"local", LanguageRole::local}};
constexpr std::pair<std::string_view, SemanticKind> kSemanticKinds[] = {{"hypernym", SemanticKind::hypernym},
                                                                         {"meronym", SemanticKind::meronym}};
constexpr std::pair<std::string_view, PartOfSpeech> kPos[] = {{"noun", PartOfSpeech::noun},
                                                              {"verb", PartOfSpeech::verb},
                                                              {"adjective", PartOfSpeech::adjective},
                                                              {"adverb", PartOfSpeech::adverb},
                                                              {"other", PartOfSpeech::other}};
constexpr std::pair<std::string_view, LinkKind> kLinkKinds[] = {{"cognate", LinkKind::cognate},
                                                                {"derivation", LinkKind::derivation},
                                                                {"antonym", LinkKind::antonym},
                                                                {"metonym", LinkKind::metonym}};

template <class Enum, std::size_t N>
std::string_view name_of(Enum value, const std::pair<std::string_view, Enum> (&table)[N]) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "?";
}

bool is_lower_alpha(char c) { return c >= 'a' && c <= 'z'; }
bool is_alnum(char c) { return is_lower_alpha(c) || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'); }

template <class Id>
std::optional<Id> lookup(const std::unordered_map<std::string, std::uint32_t>& map, std::string_view key) {
  auto it = map.find(std::string(key));
  if (it == map.end()) return std::nullopt;
  return Id(it->second);
}

}  // namespace

std::string_view to_string(LanguageRole role) { return name_of(role, kRoles); }
std::string_view to_string(SemanticKind kind) { return name_of(kind, kSemanticKinds); }
std::string_view to_string(PartOfSpeech pos) { return name_of(pos, kPos); }
std::string_view to_string(LinkKind kind) { return name_of(kind, kLinkKinds); }

std::optional<LanguageRole> parse_language_role(std::string_view text) { return parse_enum(text, kRoles); }
std::optional<SemanticKind> parse_semantic_kind(std::string_view text) { return parse_enum(text, kSemanticKinds); }
std::optional<PartOfSpeech> parse_part_of_speech(std::string_view text) { return parse_enum(text, kPos); }
std::optional<LinkKind> parse_link_kind(std::string_view text) { return parse_enum(text, kLinkKinds); }

bool is_well_formed_code(std::string_view code) {
  std::size_t i = 0;
  while (i < code.size() && is_lower_alpha(code[i])) ++i;
  if (i < 2 || i > 8) return false;
  while (i < code.size()) {
    if (code[i] != '-') return false;
    std::size_t start = ++i;
    while (i < code.size() && is_alnum(code[i])) ++i;
    if (i == start || i - start > 8) return false;
  }
  return true;
}

// ---- checks ----------------------------------------------------------------

void ConceptStore::check(LanguageId id) const {
  if (!id.valid() || id.index() >= languages_.size())
    throw LexError(ErrorCode::unknown_ref, "unknown language id " + std::to_string(id.value));
}

void ConceptStore::check(InterlingualId id) const {
  if (!id.valid() || id.index() >= interlinguals_.size())
    throw LexError(ErrorCode::unknown_ref, "unknown interlingual concept id " + std::to_string(id.value));
}

void ConceptStore::check(ConceptId id) const {
  if (!id.valid() || id.index() >= concepts_.size())
    throw LexError(ErrorCode::unknown_ref, "unknown language concept id " + std::to_string(id.value));
}

void ConceptStore::check(SenseId id) const {
  if (!id.valid() || id.index() >= senses_.size())
    throw LexError(ErrorCode::unknown_ref, "unknown word sense id " + std::to_string(id.value));
}

std::string ConceptStore::fresh_stable_id(std::string_view prefix, std::uint32_t serial,
                                          const std::unordered_map<std::string, std::uint32_t>& taken) const {
  for (;; ++serial) {
    std::string candidate = std::string(prefix) + std::to_string(serial);
    if (!taken.contains(candidate)) return candidate;
  }
}

// True when `target` is `from` or one of its hypernym ancestors.
bool ConceptStore::reaches_upward(InterlingualId from, InterlingualId target) const {
  std::vector<bool> seen(interlinguals_.size(), false);
  std::vector<InterlingualId> stack{from};
  seen[from.index()] = true;
  while (!stack.empty()) {
    InterlingualId cur = stack.back();
    stack.pop_back();
    if (cur == target) return true;
    for (InterlingualId p : parents_[cur.index()]) {
      if (!seen[p.index()]) {
        seen[p.index()] = true;
        stack.push_back(p);
      }
    }
  }
  return false;
}

void ConceptStore::check_local_parent(LanguageId language, ConceptId parent) const {
  check(parent);
  if (concepts_[parent.index()].language != language)
    throw LexError(ErrorCode::cross_language_parent, "parent concept " + concepts_[parent.index()].stable_id +
                                                         " belongs to another language");
  // The chain is bounded by the number of concepts; anything longer loops.
  ConceptId cur = parent;
  for (std::size_t steps = 0; steps <= concepts_.size(); ++steps) {
    const LanguageConcept& c = concepts_[cur.index()];
    if (c.interlingual) return;
    if (!c.parent)
      throw LexError(ErrorCode::unrooted_local, "local concept chain from " + concepts_[parent.index()].stable_id +
                                                    " never reaches the interlingua");
    cur = *c.parent;
  }
  throw LexError(ErrorCode::cycle, "local parent chain from " + concepts_[parent.index()].stable_id + " loops");
}

// ---- mutations -------------------------------------------------------------

LanguageId ConceptStore::add_language(std::string code, std::string name, LanguageRole role) {
  if (!is_well_formed_code(code)) throw LexError(ErrorCode::malformed_code, "malformed language code '" + code + "'");
  if (language_by_code_.contains(code))
    throw LexError(ErrorCode::duplicate_code, "language code '" + code + "' already present");
  LanguageId id(static_cast<std::uint32_t>(languages_.size() + 1));
  language_by_code_.emplace(code, id);
  languages_.push_back(Language{id, std::move(code), std::move(name), role, {}});
  return id;
}

InterlingualId ConceptStore::add_interlingual_concept(std::optional<std::string> label) {
  auto serial = static_cast<std::uint32_t>(interlinguals_.size() + 1);
  return create_interlingual(std::move(label), fresh_stable_id("ukc:C", serial, interlingual_by_stable_));
}

InterlingualId ConceptStore::create_interlingual(std::optional<std::string> label, std::string stable_id) {
  if (stable_id.empty() || interlingual_by_stable_.contains(stable_id))
    throw LexError(ErrorCode::duplicate, "interlingual stable id '" + stable_id + "' is empty or taken");
  InterlingualId id(static_cast<std::uint32_t>(interlinguals_.size() + 1));
  interlingual_by_stable_.emplace(stable_id, id.value);
  interlinguals_.push_back(InterlingualConcept{id, std::move(stable_id), std::move(label)});
  parents_.emplace_back();
  children_.emplace_back();
  return id;
}

void ConceptStore::set_label(InterlingualId concept_id, std::optional<std::string> label) {
  check(concept_id);
  interlinguals_[concept_id.index()].label = std::move(label);
}

void ConceptStore::add_semantic_relation(InterlingualId source, InterlingualId target, SemanticKind kind) {
  check(source);
  check(target);
  if (source == target) throw LexError(ErrorCode::self_loop, "semantic relation from a concept to itself");
  SemanticRelation rel{source, target, kind};
  if (relations_.contains(rel)) throw LexError(ErrorCode::duplicate, "semantic relation already present");
  if (kind == SemanticKind::hypernym) {
    if (reaches_upward(target, source))
      throw LexError(ErrorCode::cycle, "hypernym " + interlinguals_[source.index()].stable_id + " -> " +
                                           interlinguals_[target.index()].stable_id + " would close a cycle");
    auto& ps = parents_[source.index()];
    ps.insert(std::upper_bound(ps.begin(), ps.end(), target), target);
    auto& cs = children_[target.index()];
    cs.insert(std::upper_bound(cs.begin(), cs.end(), source), source);
  }
  relations_.insert(rel);
}

ConceptId ConceptStore::create_language_concept(LanguageId language, std::optional<InterlingualId> interlingual,
                                                std::optional<ConceptId> parent, PartOfSpeech pos,
                                                std::optional<std::string> gloss, std::string stable_id) {
  check(language);
  if (stable_id.empty() || concept_by_stable_.contains(stable_id))
    throw LexError(ErrorCode::duplicate, "concept stable id '" + stable_id + "' is empty or taken");
  if (interlingual) {
    check(*interlingual);
    if (parent)
      throw LexError(ErrorCode::invalid_record, "a concept linked to the interlingua cannot have a local parent");
    if (gaps_.contains(LexicalGap{language, *interlingual}))
      throw LexError(ErrorCode::gap_conflict, "pair is marked as a lexical gap");
    if (concept_by_pair_.contains({language, *interlingual}))
      throw LexError(ErrorCode::duplicate, "language already has a concept for this interlingual concept");
  } else {
    if (!parent) throw LexError(ErrorCode::unrooted_local, "local concept without a parent");
    check_local_parent(language, *parent);
  }

  ConceptId id(static_cast<std::uint32_t>(concepts_.size() + 1));
  concept_by_stable_.emplace(stable_id, id.value);
  if (interlingual) concept_by_pair_.emplace(std::pair{language, *interlingual}, id);
  if (parent) local_children_[parent->index()].push_back(id);
  concepts_.push_back(LanguageConcept{id, std::move(stable_id), language, interlingual, parent, pos, std::move(gloss)});
  local_children_.emplace_back();
  concept_senses_.emplace_back();
  return id;
}

SenseId ConceptStore::create_sense(ConceptId concept_id, std::string lemma, std::string stable_id) {
  check(concept_id);
  if (lemma.empty()) throw LexError(ErrorCode::invalid_record, "empty lemma");
  if (stable_id.empty() || sense_by_stable_.contains(stable_id))
    throw LexError(ErrorCode::duplicate, "sense stable id '" + stable_id + "' is empty or taken");
  LanguageId language = concepts_[concept_id.index()].language;
  auto key = std::pair{language, lemma};
  auto it = senses_by_lemma_.find(key);
  if (it != senses_by_lemma_.end()) {
    for (SenseId s : it->second) {
      if (senses_[s.index()].concept_id == concept_id)
        throw LexError(ErrorCode::duplicate_sense, "sense '" + lemma + "' already attached to this concept");
    }
  }
  SenseId id(static_cast<std::uint32_t>(senses_.size() + 1));
  sense_by_stable_.emplace(stable_id, id.value);
  senses_by_lemma_[std::move(key)].push_back(id);
  concept_senses_[concept_id.index()].push_back(id);
  senses_.push_back(WordSense{id, std::move(stable_id), language, std::move(lemma), concept_id});
  links_by_sense_.emplace_back();
  return id;
}

SenseId ConceptStore::lexicalize(InterlingualId concept_id, LanguageId language, std::string lemma, PartOfSpeech pos,
                                 std::optional<std::string> gloss) {
  check(concept_id);
  check(language);
  if (lemma.empty()) throw LexError(ErrorCode::invalid_record, "empty lemma");
  if (gaps_.contains(LexicalGap{language, concept_id}))
    throw LexError(ErrorCode::gap_conflict, interlinguals_[concept_id.index()].stable_id + " is a lexical gap in '" +
                                                languages_[language.index()].code + "'");
  const std::string& code = languages_[language.index()].code;
  auto existing = concept_for(language, concept_id);
  if (existing) {
    // Check before touching anything so a failure leaves the store intact.
    auto it = senses_by_lemma_.find(std::pair{language, lemma});
    if (it != senses_by_lemma_.end()) {
      for (SenseId s : it->second) {
        if (senses_[s.index()].concept_id == *existing)
          throw LexError(ErrorCode::duplicate_sense, "sense '" + lemma + "' already present");
      }
    }
  }
  ConceptId lc = existing ? *existing
                          : create_language_concept(language, concept_id, std::nullopt, pos, std::move(gloss),
                                                    fresh_stable_id("lc:" + code + ":",
                                                                    static_cast<std::uint32_t>(concepts_.size() + 1),
                                                                    concept_by_stable_));
  return create_sense(lc, std::move(lemma),
                      fresh_stable_id("ws:" + code + ":", static_cast<std::uint32_t>(senses_.size() + 1),
                                      sense_by_stable_));
}

void ConceptStore::mark_gap(InterlingualId concept_id, LanguageId language) {
  check(concept_id);
  check(language);
  LexicalGap gap{language, concept_id};
  if (gaps_.contains(gap)) throw LexError(ErrorCode::duplicate_gap, "gap already recorded");
  if (concept_by_pair_.contains({language, concept_id}))
    throw LexError(ErrorCode::sense_conflict, interlinguals_[concept_id.index()].stable_id + " is lexicalized in '" +
                                                  languages_[language.index()].code + "'");
  gaps_.insert(gap);
}

ConceptId ConceptStore::add_local_concept(LanguageId language, ConceptId parent, std::optional<std::string> gloss,
                                          std::optional<std::string> lemma) {
  check(language);
  check_local_parent(language, parent);
  if (lemma && lemma->empty()) throw LexError(ErrorCode::invalid_record, "empty lemma");
  const std::string& code = languages_[language.index()].code;
  ConceptId id = create_language_concept(
      language, std::nullopt, parent, concepts_[parent.index()].pos, std::move(gloss),
      fresh_stable_id("local:" + code + ":", static_cast<std::uint32_t>(concepts_.size() + 1), concept_by_stable_));
  if (lemma) {
    create_sense(id, std::move(*lemma),
                 fresh_stable_id("ws:" + code + ":", static_cast<std::uint32_t>(senses_.size() + 1), sense_by_stable_));
  }
  return id;
}

void ConceptStore::add_lexical_link(SenseId source, SenseId target, LinkKind kind) {
  check(source);
  check(target);
  if (source == target) throw LexError(ErrorCode::self_link, "lexical link from a sense to itself");
  bool same_language = senses_[source.index()].language == senses_[target.index()].language;
  if (kind == LinkKind::cognate && same_language)
    throw LexError(ErrorCode::language_mismatch, "cognates must connect different languages");
  if (kind != LinkKind::cognate && !same_language)
    throw LexError(ErrorCode::language_mismatch, std::string(to_string(kind)) + " links stay within one language");
  LexicalLink link{source, target, kind};
  if (is_symmetric(kind) && target < source) std::swap(link.source, link.target);
  if (links_.contains(link)) throw LexError(ErrorCode::duplicate, "lexical link already present");
  links_.insert(link);
  links_by_sense_[link.source.index()].push_back(link);
  links_by_sense_[link.target.index()].push_back(link);
}

void ConceptStore::set_language_provenance(LanguageId language, std::string provenance) {
  check(language);
  languages_[language.index()].provenance = std::move(provenance);
}

// ---- reads -----------------------------------------------------------------

const Language& ConceptStore::language(LanguageId id) const {
  check(id);
  return languages_[id.index()];
}

const InterlingualConcept& ConceptStore::interlingual(InterlingualId id) const {
  check(id);
  return interlinguals_[id.index()];
}

const LanguageConcept& ConceptStore::language_concept(ConceptId id) const {
  check(id);
  return concepts_[id.index()];
}

const WordSense& ConceptStore::sense(SenseId id) const {
  check(id);
  return senses_[id.index()];
}

std::optional<LanguageId> ConceptStore::find_language(std::string_view code) const {
  auto it = language_by_code_.find(code);
  if (it == language_by_code_.end()) return std::nullopt;
  return it->second;
}

LanguageId ConceptStore::language_by_code(std::string_view code) const {
  auto id = find_language(code);
  if (!id) throw LexError(ErrorCode::unknown_language, "unknown language '" + std::string(code) + "'");
  return *id;
}

std::optional<InterlingualId> ConceptStore::find_interlingual(std::string_view stable_id) const {
  return lookup<InterlingualId>(interlingual_by_stable_, stable_id);
}

std::optional<ConceptId> ConceptStore::find_concept(std::string_view stable_id) const {
  return lookup<ConceptId>(concept_by_stable_, stable_id);
}

std::optional<SenseId> ConceptStore::find_sense(std::string_view stable_id) const {
  return lookup<SenseId>(sense_by_stable_, stable_id);
}

std::optional<ConceptId> ConceptStore::concept_for(LanguageId language, InterlingualId interlingual) const {
  auto it = concept_by_pair_.find({language, interlingual});
  if (it == concept_by_pair_.end()) return std::nullopt;
  return it->second;
}

bool ConceptStore::has_gap(LanguageId language, InterlingualId interlingual) const {
  return gaps_.contains(LexicalGap{language, interlingual});
}

std::span<const InterlingualId> ConceptStore::hypernym_parents(InterlingualId id) const {
  check(id);
  return parents_[id.index()];
}

std::span<const InterlingualId> ConceptStore::hypernym_children(InterlingualId id) const {
  check(id);
  return children_[id.index()];
}

std::span<const ConceptId> ConceptStore::local_children(ConceptId id) const {
  check(id);
  return local_children_[id.index()];
}

std::span<const SenseId> ConceptStore::senses_of_concept(ConceptId id) const {
  check(id);
  return concept_senses_[id.index()];
}

std::vector<LinkedSense> ConceptStore::linked_senses(SenseId id) const {
  check(id);
  std::vector<LinkedSense> out;
  for (const LexicalLink& link : links_by_sense_[id.index()]) {
    bool outgoing = link.source == id;
    SenseId other = outgoing ? link.target : link.source;
    out.push_back(LinkedSense{other, link.kind, outgoing || is_symmetric(link.kind)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

const LanguageConcept& ConceptStore::root_of(ConceptId id) const {
  check(id);
  const LanguageConcept* cur = &concepts_[id.index()];
  for (std::size_t steps = 0; cur->is_local(); ++steps) {
    if (!cur->parent || steps > concepts_.size())
      throw LexError(ErrorCode::unrooted_local, "concept " + concepts_[id.index()].stable_id + " is unrooted");
    cur = &concepts_[cur->parent->index()];
  }
  return *cur;
}

SensesResult ConceptStore::senses_of(InterlingualId concept_id, LanguageId language) const {
  check(concept_id);
  check(language);
  SensesResult result;
  result.gap = has_gap(language, concept_id);
  if (auto lc = concept_for(language, concept_id)) {
    result.concept_id = lc;
    const auto& ids = concept_senses_[lc->index()];
    result.senses.assign(ids.begin(), ids.end());
    std::sort(result.senses.begin(), result.senses.end());
  }
  return result;
}

ConceptId ConceptStore::concept_of(SenseId sense) const {
  check(sense);
  return senses_[sense.index()].concept_id;
}

std::vector<InterlingualId> ConceptStore::gaps_of(LanguageId language) const {
  check(language);
  std::vector<InterlingualId> out;
  auto it = gaps_.lower_bound(LexicalGap{language, InterlingualId{}});
  for (; it != gaps_.end() && it->language == language; ++it) out.push_back(it->interlingual);
  return out;
}

std::vector<InterlingualId> ConceptStore::hypernym_ancestors(InterlingualId concept_id) const {
  check(concept_id);
  std::vector<bool> seen(interlinguals_.size(), false);
  std::deque<InterlingualId> queue{concept_id};
  std::vector<InterlingualId> out;
  while (!queue.empty()) {
    InterlingualId cur = queue.front();
    queue.pop_front();
    for (InterlingualId p : parents_[cur.index()]) {
      if (!seen[p.index()]) {
        seen[p.index()] = true;
        out.push_back(p);
        queue.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LexiconStats ConceptStore::lexicon_stats(LanguageId language) const {
  check(language);
  LexiconStats stats;
  for (const LanguageConcept& c : concepts_) {
    if (c.language != language) continue;
    (c.is_local() ? stats.local_concepts : stats.concepts)++;
  }
  for (const WordSense& s : senses_) {
    if (s.language == language) ++stats.senses;
  }
  stats.gaps = gaps_of(language).size();
  for (const LexicalLink& link : links_) {
    bool src = senses_[link.source.index()].language == language;
    bool tgt = senses_[link.target.index()].language == language;
    if (link.kind == LinkKind::cognate) {
      if (src || tgt) ++stats.cognate_links;
    } else if (src) {
      ++stats.lexical_links;
    }
  }
  return stats;
}

std::vector<SenseId> ConceptStore::find_lemma(LanguageId language, std::string_view lemma) const {
  check(language);
  auto it = senses_by_lemma_.find(std::pair{language, std::string(lemma)});
  if (it == senses_by_lemma_.end()) return {};
  std::vector<SenseId> out = it->second;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lexdb
