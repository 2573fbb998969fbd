#include "lexdb/fixtures.hpp"

#include <map>

namespace lexdb::fixtures {

namespace {

class Builder {
 public:
  explicit Builder(ConceptStore& store) : s_(store) {}

  void language(const std::string& code, const std::string& name, LanguageRole role = LanguageRole::local) {
    s_.add_language(code, name, role);
  }

  void concept_node(const std::string& key, std::vector<std::string> parents = {}) {
    InterlingualId id = s_.add_interlingual_concept(key);
    ids_[key] = id;
    for (const std::string& p : parents) s_.add_semantic_relation(id, ids_.at(p), SemanticKind::hypernym);
  }

  SenseId word(const std::string& lang, const std::string& key, const std::string& lemma,
               std::optional<std::string> gloss = std::nullopt) {
    return s_.lexicalize(ids_.at(key), s_.language_by_code(lang), lemma, PartOfSpeech::noun, std::move(gloss));
  }

  void gap(const std::string& lang, const std::string& key) { s_.mark_gap(ids_.at(key), s_.language_by_code(lang)); }

  void gaps(const std::string& lang, const std::vector<std::string>& keys) {
    for (const std::string& k : keys) gap(lang, k);
  }

  ConceptId concept_in(const std::string& lang, const std::string& key) const {
    return *s_.concept_for(s_.language_by_code(lang), ids_.at(key));
  }

  ConceptStore& store() { return s_; }

 private:
  ConceptStore& s_;
  std::map<std::string, InterlingualId> ids_;
};

void add_rice(Builder& b) {
  b.concept_node("rice");
  b.concept_node("cooked rice", {"rice"});
  b.concept_node("uncooked rice", {"rice"});
  b.concept_node("rice in the husk", {"rice"});

  SenseId rice = b.word("en", "rice", "rice", "grains of the rice plant used as food");
  b.word("en", "rice in the husk", "paddy");
  b.gaps("en", {"cooked rice", "uncooked rice"});

  SenseId riz = b.word("fr", "rice", "riz", "céréale cultivée pour ses grains");

  SenseId riso = b.word("it", "rice", "riso");
  SenseId risone = b.word("it", "rice in the husk", "risone");

  b.gap("sw", "rice");
  b.word("sw", "uncooked rice", "mchele");
  b.word("sw", "cooked rice", "wali");
  b.word("sw", "rice in the husk", "mpunga");

  b.word("ja", "uncooked rice", "米");
  b.word("ja", "cooked rice", "ご飯");
  b.word("ja", "rice in the husk", "籾");

  ConceptStore& s = b.store();
  s.add_local_concept(s.language_by_code("ja"), b.concept_in("ja", "uncooked rice"), "raw brown rice", "玄米");
  s.add_lexical_link(rice, riz, LinkKind::cognate);
  s.add_lexical_link(riz, riso, LinkKind::cognate);
  s.add_lexical_link(rice, riso, LinkKind::cognate);
  s.add_lexical_link(riso, risone, LinkKind::derivation);
}

void add_rice_languages(Builder& b) {
  b.language("en", "English", LanguageRole::trade);
  b.language("fr", "French", LanguageRole::trade);
  b.language("it", "Italian", LanguageRole::trade);
  b.language("sw", "Swahili", LanguageRole::trade);
  b.language("ja", "Japanese", LanguageRole::trade);
}

const std::vector<std::string> kAgeSexed{"elder brother", "younger brother", "elder sister", "younger sister"};

void add_kinship(Builder& b) {
  b.concept_node("relative");
  b.concept_node("sibling", {"relative"});
  b.concept_node("cousin", {"relative"});
  b.concept_node("brother", {"sibling"});
  b.concept_node("sister", {"sibling"});
  b.concept_node("elder sibling", {"sibling"});
  b.concept_node("younger sibling", {"sibling"});
  b.concept_node("elder brother", {"brother", "elder sibling"});
  b.concept_node("younger brother", {"brother", "younger sibling"});
  b.concept_node("elder sister", {"sister", "elder sibling"});
  b.concept_node("younger sister", {"sister", "younger sibling"});

  b.word("en", "relative", "relative");
  b.word("en", "sibling", "sibling");
  b.word("en", "cousin", "cousin");
  b.word("en", "brother", "brother");
  b.word("en", "sister", "sister");
  b.gaps("en", {"elder sibling", "younger sibling"});

  b.word("fr", "relative", "parent");
  b.word("fr", "cousin", "cousin");
  b.word("fr", "brother", "frère");
  b.word("fr", "sister", "sœur");
  b.word("fr", "elder sibling", "aîné");
  b.word("fr", "younger sibling", "cadet");
  b.gap("fr", "sibling");
  b.gaps("fr", kAgeSexed);

  b.word("it", "relative", "parente");
  b.word("it", "cousin", "cugino");
  b.word("it", "brother", "fratello");
  b.word("it", "sister", "sorella");
  b.word("it", "younger sibling", "minore");
  b.gap("it", "sibling");
  b.gaps("it", kAgeSexed);

  b.word("sw", "relative", "jamaa");
  b.word("sw", "sibling", "ndugu");
  b.word("sw", "cousin", "binamu");
  b.word("sw", "brother", "kaka");
  b.word("sw", "sister", "dada");
  b.word("sw", "younger sibling", "mdogo");
  b.gaps("sw", kAgeSexed);

  b.word("ja", "relative", "親戚");
  b.word("ja", "sibling", "兄弟");
  b.word("ja", "cousin", "いとこ");
  b.word("ja", "elder brother", "兄");
  b.word("ja", "younger brother", "弟");
  b.word("ja", "elder sister", "姉");
  b.word("ja", "younger sister", "妹");
  b.gaps("ja", {"brother", "sister"});

  b.word("hu", "relative", "rokon");
  b.word("hu", "sibling", "testvér");
  b.word("hu", "cousin", "unokatestvér");
  b.word("hu", "brother", "fiútestvér");
  b.word("hu", "sister", "lánytestvér");
  b.word("hu", "elder brother", "báty");
  b.word("hu", "younger brother", "öcs");
  b.word("hu", "elder sister", "nővér");
  b.word("hu", "younger sister", "húg");

  b.word("mn", "relative", "хамаатан");
  b.word("mn", "cousin", "үеэл");
  b.word("mn", "elder brother", "ах");
  b.word("mn", "elder sister", "эгч");
  b.word("mn", "younger sibling", "дүү");
  b.gaps("mn", {"sibling", "brother", "sister"});
}

}  // namespace

ConceptStore rice() {
  ConceptStore s;
  Builder b(s);
  add_rice_languages(b);
  add_rice(b);
  return s;
}

ConceptStore rice_and_kinship() {
  ConceptStore s;
  Builder b(s);
  add_rice_languages(b);
  b.language("hu", "Hungarian", LanguageRole::trade);
  b.language("mn", "Mongolian", LanguageRole::trade);
  add_rice(b);
  add_kinship(b);
  return s;
}

ConceptStore alpine() {
  ConceptStore s;
  Builder b(s);
  b.language("de", "German", LanguageRole::trade);
  b.language("it", "Italian", LanguageRole::trade);
  b.language("mhn", "Mòcheno", LanguageRole::local);
  s.set_language_provenance(s.language_by_code("mhn"),
                            R"({"contributors":"local community","license":"CC BY-SA 4.0"})");

  b.concept_node("food");
  b.concept_node("bread", {"food"});
  b.concept_node("dairy product", {"food"});
  b.concept_node("milk", {"dairy product"});
  b.concept_node("cheese", {"dairy product"});
  b.concept_node("butter", {"dairy product"});
  b.concept_node("mountain");
  b.concept_node("alpine pasture", {"mountain"});

  b.word("de", "food", "Essen");
  b.word("de", "bread", "Brot");
  b.word("de", "dairy product", "Milchprodukt");
  b.word("de", "milk", "Milch");
  b.word("de", "cheese", "Käse");
  b.word("de", "butter", "Butter");
  b.word("de", "mountain", "Berg");
  b.word("de", "alpine pasture", "Alm");

  b.word("it", "food", "cibo");
  b.word("it", "bread", "pane");
  b.word("it", "dairy product", "latticino");
  b.word("it", "milk", "latte");
  b.word("it", "cheese", "formaggio");
  b.word("it", "butter", "burro");
  b.word("it", "mountain", "montagna");
  b.word("it", "alpine pasture", "alpeggio");

  b.word("mhn", "milk", "milch");
  b.word("mhn", "cheese", "kas");
  b.word("mhn", "mountain", "perg");
  b.gap("mhn", "dairy product");
  return s;
}

std::vector<DistancePair> kinship_translation_pairs(const ConceptStore& s) {
  auto id = [&](const char* label) {
    for (const InterlingualConcept& c : s.interlingual_concepts()) {
      if (c.label == label) return c.id;
    }
    throw LexError(ErrorCode::unknown_ref, std::string("fixture concept missing: ") + label);
  };
  return {
      {id("elder brother"), id("younger brother")},  // 2
      {id("elder brother"), id("brother")},          // 1
      {id("brother"), id("brother")},                // 0
      {id("elder sister"), id("younger sister")},    // 2
      {id("brother"), id("younger sibling")},        // 2
      {id("sister"), id("sibling")},                 // 1
      {id("cousin"), id("sibling")},                 // 2
      {id("elder brother"), id("younger sister")},   // 4
      {id("younger brother"), id("younger sister")}, // 2
      {id("sibling"), id("sibling")},                // 0
  };
}

std::vector<PerfRecord> translation_perf_records() {
  std::vector<PerfRecord> out;
  for (auto [lang, value] : std::vector<std::pair<const char*, double>>{
           {"ru", 0.34}, {"ja", 0.38}, {"ko", 0.90}, {"hu", 1.06}, {"mn", 1.12}}) {
    out.push_back(PerfRecord{lang, "kinship translation", "GT", value, MetricDirection::lower_better, "en", false});
  }
  return out;
}

std::vector<std::string> fixture_names() { return {"alpine", "rice", "rice_kinship"}; }

ConceptStore by_name(const std::string& name) {
  if (name == "rice") return rice();
  if (name == "rice_kinship") return rice_and_kinship();
  if (name == "alpine") return alpine();
  throw LexError(ErrorCode::unknown_ref, "unknown fixture '" + name + "'");
}

}  // namespace lexdb::fixtures
