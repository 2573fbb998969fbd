// Random generators and independent oracles shared by the unit tests and the
// acceptance run. Oracles read only the public entity tables, never the
// store's internal indexes.
#ifndef LEXDB_TESTS_SUPPORT_HPP
#define LEXDB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lexdb/bias.hpp"
#include "lexdb/concept_store.hpp"
#include "lexdb/exchange.hpp"
#include "lexdb/fixtures.hpp"
#include "lexdb/mapping.hpp"
#include "lexdb/query.hpp"
#include "lexdb/service.hpp"

namespace lexdb::testing {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline const std::vector<std::string>& code_pool() {
  static const std::vector<std::string> pool{"en", "hi", "fr", "ja", "sw", "mn", "hu", "it"};
  return pool;
}

// ---- generators --------------------------------------------------------------

// A hypernym DAG on n nodes: edges only point from a node to lower-numbered
// ones, so acyclicity comes from the construction, not from the store.
inline ConceptStore random_dag(Rng& rng, std::size_t n, double edge_p) {
  ConceptStore s;
  std::vector<InterlingualId> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(s.add_interlingual_concept());
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (chance(rng, edge_p)) s.add_semantic_relation(ids[i], ids[j], SemanticKind::hypernym);
    }
  }
  return s;
}

struct StoreShape {
  std::size_t max_concepts = 60;
  std::size_t max_languages = 5;
  double lexicalize_p = 0.45;
  double gap_p = 0.15;
};

// A store built only through ConceptStore operations.
inline ConceptStore random_store(Rng& rng, const StoreShape& shape = {}) {
  ConceptStore s;
  std::vector<std::string> codes = code_pool();
  std::shuffle(codes.begin(), codes.end(), rng);
  std::size_t n_lang = uniform(rng, 2, std::min(shape.max_languages, codes.size()));
  std::vector<LanguageId> langs;
  for (std::size_t i = 0; i < n_lang; ++i)
    langs.push_back(s.add_language(codes[i], "Language " + codes[i], chance(rng, 0.5) ? LanguageRole::trade
                                                                                      : LanguageRole::local));
  if (chance(rng, 0.3)) s.set_language_provenance(langs[0], R"({"license":"CC BY 4.0"})");
  if (chance(rng, 0.3)) s.set_provenance(R"({"source":"generated"})");

  std::size_t n = uniform(rng, 1, shape.max_concepts);
  std::vector<InterlingualId> ids;
  for (std::size_t i = 0; i < n; ++i)
    ids.push_back(s.add_interlingual_concept(chance(rng, 0.5) ? std::optional("concept " + std::to_string(i))
                                                              : std::nullopt));
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t parents = uniform(rng, 0, 2);
    for (std::size_t k = 0; k < parents; ++k) {
      try {
        s.add_semantic_relation(ids[i], ids[uniform(rng, 0, i - 1)], SemanticKind::hypernym);
      } catch (const LexError&) {
      }
    }
    if (chance(rng, 0.05)) {
      try {
        s.add_semantic_relation(ids[i], ids[uniform(rng, 0, n - 1)], SemanticKind::meronym);
      } catch (const LexError&) {
      }
    }
  }

  const PartOfSpeech kPos[] = {PartOfSpeech::noun, PartOfSpeech::verb, PartOfSpeech::adjective};
  for (LanguageId l : langs) {
    const std::string& code = s.language(l).code;
    for (std::size_t i = 0; i < n; ++i) {
      double r = uniform_real(rng, 0, 1);
      if (r < shape.lexicalize_p) {
        std::string lemma = code + "_w" + std::to_string(uniform(rng, 0, n));  // collisions make homonyms
        auto gloss = chance(rng, 0.3) ? std::optional("gloss " + lemma) : std::nullopt;
        s.lexicalize(ids[i], l, lemma, kPos[uniform(rng, 0, 2)], gloss);
        if (chance(rng, 0.2)) {
          try {
            s.lexicalize(ids[i], l, lemma + "_syn", PartOfSpeech::noun);
          } catch (const LexError&) {
          }
        }
      } else if (r < shape.lexicalize_p + shape.gap_p) {
        s.mark_gap(ids[i], l);
      }
    }
    std::size_t locals = uniform(rng, 0, 4);
    for (std::size_t k = 0; k < locals; ++k) {
      std::vector<ConceptId> own;
      for (const LanguageConcept& c : s.language_concepts()) {
        if (c.language == l) own.push_back(c.id);
      }
      if (own.empty()) break;
      ConceptId parent = own[uniform(rng, 0, own.size() - 1)];
      s.add_local_concept(l, parent, chance(rng, 0.5) ? std::optional("local gloss") : std::nullopt,
                          chance(rng, 0.8) ? std::optional(code + "_local" + std::to_string(k)) : std::nullopt);
    }
  }

  const LinkKind kKinds[] = {LinkKind::cognate, LinkKind::derivation, LinkKind::antonym, LinkKind::metonym};
  if (s.senses().size() >= 2) {
    std::size_t links = uniform(rng, 0, s.senses().size());
    for (std::size_t k = 0; k < links; ++k) {
      SenseId a = s.senses()[uniform(rng, 0, s.senses().size() - 1)].id;
      SenseId b = s.senses()[uniform(rng, 0, s.senses().size() - 1)].id;
      try {
        s.add_lexical_link(a, b, kKinds[uniform(rng, 0, 3)]);
      } catch (const LexError&) {
      }
    }
  }
  return s;
}

// ---- oracles -----------------------------------------------------------------

inline bool has_hypernym_cycle(const ConceptStore& s) {
  std::size_t n = s.interlingual_concepts().size();
  std::vector<std::vector<std::size_t>> up(n);
  for (const SemanticRelation& r : s.semantic_relations()) {
    if (r.kind == SemanticKind::hypernym) up[r.source.index()].push_back(r.target.index());
  }
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < up[node].size()) {
        std::size_t m = up[node][next++];
        if (color[m] == 1) return true;
        if (color[m] == 0) {
          color[m] = 1;
          stack.push_back({m, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }
  return false;
}

inline bool has_gap_sense_overlap(const ConceptStore& s) {
  for (const LexicalGap& g : s.gaps()) {
    for (const LanguageConcept& c : s.language_concepts()) {
      if (c.language == g.language && c.interlingual == g.interlingual) return true;
    }
  }
  return false;
}

inline bool has_unrooted_local(const ConceptStore& s) {
  std::size_t bound = s.language_concepts().size() + 1;
  for (const LanguageConcept& c : s.language_concepts()) {
    const LanguageConcept* cur = &c;
    std::size_t steps = 0;
    while (cur->is_local()) {
      if (!cur->parent || ++steps > bound) return true;
      const LanguageConcept& p = s.language_concepts()[cur->parent->index()];
      if (p.language != c.language) return true;
      cur = &p;
    }
  }
  return false;
}

inline bool has_same_language_cognate(const ConceptStore& s) {
  for (const LexicalLink& l : s.lexical_links()) {
    if (l.kind == LinkKind::cognate &&
        s.senses()[l.source.index()].language == s.senses()[l.target.index()].language)
      return true;
  }
  return false;
}

constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max() / 4;

// All-pairs shortest upward hypernym path lengths (Floyd-Warshall).
inline std::vector<std::vector<std::size_t>> upward_distances(const ConceptStore& s) {
  std::size_t n = s.interlingual_concepts().size();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, kUnreachable));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const SemanticRelation& r : s.semantic_relations()) {
    if (r.kind == SemanticKind::hypernym) d[r.source.index()][r.target.index()] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Minimum over every common ancestor; nullopt when there is none.
inline std::optional<std::size_t> brute_force_lcs(const std::vector<std::vector<std::size_t>>& d, std::size_t a,
                                                  std::size_t b) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[a][k] >= kUnreachable || d[b][k] >= kUnreachable) continue;
    std::size_t total = d[a][k] + d[b][k];
    if (!best || total < *best) best = total;
  }
  return best;
}

inline double two_pass_stddev(const std::vector<double>& v) {
  double sum = 0;
  for (double x : v) sum += x;
  double mean = sum / static_cast<double>(v.size());
  double sq = 0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size() - 1));
}

// Probability that two speakers drawn with replacement share a language,
// counted over every ordered pair of persons.
inline double person_pair_same_language(const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> person;
  for (std::size_t g = 0; g < counts.size(); ++g) person.insert(person.end(), counts[g], g);
  std::size_t same = 0;
  for (std::size_t a : person)
    for (std::size_t b : person) same += a == b;
  double total = static_cast<double>(person.size());
  return static_cast<double>(same) / (total * total);
}

inline std::vector<PerfRecord> perf_vector(const std::vector<double>& values, const std::string& system = "sys") {
  std::vector<PerfRecord> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out.push_back(PerfRecord{"l" + std::string(1, static_cast<char>('a' + i % 26)) + std::to_string(i), "task",
                             system, values[i], MetricDirection::higher_better, std::nullopt, false});
  return out;
}

// Everything the read surface reports, keyed by stable ids only and
// independent of insertion order.
inline std::string read_surface(const ConceptStore& s) {
  std::vector<std::string> lines;
  auto sid = [&](InterlingualId x) { return s.interlingual(x).stable_id; };
  auto joined = [](std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    std::string out;
    for (const std::string& i : items) out += ' ' + i;
    return out;
  };
  auto ids = [&](const std::vector<InterlingualId>& xs) {
    std::vector<std::string> out;
    for (InterlingualId x : xs) out.push_back(sid(x));
    return joined(out);
  };
  lines.push_back("provenance " + s.provenance());
  for (const Language& l : s.languages())
    lines.push_back("language " + l.code + '|' + l.name + '|' + std::string(to_string(l.role)) + '|' + l.provenance);
  for (const SemanticRelation& r : s.semantic_relations())
    lines.push_back("relation " + sid(r.source) + ">" + sid(r.target) + ":" + std::string(to_string(r.kind)));
  for (const InterlingualConcept& c : s.interlingual_concepts()) {
    lines.push_back("concept " + c.stable_id + '|' + c.label.value_or("<none>") + " ancestors" +
                    ids(std::get<std::vector<InterlingualId>>(query(s, HypernymAncestors{c.id}))));
  }
  auto concept_line = [&](ConceptId id) {
    const LanguageConcept& c = s.language_concept(id);
    std::vector<std::string> senses;
    for (SenseId sense : s.senses_of_concept(id)) senses.push_back(s.sense(sense).stable_id + '=' + s.sense(sense).lemma);
    return c.stable_id + '|' + std::string(to_string(c.pos)) + '|' + c.gloss.value_or("<none>") + '|' +
           (c.parent ? s.language_concept(*c.parent).stable_id : "-") + " senses" + joined(senses);
  };
  for (const Language& l : s.languages()) {
    for (const InterlingualConcept& c : s.interlingual_concepts()) {
      auto r = std::get<SensesResult>(query(s, SensesOf{c.id, l.id}));
      std::string line = "senses_of " + c.stable_id + ' ' + l.code + (r.gap ? " gap" : "");
      if (r.concept_id) line += ' ' + concept_line(*r.concept_id);
      lines.push_back(line);
    }
    lines.push_back("gaps_of " + l.code + ids(std::get<std::vector<InterlingualId>>(query(s, GapsOf{l.id}))));
    LexiconStats st = std::get<LexiconStats>(query(s, LexiconStatsOf{l.id}));
    std::ostringstream stats;
    stats << "stats " << l.code << ' ' << st.concepts << ' ' << st.local_concepts << ' ' << st.senses << ' '
          << st.gaps << ' ' << st.cognate_links << ' ' << st.lexical_links;
    lines.push_back(stats.str());
  }
  for (const LanguageConcept& c : s.language_concepts()) {
    if (c.is_local()) lines.push_back("local " + s.language(c.language).code + ' ' + concept_line(c.id));
  }
  for (const WordSense& w : s.senses()) {
    std::vector<std::string> hits, links;
    auto found = std::get<std::vector<SenseId>>(query(s, FindLemma{w.language, w.lemma}));
    for (SenseId hit : found) hits.push_back(s.sense(hit).stable_id);
    for (const LinkedSense& ls : s.linked_senses(w.id))
      links.push_back(std::string(to_string(ls.kind)) + (ls.outgoing ? ">" : "<") + s.sense(ls.sense).stable_id);
    lines.push_back("sense " + w.stable_id + " concept_of " +
                    s.language_concept(std::get<ConceptId>(query(s, ConceptOf{w.id}))).stable_id + " find_lemma" +
                    joined(hits) + " links" + joined(links));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const std::string& l : lines) out += l + '\n';
  return out;
}

// ---- mutation fuzzing --------------------------------------------------------

struct FuzzReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;
};

struct EntityCounts {
  std::size_t languages, interlinguals, concepts, senses, relations, gaps, links;
  friend bool operator==(const EntityCounts&, const EntityCounts&) = default;
};

inline EntityCounts counts_of(const ConceptStore& s) {
  return {s.languages().size(), s.interlingual_concepts().size(), s.language_concepts().size(), s.senses().size(),
          s.semantic_relations().size(), s.gaps().size(), s.lexical_links().size()};
}

inline void check_invariants(const ConceptStore& s, std::size_t op, FuzzReport& report) {
  ++report.checks;
  std::string at = " after op " + std::to_string(op);
  if (has_hypernym_cycle(s)) report.violations.push_back("hypernym cycle" + at);
  if (has_gap_sense_overlap(s)) report.violations.push_back("gap and sense coexist" + at);
  if (has_unrooted_local(s)) report.violations.push_back("unrooted local concept" + at);
  if (has_same_language_cognate(s)) report.violations.push_back("same-language cognate" + at);
}

// Random mutations, valid and invalid alike, with the invariant oracles run
// every `check_every` operations. Rejected operations must leave the store
// untouched.
inline FuzzReport fuzz_store(Rng& rng, std::size_t ops, std::size_t check_every) {
  ConceptStore s;
  FuzzReport report;
  // Ids one past the end are deliberately invalid.
  auto pick = [&](std::size_t size) { return static_cast<std::uint32_t>(uniform(rng, 1, size + 1)); };
  const LinkKind kKinds[] = {LinkKind::cognate, LinkKind::derivation, LinkKind::antonym, LinkKind::metonym};
  for (std::size_t op = 1; op <= ops; ++op) {
    EntityCounts before = counts_of(s);
    try {
      switch (uniform(rng, 0, 9)) {
        case 0: {
          std::string code = code_pool()[uniform(rng, 0, code_pool().size() - 1)];
          if (chance(rng, 0.3)) code += "-x" + std::to_string(uniform(rng, 0, 9));
          if (chance(rng, 0.05)) code = "Bad";
          s.add_language(code, code);
          break;
        }
        case 1:
          s.add_interlingual_concept();
          break;
        case 2:
        case 3:
          s.add_semantic_relation(InterlingualId{pick(s.interlingual_concepts().size())},
                                  InterlingualId{pick(s.interlingual_concepts().size())},
                                  chance(rng, 0.85) ? SemanticKind::hypernym : SemanticKind::meronym);
          break;
        case 4:
        case 5:
          s.lexicalize(InterlingualId{pick(s.interlingual_concepts().size())}, LanguageId{pick(s.languages().size())},
                       "w" + std::to_string(uniform(rng, 0, 50)), PartOfSpeech::noun);
          break;
        case 6:
          s.mark_gap(InterlingualId{pick(s.interlingual_concepts().size())}, LanguageId{pick(s.languages().size())});
          break;
        case 7:
          s.add_local_concept(LanguageId{pick(s.languages().size())}, ConceptId{pick(s.language_concepts().size())},
                              std::nullopt, "local" + std::to_string(op));
          break;
        default:
          s.add_lexical_link(SenseId{pick(s.senses().size())}, SenseId{pick(s.senses().size())},
                             kKinds[uniform(rng, 0, 3)]);
          break;
      }
      ++report.accepted;
    } catch (const LexError&) {
      ++report.rejected;
      if (!(counts_of(s) == before)) report.violations.push_back("rejected op " + std::to_string(op) + " mutated");
    }
    if (op % check_every == 0) check_invariants(s, op, report);
  }
  return report;
}

// ---- scripted service session ------------------------------------------------

struct SessionReport {
  std::size_t events = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t checked_reads = 0;
  std::vector<std::string> read_your_writes_violations;
  bool seq_strictly_increasing = true;
  std::string live_export;
  std::string replayed_export;
};

class ScriptedClient {
 public:
  ScriptedClient(LexiconService& service, std::string name, std::uint64_t seed)
      : service_(service), name_(std::move(name)), rng_(seed) {}

  // Issues one edit and checks that a following read reflects it.
  void step(SessionReport& report, std::mutex& report_mutex) {
    auto s = service_.snapshot();
    nlohmann::json args;
    std::string action = pick(*s, args);
    ApiResponse r = service_.apply_edit({{"contributor", name_}, {"action", action}, {"args", args}});
    std::string violation;
    std::size_t checks = 0;
    if (r.status == 200) {
      ++checks;
      violation = verify(action, args, r.body["created"]);
    }
    std::lock_guard lock(report_mutex);
    report.checked_reads += checks;
    if (!violation.empty()) report.read_your_writes_violations.push_back(name_ + ": " + violation);
  }

 private:
  std::string fresh_lemma() { return name_ + "_lemma" + std::to_string(counter_++); }

  std::string new_language(nlohmann::json& args) {
    std::string code;
    for (std::size_t i = 0; i < 4; ++i) code += static_cast<char>('a' + uniform(rng_, 0, 25));
    args = {{"code", code}, {"name", "Language " + code}};
    return "add_language";
  }

  std::string pick(const ConceptStore& s, nlohmann::json& args) {
    auto any_concept = [&] { return s.interlingual_concepts()[uniform(rng_, 0, s.interlingual_concepts().size() - 1)]; };
    auto any_language = [&] { return s.languages()[uniform(rng_, 0, s.languages().size() - 1)]; };
    std::size_t roll = uniform(rng_, 0, 99);
    if (s.languages().size() < 3) return new_language(args);
    if (roll < 5 || s.interlingual_concepts().empty() || (roll >= 95 && own_concepts_.empty())) {
      args = {{"label", name_ + " concept " + std::to_string(counter_++)}};
      return "add_interlingual_concept";
    }
    if (roll < 40) {
      args = {{"concept", any_concept().stable_id}, {"language", any_language().code}, {"lemma", fresh_lemma()}};
      return "lexicalize";
    }
    if (roll < 55) {
      args = {{"concept", any_concept().stable_id}, {"language", any_language().code}};
      return "mark_gap";
    }
    if (roll < 65) {
      args = {{"source", any_concept().stable_id}, {"target", any_concept().stable_id}};
      return "add_semantic_relation";
    }
    if (roll < 78 && !s.language_concepts().empty()) {
      const LanguageConcept& parent = s.language_concepts()[uniform(rng_, 0, s.language_concepts().size() - 1)];
      args = {{"language", s.language(parent.language).code}, {"parent", parent.stable_id}, {"lemma", fresh_lemma()}};
      return "add_local_concept";
    }
    if (roll < 92 && s.senses().size() >= 2) {
      const char* kinds[] = {"cognate", "derivation", "antonym", "metonym"};
      args = {{"source", s.senses()[uniform(rng_, 0, s.senses().size() - 1)].stable_id},
              {"target", s.senses()[uniform(rng_, 0, s.senses().size() - 1)].stable_id},
              {"kind", kinds[uniform(rng_, 0, 3)]}};
      return "add_lexical_link";
    }
    if (roll < 95) return new_language(args);
    // Only relabel own concepts so no other client can overwrite the label
    // before it is read back.
    args = {{"concept", own_concepts_[uniform(rng_, 0, own_concepts_.size() - 1)]},
            {"label", name_ + " relabel " + std::to_string(counter_++)}};
    return "set_label";
  }

  nlohmann::json get(const std::string& path, std::map<std::string, std::string> params = {}) {
    ApiRequest req;
    req.path = path;
    req.params = std::move(params);
    ApiResponse r = service_.handle(req);
    if (r.status != 200) return nullptr;
    return nlohmann::json::parse(r.body.dump());
  }

  std::string verify(const std::string& action, const nlohmann::json& args, const nlohmann::json& created) {
    if (action == "add_interlingual_concept") {
      own_concepts_.push_back(created["concept"].get<std::string>());
      auto c = get("/concepts/" + created["concept"].get<std::string>());
      return c.is_null() ? "new concept not browsable" : "";
    }
    if (action == "lexicalize" || action == "add_local_concept") {
      auto hits = get("/search", {{"lemma", args["lemma"].get<std::string>()}, {"language", args["language"].get<std::string>()}});
      if (hits.is_null()) return "search failed after " + action;
      for (const auto& item : hits["items"]) {
        if (item["sense"] == created["sense"]) return "";
      }
      return "sense " + created["sense"].get<std::string>() + " not found after " + action;
    }
    if (action == "mark_gap") {
      auto c = get("/concepts/" + args["concept"].get<std::string>(), {{"languages", args["language"].get<std::string>()}});
      if (c.is_null() || c["lexicalizations"][0]["status"] != "gap") return "gap badge missing after mark_gap";
      return "";
    }
    if (action == "add_semantic_relation") {
      auto c = get("/concepts/" + args["source"].get<std::string>());
      if (c.is_null()) return "concept vanished";
      for (const auto& p : c["parents"]) {
        if (p["id"] == args["target"]) return "";
      }
      return "new parent not listed";
    }
    if (action == "add_language") {
      auto ls = get("/languages", {{"page_size", "1000"}});
      if (ls.is_null()) return "language listing failed";
      for (const auto& l : ls["items"]) {
        if (l["code"] == args["code"]) return "";
      }
      return "new language not listed";
    }
    if (action == "set_label") {
      auto c = get("/concepts/" + args["concept"].get<std::string>());
      return !c.is_null() && c["label"] == args["label"] ? "" : "label not updated";
    }
    if (action == "add_lexical_link") {
      auto s = service_.snapshot();
      SenseId a = *s->find_sense(args["source"].get<std::string>());
      SenseId b = *s->find_sense(args["target"].get<std::string>());
      for (const LinkedSense& l : s->linked_senses(a)) {
        if (l.sense == b) return "";
      }
      return "link not visible";
    }
    return "";
  }

  LexiconService& service_;
  std::string name_;
  Rng rng_;
  std::size_t counter_ = 0;
  std::vector<std::string> own_concepts_;
};

// Runs `total` edits from `clients` concurrent clients against an empty
// store, then replays the log onto another empty store.
inline SessionReport run_scripted_session(std::size_t total, std::size_t clients, std::uint64_t seed) {
  ConceptStore base;
  std::atomic<std::uint64_t> tick{0};
  LexiconService service(base, [&tick] {
    std::uint64_t t = tick++;
    char buf[32];
    std::snprintf(buf, sizeof buf, "2024-01-01T%02u:%02u:%02uZ", static_cast<unsigned>(t / 3600 % 24),
                  static_cast<unsigned>(t / 60 % 60), static_cast<unsigned>(t % 60));
    return std::string(buf);
  });

  SessionReport report;
  std::mutex report_mutex;
  std::atomic<std::size_t> issued{0};
  std::vector<std::thread> threads;
  for (std::size_t c = 0; c < clients; ++c) {
    threads.emplace_back([&, c] {
      ScriptedClient client(service, "contributor" + std::to_string(c), seed * 1000 + c);
      while (issued.fetch_add(1) < total) client.step(report, report_mutex);
    });
  }
  for (auto& t : threads) t.join();

  std::vector<EditEvent> log = service.changelog(0);
  report.events = log.size();
  for (std::size_t i = 0; i < log.size(); ++i) {
    if (log[i].ok()) {
      ++report.successes;
    } else {
      ++report.failures;
    }
    if (i > 0 && log[i].seq <= log[i - 1].seq) report.seq_strictly_increasing = false;
  }
  report.live_export = serialize_document(export_document(*service.snapshot()));
  report.replayed_export = serialize_document(export_document(replay(base, log)));
  return report;
}

}  // namespace lexdb::testing

#endif
