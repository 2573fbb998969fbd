// One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "lexdb/mapping.hpp"
#include "support.hpp"

using namespace lexdb;
using namespace lexdb::testing;

namespace {

using Seconds = std::chrono::duration<double>;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

template <class F>
double timed(F&& f) {
  auto start = std::chrono::steady_clock::now();
  f();
  return Seconds(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome bias_reproduction() {
  Outcome o;
  auto records = fixtures::translation_perf_records();
  BiasReport r;
  double best = 1e9;
  for (int i = 0; i < 5; ++i) best = std::min(best, timed([&] { r = bias(records); }));
  o.require(std::fabs(r.bias - 0.374) <= 0.001, fmt("bias %.6f", r.bias));
  o.require(std::fabs(r.mean - 0.76) <= 0.001, fmt("mean %.6f", r.mean));
  o.require(best < 1e-3, fmt("runtime %.3f ms", best * 1e3));
  if (o.pass) o.detail = fmt("bias=%.4f mean=%.4f runtime=%.1f us", r.bias, r.mean, best * 1e6);
  return o;
}

Outcome bias_properties() {
  Outcome o;
  Rng rng(20240501);
  double worst_oracle = 0, worst_translation = 0, worst_scaling = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> v(uniform(rng, 2, 20));
    for (double& x : v) x = uniform_real(rng, 0.0, 1.5);
    double b = bias(perf_vector(v)).bias;
    worst_oracle = std::max(worst_oracle, std::fabs(b - two_pass_stddev(v)));

    double c = uniform_real(rng, 0.0, 5.0);
    std::vector<double> shifted = v;
    for (double& x : shifted) x += c;
    worst_translation = std::max(worst_translation, std::fabs(bias(perf_vector(shifted)).bias - b));

    // Negative factors are paired with a shift that keeps values >= 0.
    double k = uniform_real(rng, -10.0, 10.0);
    std::vector<double> scaled = v;
    for (double& x : scaled) x = k * x + (k < 0 ? -k * 1.5 : 0.0);
    worst_scaling = std::max(worst_scaling, std::fabs(bias(perf_vector(scaled)).bias - std::fabs(k) * b));

    std::vector<double> constant(v.size(), v.front());
    double cb = bias(perf_vector(constant)).bias;
    o.require(cb == 0.0, fmt("constant vector of %zu gave %.3g", constant.size(), cb));
  }
  o.require(worst_oracle <= 1e-12, fmt("oracle error %.3g", worst_oracle));
  o.require(worst_translation <= 1e-9, fmt("translation error %.3g", worst_translation));
  o.require(worst_scaling <= 1e-9, fmt("scaling error %.3g", worst_scaling));
  if (o.pass)
    o.detail = fmt("max errors: oracle %.2g, translation %.2g, scaling %.2g", worst_oracle, worst_translation,
                   worst_scaling);
  return o;
}

Outcome capability_ordering() {
  Outcome o;
  double omw = 0, babelnet = 0, ukc = 0;
  bool pivot_is_max = true;
  std::size_t gap_count = 0, language_count = 0;
  double seconds = timed([&] {
    ConceptStore s = fixtures::rice_and_kinship();
    gap_count = s.gaps().size();
    language_count = s.languages().size();
    std::vector<LanguageId> langs;
    for (const Language& l : s.languages()) langs.push_back(l.id);
    MappingSet gold = derive_gold(s, langs, {true});
    auto bias_under = [&](const ModelCapability& cap, CoverageReport* keep = nullptr) {
      CoverageReport r = coverage(apply_capability(gold, cap, s), gold);
      if (keep) *keep = r;
      return coverage_bias(r, s, cap.name).bias;
    };
    CoverageReport pivot_report;
    omw = bias_under(*capability_preset("omw"), &pivot_report);
    babelnet = bias_under(*capability_preset("babelnet"));
    ukc = bias_under(ModelCapability::full());
    LanguageId en = s.language_by_code("en");
    for (const auto& [lang, cov] : pivot_report.per_language) {
      if (lang != en && cov.ratio >= pivot_report.per_language.at(en).ratio) pivot_is_max = false;
    }
  });
  o.require(language_count >= 5 && gap_count >= 10, fmt("fixture has %zu languages, %zu gaps", language_count, gap_count));
  o.require(omw > babelnet, fmt("b(language pivot)=%.4f not above b(concept pivot, no gaps)=%.4f", omw, babelnet));
  o.require(babelnet > ukc, fmt("b(concept pivot, no gaps)=%.4f not above b(full)=%.4f", babelnet, ukc));
  o.require(pivot_is_max, "pivot language is not the per-language maximum");
  o.require(seconds < 1.0, fmt("runtime %.3f s", seconds));
  if (o.pass) o.detail = fmt("omw=%.4f > babelnet=%.4f > ukc=%.4f, en max, %.0f ms", omw, babelnet, ukc, seconds * 1e3);
  return o;
}

Outcome expressivity_monotonicity() {
  Outcome o;
  Rng rng(777);
  std::size_t restricted_checked = 0;
  for (int i = 0; i < 100 && o.pass; ++i) {
    ConceptStore s = random_store(rng, StoreShape{200, 6, 0.45, 0.15});
    std::vector<LanguageId> langs;
    for (const Language& l : s.languages()) langs.push_back(l.id);
    MappingSet gold = derive_gold(s, langs, {true});
    MappingSet full = apply_capability(gold, ModelCapability::full(), s);
    CoverageReport full_cov = coverage(full, gold);
    o.require(full_cov.overall == 1.0, fmt("store %d: full coverage %.6f", i, full_cov.overall));

    std::vector<std::optional<std::string>> pivots{std::nullopt};
    for (const Language& l : s.languages()) pivots.push_back(l.code);
    for (const auto& pivot : pivots) {
      for (int flags = 0; flags < 8; ++flags) {
        ModelCapability cap{"restricted", pivot, bool(flags & 1), bool(flags & 2), bool(flags & 4)};
        for (const MappingRelation& r : apply_capability(gold, cap, s).relations()) {
          if (!full.contains(r)) {
            o.require(false, fmt("store %d: restricted relation outside the full set", i));
            break;
          }
        }
        ++restricted_checked;
      }
    }
  }
  if (o.pass) o.detail = fmt("100 stores, %zu restricted capabilities checked", restricted_checked);
  return o;
}

Outcome lcs_oracle() {
  Outcome o;
  Rng rng(4242);
  std::size_t pairs = 0;
  double seconds = timed([&] {
    for (int round = 0; round < 200 && o.pass; ++round) {
      ConceptStore s = random_dag(rng, uniform(rng, 1, 50), uniform_real(rng, 0.02, 0.3));
      auto d = upward_distances(s);
      std::size_t n = s.interlingual_concepts().size();
      for (std::size_t a = 0; a < n; ++a) {
        InterlingualId ia{static_cast<std::uint32_t>(a + 1)};
        o.require(lcs_distance(ia, ia, s) == 0, fmt("dag %d: identity distance nonzero", round));
        for (std::size_t b = 0; b < n; ++b) {
          InterlingualId ib{static_cast<std::uint32_t>(b + 1)};
          auto expected = brute_force_lcs(d, a, b);
          std::optional<std::size_t> ab, ba;
          try {
            ab = lcs_distance(ia, ib, s);
          } catch (const LexError&) {
          }
          try {
            ba = lcs_distance(ib, ia, s);
          } catch (const LexError&) {
          }
          o.require(ab == expected, fmt("dag %d: lcs(%zu,%zu) disagrees with brute force", round, a, b));
          o.require(ab == ba, fmt("dag %d: lcs(%zu,%zu) not symmetric", round, a, b));
          ++pairs;
        }
      }
    }
  });
  o.require(seconds < 10.0, fmt("runtime %.2f s", seconds));
  if (o.pass) o.detail = fmt("%zu ordered pairs over 200 DAGs in %.2f s", pairs, seconds);
  return o;
}

Outcome greenberg_index() {
  Outcome o;
  for (int k = 2; k <= 10; ++k) {
    PopulationShares p;
    for (int g = 0; g < k; ++g) p.shares.push_back({"g" + std::to_string(g), 1.0 / k});
    double d = greenberg(p).diversity;
    o.require(d == 1.0 - 1.0 / k, fmt("k=%d: diversity %.17g, expected %.17g", k, d, 1.0 - 1.0 / k));
  }
  Rng rng(99);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::size_t> counts(uniform(rng, 1, 8));
    std::size_t total = 0;
    for (auto& c : counts) total += c = uniform(rng, 1, 40);
    PopulationShares p;
    for (std::size_t g = 0; g < counts.size(); ++g)
      p.shares.push_back({"g" + std::to_string(g), static_cast<double>(counts[g]) / static_cast<double>(total)});
    worst = std::max(worst, std::fabs(greenberg(p).same_language - person_pair_same_language(counts)));
  }
  o.require(worst <= 1e-12, fmt("pairwise oracle error %.3g", worst));
  if (o.pass) o.detail = fmt("exact for k=2..10, pairwise oracle max error %.2g", worst);
  return o;
}

Outcome store_invariants() {
  Outcome o;
  Rng rng(31337);
  FuzzReport r = fuzz_store(rng, 10000, 100);
  o.require(r.checks == 100, fmt("%zu invariant checks", r.checks));
  o.require(r.violations.empty(), r.violations.empty() ? "" : r.violations.front());
  if (o.pass) o.detail = fmt("10000 ops (%zu accepted, %zu rejected), %zu checks", r.accepted, r.rejected, r.checks);
  return o;
}

Outcome round_trip() {
  Outcome o;
  Rng rng(555);
  for (int i = 0; i < 50 && o.pass; ++i) {
    ConceptStore s = random_store(rng, StoreShape{120, 6, 0.45, 0.15});
    std::string text = serialize_document(export_document(s));
    ConceptStore back = import_document(parse_document(text));
    o.require(read_surface(back) == read_surface(s), fmt("store %d: read surface differs", i));
    o.require(serialize_document(export_document(back)) == text, fmt("store %d: re-export differs", i));
  }
  if (o.pass) o.detail = "50 stores, identical read surface and byte-identical re-export";
  return o;
}

Outcome service_determinism() {
  Outcome o;
  SessionReport r = run_scripted_session(500, 4, 2025);
  o.require(r.events == 500, fmt("%zu events logged", r.events));
  o.require(r.seq_strictly_increasing, "sequence numbers not strictly increasing");
  o.require(r.live_export == r.replayed_export, "replayed export differs from the live store");
  o.require(r.read_your_writes_violations.empty(),
            r.read_your_writes_violations.empty() ? "" : r.read_your_writes_violations.front());
  if (o.pass)
    o.detail = fmt("500 events (%zu ok, %zu rejected), %zu reads checked, replay byte-identical", r.successes,
                   r.failures, r.checked_reads);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"bias reproduction", bias_reproduction},
      {"bias properties", bias_properties},
      {"capability ordering", capability_ordering},
      {"expressivity monotonicity", expressivity_monotonicity},
      {"lcs oracle equivalence", lcs_oracle},
      {"greenberg diversity", greenberg_index},
      {"store invariants", store_invariants},
      {"round trip", round_trip},
      {"service determinism", service_determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
