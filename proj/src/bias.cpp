#include "lexdb/bias.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace lexdb {

std::string_view to_string(MetricDirection direction) {
  return direction == MetricDirection::higher_better ? "higher_better" : "lower_better";
}

std::optional<MetricDirection> parse_metric_direction(std::string_view text) {
  if (text == "higher_better") return MetricDirection::higher_better;
  if (text == "lower_better") return MetricDirection::lower_better;
  return std::nullopt;
}

namespace {

void check_record(const PerfRecord& r) {
  if (!std::isfinite(r.value) || r.value < 0.0)
    throw LexError(ErrorCode::invalid_record, "performance value for '" + r.language + "' must be finite and >= 0");
  if (r.bounded && r.value > 1.0)
    throw LexError(ErrorCode::invalid_record, "bounded performance value for '" + r.language + "' exceeds 1");
  if (r.language.empty()) throw LexError(ErrorCode::invalid_record, "performance record without a language");
}

}  // namespace

BiasReport bias(std::span<const PerfRecord> records) {
  if (records.size() < 2)
    throw LexError(ErrorCode::too_few_languages, "bias needs at least two languages, got " +
                                                     std::to_string(records.size()));
  const PerfRecord& first = records.front();
  std::set<std::string> seen;
  for (const PerfRecord& r : records) {
    check_record(r);
    if (r.task != first.task || r.system != first.system || r.direction != first.direction)
      throw LexError(ErrorCode::mixed_tasks, "records mix tasks, systems or metric directions");
    if (!seen.insert(r.language).second)
      throw LexError(ErrorCode::duplicate_language, "more than one record for '" + r.language + "'");
  }

  // Welford's update: a constant series never moves the mean, so M2 stays 0.
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (const PerfRecord& r : records) {
    ++k;
    double delta = r.value - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (r.value - mean);
  }

  BiasReport report;
  report.n = records.size();
  report.mean = mean;
  report.bias = std::sqrt(std::max(0.0, m2) / static_cast<double>(report.n - 1));
  report.task = first.task;
  report.system = first.system;
  report.direction = first.direction;
  report.per_language.assign(records.begin(), records.end());
  for (const PerfRecord& r : records) report.languages.push_back(r.language);
  return report;
}

std::vector<std::vector<PerfRecord>> group_by_task(std::span<const PerfRecord> records) {
  std::vector<std::vector<PerfRecord>> groups;
  for (const PerfRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.front().task == r.task && g.front().system == r.system;
    });
    if (it == groups.end()) {
      groups.push_back({r});
    } else {
      it->push_back(r);
    }
  }
  return groups;
}

GreenbergIndex greenberg(const PopulationShares& population) {
  if (population.shares.empty()) throw LexError(ErrorCode::invalid_shares, "no population groups");
  long double total = 0.0L;
  long double same = 0.0L;
  for (const GroupShare& g : population.shares) {
    if (!std::isfinite(g.share) || g.share < 0.0 || g.share > 1.0)
      throw LexError(ErrorCode::invalid_shares, "share of '" + g.group + "' outside [0, 1]");
    total += g.share;
    same += static_cast<long double>(g.share) * g.share;
  }
  if (std::fabs(static_cast<double>(total) - 1.0) > 1e-9)
    throw LexError(ErrorCode::invalid_shares, "shares sum to " + std::to_string(static_cast<double>(total)));
  GreenbergIndex out;
  out.same_language = std::clamp(static_cast<double>(same), 0.0, 1.0);
  out.diversity = 1.0 - out.same_language;
  return out;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Shortest hypernym path length from `start` to every ancestor.
std::vector<std::size_t> upward_distances(InterlingualId start, const ConceptStore& store) {
  std::vector<std::size_t> dist(store.interlingual_concepts().size(), kUnreached);
  dist[start.index()] = 0;
  std::deque<InterlingualId> queue{start};
  while (!queue.empty()) {
    InterlingualId cur = queue.front();
    queue.pop_front();
    for (InterlingualId p : store.hypernym_parents(cur)) {
      if (dist[p.index()] == kUnreached) {
        dist[p.index()] = dist[cur.index()] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

}  // namespace

std::size_t lcs_distance(InterlingualId a, InterlingualId b, const ConceptStore& store) {
  store.interlingual(a);
  store.interlingual(b);
  if (a == b) return 0;
  auto da = upward_distances(a, store);
  auto db = upward_distances(b, store);
  std::size_t best = kUnreached;
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (da[i] != kUnreached && db[i] != kUnreached) best = std::min(best, da[i] + db[i]);
  }
  if (best == kUnreached)
    throw LexError(ErrorCode::no_common_subsumer, store.interlingual(a).stable_id + " and " +
                                                      store.interlingual(b).stable_id + " share no ancestor");
  return best;
}

double avg_semantic_distance(std::span<const DistancePair> pairs, const ConceptStore& store) {
  if (pairs.empty()) throw LexError(ErrorCode::empty_input, "no distance pairs");
  double weighted = 0.0;
  double total_weight = 0.0;
  for (const DistancePair& p : pairs) {
    if (p.weight < 1) throw LexError(ErrorCode::invalid_record, "distance pair weight must be >= 1");
    weighted += static_cast<double>(p.weight) * static_cast<double>(lcs_distance(p.predicted, p.gold, store));
    total_weight += p.weight;
  }
  return weighted / total_weight;
}

}  // namespace lexdb
