#ifndef LEXDB_BIAS_HPP
#define LEXDB_BIAS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexdb/concept_store.hpp"

namespace lexdb {

enum class MetricDirection { higher_better, lower_better };

std::string_view to_string(MetricDirection direction);
std::optional<MetricDirection> parse_metric_direction(std::string_view text);

// One measurement of system `system` performing task `task` on inputs in
// `language`.
struct PerfRecord {
  std::string language;
  std::string task;
  std::string system;
  double value = 0.0;
  MetricDirection direction = MetricDirection::higher_better;
  std::optional<std::string> input_set;
  bool bounded = false;  // accuracy-like metrics live in [0, 1]

  friend bool operator==(const PerfRecord&, const PerfRecord&) = default;
};

struct BiasReport {
  double bias = 0.0;
  double mean = 0.0;
  std::size_t n = 0;
  std::string task;
  std::string system;
  MetricDirection direction = MetricDirection::higher_better;
  std::vector<std::string> languages;
  std::vector<PerfRecord> per_language;
};

// Sample standard deviation of performance across languages. Records must
// share task, system and direction, with one record per language.
BiasReport bias(std::span<const PerfRecord> records);

// Splits records into (task, system) groups, in first-seen order.
std::vector<std::vector<PerfRecord>> group_by_task(std::span<const PerfRecord> records);

struct GroupShare {
  std::string group;
  double share = 0.0;
};

struct PopulationShares {
  std::vector<GroupShare> shares;
};

struct GreenbergIndex {
  double same_language = 0.0;  // probability two random speakers share a language
  double diversity = 0.0;
};

GreenbergIndex greenberg(const PopulationShares& population);

struct DistancePair {
  InterlingualId predicted;
  InterlingualId gold;
  unsigned weight = 1;
};

// Least-common-subsumer distance over the hypernym DAG: the minimum, over
// shared ancestors (each concept counting as its own ancestor), of the summed
// shortest hypernym path lengths.
std::size_t lcs_distance(InterlingualId a, InterlingualId b, const ConceptStore& store);

double avg_semantic_distance(std::span<const DistancePair> pairs, const ConceptStore& store);

}  // namespace lexdb

#endif
