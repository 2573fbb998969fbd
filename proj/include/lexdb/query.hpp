#ifndef LEXDB_QUERY_HPP
#define LEXDB_QUERY_HPP

#include <string>
#include <variant>
#include <vector>

#include "lexdb/concept_store.hpp"

namespace lexdb {

struct SensesOf {
  InterlingualId concept_id;
  LanguageId language;
};
struct ConceptOf {
  SenseId sense;
};
struct GapsOf {
  LanguageId language;
};
struct HypernymAncestors {
  InterlingualId concept_id;
};
struct LexiconStatsOf {
  LanguageId language;
};
struct FindLemma {
  LanguageId language;
  std::string lemma;
};

using QueryRequest = std::variant<SensesOf, ConceptOf, GapsOf, HypernymAncestors, LexiconStatsOf, FindLemma>;
using QueryResult =
    std::variant<SensesResult, ConceptId, std::vector<InterlingualId>, LexiconStats, std::vector<SenseId>>;

// Pure read; results are ordered by identifier.
QueryResult query(const ConceptStore& store, const QueryRequest& request);

}  // namespace lexdb

#endif
