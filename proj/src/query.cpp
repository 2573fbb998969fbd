#include "lexdb/query.hpp"

namespace lexdb {

namespace {

struct Dispatch {
  const ConceptStore& store;

  QueryResult operator()(const SensesOf& q) const { return store.senses_of(q.concept_id, q.language); }
  QueryResult operator()(const ConceptOf& q) const { return store.concept_of(q.sense); }
  QueryResult operator()(const GapsOf& q) const { return store.gaps_of(q.language); }
  QueryResult operator()(const HypernymAncestors& q) const { return store.hypernym_ancestors(q.concept_id); }
  QueryResult operator()(const LexiconStatsOf& q) const { return store.lexicon_stats(q.language); }
  QueryResult operator()(const FindLemma& q) const { return store.find_lemma(q.language, q.lemma); }
};

}  // namespace

QueryResult query(const ConceptStore& store, const QueryRequest& request) {
  return std::visit(Dispatch{store}, request);
}

}  // namespace lexdb
