#include "lexdb/shared_store.hpp"

namespace lexdb {

SharedStore::SharedStore(ConceptStore initial) : current_(std::make_shared<const ConceptStore>(std::move(initial))) {}

std::shared_ptr<const ConceptStore> SharedStore::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  return current_;
}

void SharedStore::publish(std::shared_ptr<const ConceptStore> next) {
  std::lock_guard lock(snapshot_mutex_);
  current_ = std::move(next);
}

void SharedStore::reset(ConceptStore store) {
  std::lock_guard writer(write_mutex_);
  publish(std::make_shared<const ConceptStore>(std::move(store)));
}

}  // namespace lexdb
