#ifndef LEXDB_SHARED_STORE_HPP
#define LEXDB_SHARED_STORE_HPP

#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>

#include "lexdb/concept_store.hpp"

namespace lexdb {

// Single writer, many readers. Readers hold immutable snapshots; a writer
// mutates a private copy and publishes it only if the mutation succeeds.
class SharedStore {
 public:
  explicit SharedStore(ConceptStore initial = {});

  std::shared_ptr<const ConceptStore> snapshot() const;

  template <class F>
  auto write(F&& mutation) -> std::invoke_result_t<F, ConceptStore&> {
    std::lock_guard writer(write_mutex_);
    auto next = std::make_shared<ConceptStore>(*snapshot());
    if constexpr (std::is_void_v<std::invoke_result_t<F, ConceptStore&>>) {
      std::forward<F>(mutation)(*next);
      publish(std::move(next));
    } else {
      auto result = std::forward<F>(mutation)(*next);
      publish(std::move(next));
      return result;
    }
  }

  // Replaces the whole store (snapshot load).
  void reset(ConceptStore store);

 private:
  void publish(std::shared_ptr<const ConceptStore> next);

  std::mutex write_mutex_;
  mutable std::mutex snapshot_mutex_;
  std::shared_ptr<const ConceptStore> current_;
};

}  // namespace lexdb

#endif
