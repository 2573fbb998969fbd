#ifndef LEXDB_SERVICE_HPP
#define LEXDB_SERVICE_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lexdb/exchange.hpp"
#include "lexdb/shared_store.hpp"

namespace lexdb {

struct EditEvent {
  std::uint64_t seq = 0;
  std::string contributor;
  std::string timestamp;  // UTC, ISO 8601
  std::string action;
  nlohmann::json args;
  std::optional<std::string> error;  // error code of a rejected edit
  nlohmann::json created = nlohmann::json::object();

  bool ok() const { return !error.has_value(); }
};

nlohmann::ordered_json edit_event_to_json(const EditEvent& event);
EditEvent edit_event_from_json(const nlohmann::json& j);

struct ApiRequest {
  std::string method = "GET";
  std::string path;  // e.g. "/concepts/ukc:C1"
  std::map<std::string, std::string> params;
  nlohmann::json body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::ordered_json body;
};

int http_status(ErrorCode code);
ApiResponse error_response(ErrorCode code, const std::string& message, const std::string& location = {});

using Clock = std::function<std::string()>;
std::string utc_now();

inline constexpr std::size_t kDefaultPageSize = 50;
inline constexpr std::size_t kSnapshotInterval = 100;  // successful edits

// Mutation names accepted by apply_edit.
const std::vector<std::string>& edit_actions();

// Applies one edit action to a store. `args` use stable ids and language
// codes; returns the stable ids it created.
nlohmann::json apply_action(ConceptStore& store, const std::string& action, const nlohmann::json& args);

// The store behind the HTTP API: immutable snapshots for reads, serialized
// edits recorded in an append-only log.
class LexiconService {
 public:
  explicit LexiconService(ConceptStore initial = {}, Clock clock = utc_now);

  // Routes GET reads and POST /bias, /edits.
  ApiResponse handle(const ApiRequest& request);

  ApiResponse apply_edit(const nlohmann::json& request);
  std::vector<EditEvent> changelog(std::uint64_t since) const;

  std::shared_ptr<const ConceptStore> snapshot() const { return store_.snapshot(); }
  std::uint64_t last_seq() const;

  // Persists to `<db>.snapshot.json` and `<db>.log`; the base document at
  // `db` is only read. Loads the latest snapshot and replays the log tail.
  void open(const std::filesystem::path& db);
  void write_snapshot();

 private:
  ApiResponse get_languages(const ApiRequest& request) const;
  ApiResponse get_concepts(const ApiRequest& request) const;
  ApiResponse get_concept(const std::string& id, const ApiRequest& request) const;
  ApiResponse get_search(const ApiRequest& request) const;
  ApiResponse get_mappings(const ApiRequest& request) const;
  ApiResponse get_coverage(const ApiRequest& request) const;
  ApiResponse get_bias(const ApiRequest& request) const;
  ApiResponse post_bias(const ApiRequest& request) const;
  ApiResponse get_changelog(const ApiRequest& request) const;
  void save_snapshot(std::uint64_t seq);  // caller holds edit_mutex_

  SharedStore store_;
  Clock clock_;

  std::mutex edit_mutex_;  // serializes edits with their log entries
  mutable std::mutex log_mutex_;
  std::vector<EditEvent> log_;
  ConceptStore base_;  // store before the first logged event

  std::optional<std::filesystem::path> db_;
  std::ofstream log_file_;
  std::size_t edits_since_snapshot_ = 0;
};

// Rebuilds a store by applying the successful events in order.
ConceptStore replay(ConceptStore base, const std::vector<EditEvent>& events);

}  // namespace lexdb

#endif
