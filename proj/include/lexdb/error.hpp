#ifndef LEXDB_ERROR_HPP
#define LEXDB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexdb {

enum class ErrorCode {
  duplicate_code,
  malformed_code,
  unknown_ref,
  unknown_language,
  self_loop,
  duplicate,
  cycle,
  gap_conflict,
  sense_conflict,
  duplicate_sense,
  duplicate_gap,
  cross_language_parent,
  unrooted_local,
  language_mismatch,
  self_link,
  not_subset,
  too_few_languages,
  mixed_tasks,
  duplicate_language,
  invalid_record,
  invalid_shares,
  no_common_subsumer,
  empty_input,
  validation_failed,
  merge_conflict,
  parse_error,
  bad_request,
};

// Wire name, e.g. "GAP_CONFLICT".
std::string_view to_string(ErrorCode code);

class LexError : public std::runtime_error {
 public:
  LexError(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lexdb

#endif
