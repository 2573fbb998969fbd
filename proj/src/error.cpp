#include "lexdb/error.hpp"

namespace lexdb {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::duplicate_code: return "DUPLICATE_CODE";
    case ErrorCode::malformed_code: return "MALFORMED_CODE";
    case ErrorCode::unknown_ref: return "UNKNOWN_REF";
    case ErrorCode::unknown_language: return "UNKNOWN_LANGUAGE";
    case ErrorCode::self_loop: return "SELF_LOOP";
    case ErrorCode::duplicate: return "DUPLICATE";
    case ErrorCode::cycle: return "CYCLE";
    case ErrorCode::gap_conflict: return "GAP_CONFLICT";
    case ErrorCode::sense_conflict: return "SENSE_CONFLICT";
    case ErrorCode::duplicate_sense: return "DUPLICATE_SENSE";
    case ErrorCode::duplicate_gap: return "DUPLICATE_GAP";
    case ErrorCode::cross_language_parent: return "CROSS_LANGUAGE_PARENT";
    case ErrorCode::unrooted_local: return "UNROOTED_LOCAL";
    case ErrorCode::language_mismatch: return "LANGUAGE_MISMATCH";
    case ErrorCode::self_link: return "SELF_LINK";
    case ErrorCode::not_subset: return "NOT_SUBSET";
    case ErrorCode::too_few_languages: return "TOO_FEW_LANGUAGES";
    case ErrorCode::mixed_tasks: return "MIXED_TASKS";
    case ErrorCode::duplicate_language: return "DUPLICATE_LANGUAGE";
    case ErrorCode::invalid_record: return "INVALID_RECORD";
    case ErrorCode::invalid_shares: return "INVALID_SHARES";
    case ErrorCode::no_common_subsumer: return "NO_COMMON_SUBSUMER";
    case ErrorCode::empty_input: return "EMPTY_INPUT";
    case ErrorCode::validation_failed: return "VALIDATION_FAILED";
    case ErrorCode::merge_conflict: return "MERGE_CONFLICT";
    case ErrorCode::parse_error: return "PARSE_ERROR";
    case ErrorCode::bad_request: return "BAD_REQUEST";
  }
  return "UNKNOWN";
}

}  // namespace lexdb
