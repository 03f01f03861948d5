#include "strata/error.hpp"

namespace strata {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::layer_violation: return "layer-violation";
    case ErrorCode::unknown_relation: return "unknown-relation";
    case ErrorCode::unknown_node: return "unknown-node";
    case ErrorCode::duplicate_node: return "duplicate-node";
    case ErrorCode::registry_conflict: return "registry-conflict";
    case ErrorCode::duplicate_rect_id: return "duplicate-rect-id";
    case ErrorCode::bad_magic: return "bad-magic";
    case ErrorCode::truncated_data: return "truncated-data";
    case ErrorCode::maxval_overflow: return "maxval-overflow";
    case ErrorCode::infeasible_spec: return "infeasible-spec";
    case ErrorCode::key_mismatch: return "key-mismatch";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::file_not_found: return "file-not-found";
    case ErrorCode::invalid_argument: return "invalid-argument";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

} // namespace strata
