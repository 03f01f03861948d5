#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strata {

enum class ErrorCode {
    layer_violation,
    unknown_relation,
    unknown_node,
    duplicate_node,
    registry_conflict,
    duplicate_rect_id,
    bad_magic,
    truncated_data,
    maxval_overflow,
    infeasible_spec,
    key_mismatch,
    parse_error,
    file_not_found,
    invalid_argument,
};

std::string_view to_string(ErrorCode code);

// All module failures surface as this exception; what() is a one-line
// message prefixed with the error code name.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace strata
