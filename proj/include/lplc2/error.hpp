#pragma once

#include <stdexcept>
#include <string>

namespace lplc2 {

enum class ErrorCode {
    invalid_value,
    unknown_key,
    dimension_mismatch,
    kernel_too_large,
    distance_too_large,
    out_of_bounds,
    io,
    parse,
    too_few_frames,
    test_scale_exceeded,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code says what went wrong,
// the message says where.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace lplc2
