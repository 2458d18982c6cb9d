#pragma once

#include <stdexcept>
#include <string>

namespace bqf {

// Failure categories. The C API maps each one onto a bqf_status code.
enum class ErrorCode {
    invalid_argument,
    inconsistent_congruences,
    class_number_not_two,
    family_not_covered,
    not_completely_split,
    search_exhausted,
    parse_error,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

}  // namespace bqf
