#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace convexpos {

// Error categories; the CLI maps them to exit codes (input -> 2,
// numerical -> 3, guard -> 4).
enum class ErrorKind {
    invalid_input,
    numerical,
    guard_exceeded,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& detail)
        : std::runtime_error(detail.empty() ? code : code + ": " + detail),
          kind_(kind),
          code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;  // short machine-readable tag, e.g. "NonConvex"
};

[[noreturn]] inline void fail(ErrorKind kind, std::string code, const std::string& detail = "") {
    throw Error(kind, std::move(code), detail);
}

}  // namespace convexpos
