#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace equihom {

enum class ErrorKind {
    invalid_parameter,
    capacity_exceeded,
    unsupported_input,
    invalid_input,
    internal_error,
    invariant_violation,
    not_free_action,
    alternating_simplex,
    not_equivariant,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::capacity_exceeded: return "capacity-exceeded";
    case ErrorKind::unsupported_input: return "unsupported-input";
    case ErrorKind::invalid_input: return "invalid-input";
    case ErrorKind::internal_error: return "internal-error";
    case ErrorKind::invariant_violation: return "invariant-violation";
    case ErrorKind::not_free_action: return "not-free-action";
    case ErrorKind::alternating_simplex: return "alternating-3-simplex-found";
    case ErrorKind::not_equivariant: return "not-equivariant";
    }
    return "unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what) {
    throw Error(kind, what);
}

inline void require(bool cond, ErrorKind kind, const std::string &what) {
    if (!cond)
        fail(kind, what);
}

} // namespace equihom
