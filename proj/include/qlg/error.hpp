#pragma once

#include <stdexcept>
#include <string>

namespace qlg {

/// Input is well-formed but outside the domain of the operation.
/// The CLI maps this to exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text input (parse failures, unknown names).
class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& what) : DomainError(what) {}
};

}  // namespace qlg
