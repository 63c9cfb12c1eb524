#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finloc {

/// Argument outside an operation's stated domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed surface syntax (lattice expressions, profile literals).
/// Carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace finloc
