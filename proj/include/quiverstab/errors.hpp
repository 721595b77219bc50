#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quiverstab {

/// Process exit status associated with each error family.
enum class ExitCode : int {
    ok = 0,
    domain_error = 1,
    cap_exceeded = 2,
    invariant_violation = 3,
};

/// Base class for every error raised by the library.
///
/// `kind()` is a short machine-readable code such as `"parse.syntax"` or
/// `"representation.relation_violated"`; the CLI forwards it verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message,
          ExitCode code = ExitCode::domain_error)
        : std::runtime_error(message), kind_(std::move(kind)), code_(code) {}

    const std::string& kind() const noexcept { return kind_; }
    ExitCode exit_code() const noexcept { return code_; }

private:
    std::string kind_;
    ExitCode code_;
};

class ParseError : public Error {
public:
    ParseError(std::string kind, const std::string& message, std::size_t line,
               std::size_t column)
        : Error(std::move(kind),
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// A configurable enumeration ceiling was hit. `partial()` is how far the
/// enumeration got before stopping.
class CapExceeded : public Error {
public:
    CapExceeded(std::string kind, const std::string& message, std::size_t partial)
        : Error(std::move(kind), message, ExitCode::cap_exceeded), partial_(partial) {}

    std::size_t partial() const noexcept { return partial_; }

private:
    std::size_t partial_;
};

/// A mathematical invariant that must hold did not.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string kind, const std::string& message)
        : Error(std::move(kind), message, ExitCode::invariant_violation) {}
};

} // namespace quiverstab
