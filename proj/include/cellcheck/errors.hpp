#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cellcheck {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Formula grammar violation. `position` is the 0-based offset into the
/// source text, counting the leading "=".
class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error(message + " at position " + std::to_string(position)),
          position_(position), message_(message) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

class UnknownSheet : public Error {
public:
    explicit UnknownSheet(std::string sheet)
        : Error("unknown worksheet '" + sheet + "'"), sheet_(std::move(sheet)) {}

    const std::string& sheet() const noexcept { return sheet_; }

private:
    std::string sheet_;
};

/// Circular dependency found during evaluation; `path` starts and ends at the
/// same cell (A1 notation, sheet-qualified).
class CycleError : public Error {
public:
    explicit CycleError(std::vector<std::string> path);

    const std::vector<std::string>& path() const noexcept { return path_; }

private:
    std::vector<std::string> path_;
};

class UnsupportedFunction : public Error {
public:
    explicit UnsupportedFunction(std::string name)
        : Error("unsupported function " + name), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class EvalTypeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed container or document (XLSX package, fixture, scenario or
/// config file). `line` is 1-based when known, 0 otherwise.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& message, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace cellcheck
