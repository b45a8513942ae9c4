/// Error types carrying diagnostic payloads (offending abscissa, line number)
/// beyond what the standard exceptions hold.

#pragma once

#include <stdexcept>
#include <string>

namespace zsp {

/// Thrown when a linear system or determinant factorization is too close to
/// singular to trust. Carries the abscissa at which conditioning broke down.
class ConditioningError : public std::runtime_error {
public:
    ConditioningError(const std::string& what, double s)
        : std::runtime_error(what), s_(s) {}
    double where() const { return s_; }

private:
    double s_;
};

/// Thrown on malformed input text. Carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line)
        : std::runtime_error(what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// Thrown on syntactically valid but semantically bad data (e.g. ordinates
/// out of order). Carries the 1-based line number of the first offender.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, long line)
        : std::runtime_error(what), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

} // namespace zsp
