#ifndef MOLSPEC_ERRORS_HPP
#define MOLSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace molspec {

/// A physics or configuration value outside its admissible range.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// The truncated Fock space cannot hold the requested state or operator.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double amplitude, int dim)
        : std::runtime_error(what), amplitude_(amplitude), dim_(dim) {}

    double amplitude() const noexcept { return amplitude_; }
    int dim() const noexcept { return dim_; }

private:
    double amplitude_;
    int dim_;
};

/// A requested frequency does not fall on a DFT bin of the spectrum.
class GridMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration text; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    IoError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace molspec

#endif // MOLSPEC_ERRORS_HPP
