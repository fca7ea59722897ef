#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cshrink {

// Problems with the input data: unreadable files, bad schema, inconsistent
// counts, or too few players to fit a model.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaError : public DataError {
public:
    explicit SchemaError(const std::string& column)
        : DataError("missing required column \"" + column + "\""), column_(column) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class DataIntegrityError : public DataError {
public:
    using DataError::DataError;
};

class InsufficientDataError : public DataError {
public:
    using DataError::DataError;
};

// Arguments outside the mathematical domain of an operation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegeneratePitcherError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Caller supplied an inconsistent set of inputs (e.g. a missing season fit).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cshrink
