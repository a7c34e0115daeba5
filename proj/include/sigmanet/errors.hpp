#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sigmanet {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
          row_(row),
          column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(actual)) {}
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class TooFewPatterns : public Error {
public:
    using Error::Error;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class InvalidGrid : public Error {
public:
    using Error::Error;
};

class LabelSpaceError : public Error {
public:
    using Error::Error;
};

class UnlabeledData : public LabelSpaceError {
public:
    using LabelSpaceError::LabelSpaceError;
};

class SingleClass : public Error {
public:
    using Error::Error;
};

class NotInitialized : public Error {
public:
    using Error::Error;
};

// Configuration errors carry the dotted path of the offending field.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace sigmanet
