#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpunct {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NonCommutingRows : public Error {
public:
    NonCommutingRows(std::size_t row_a, std::size_t row_b, const std::string& block = "stabilizer")
        : Error(block + " rows " + std::to_string(row_a + 1) + " and " + std::to_string(row_b + 1) +
                " do not commute"),
          row_a_(row_a), row_b_(row_b) {}
    std::size_t row_a() const noexcept { return row_a_; }
    std::size_t row_b() const noexcept { return row_b_; }

private:
    std::size_t row_a_;
    std::size_t row_b_;
};

class DependentRows : public Error {
public:
    explicit DependentRows(std::size_t row, const std::string& block = "stabilizer")
        : Error(block + " row " + std::to_string(row + 1) + " is linearly dependent on the rows before it"),
          row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class ExtensionNotInCentralizer : public Error {
public:
    ExtensionNotInCentralizer(std::size_t ext_row, std::size_t stab_row)
        : Error("extension row " + std::to_string(ext_row + 1) + " does not commute with stabilizer row " +
                std::to_string(stab_row + 1)),
          ext_row_(ext_row) {}
    std::size_t row() const noexcept { return ext_row_; }

private:
    std::size_t ext_row_;
};

class ExtensionInStabilizer : public Error {
public:
    explicit ExtensionInStabilizer(std::size_t ext_row)
        : Error("extension row " + std::to_string(ext_row + 1) + " lies in the stabilizer row space"),
          ext_row_(ext_row) {}
    std::size_t row() const noexcept { return ext_row_; }

private:
    std::size_t ext_row_;
};

class InvalidIndex : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t required, std::uint64_t budget)
        : Error("enumeration needs " + std::to_string(required) + " vectors but the budget is " +
                std::to_string(budget)),
          required_(required) {}
    /// Vectors the enumeration would visit; saturates at UINT64_MAX.
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

class IncompleteWords : public Error {
public:
    IncompleteWords() : Error("minimum-weight word list is truncated; rerun with a larger cap") {}
};

class NotFound : public Error {
public:
    using Error::Error;
};

class DistanceTooSmall : public Error {
public:
    DistanceTooSmall(std::size_t d, std::size_t t)
        : Error("mother code distance " + std::to_string(d) + " must exceed the puncture count " +
                std::to_string(t)) {}
};

class InvalidPermutation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class CheckpointMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace qpunct
