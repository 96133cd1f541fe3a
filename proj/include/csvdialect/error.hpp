#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csvdialect {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scoring was asked to evaluate text that parses to zero rows or cells.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// A table cannot be written under the requested dialect.
class FormatError : public Error {
 public:
  FormatError(std::size_t row, std::size_t column, const std::string& what)
      : Error("row " + std::to_string(row) + ", column " + std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// Input bytes are not valid in the declared encoding.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t offset, const std::string& encoding)
      : Error("invalid " + encoding + " byte sequence at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace csvdialect
