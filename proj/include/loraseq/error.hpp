// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace loraseq {

/// Base class for every error the library throws. Each subclass maps onto one
/// of the CLI exit-code families (input/config errors exit 2, evaluation and
/// degenerate-sample errors exit 1).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Parse failure in one of the corpus formats. `line()` is 1-based; for CSV
/// inputs it is the data-row number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& unit = "line")
      : Error(unit + " " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace loraseq
