#pragma once

#include <stdexcept>
#include <string>

namespace icec {

// Base of everything the library throws on bad input or failed numerics.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CLI maps this to exit code 2).
class InputError : public Error {
public:
  using Error::Error;
};

// A query outside the tabulated energy range of a cross-section table.
class RangeError : public Error {
public:
  RangeError(const std::string& what, std::string table_label)
      : Error(what), label_(std::move(table_label)) {}
  const std::string& table_label() const noexcept { return label_; }

private:
  std::string label_;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

} // namespace icec
