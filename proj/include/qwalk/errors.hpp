#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// malformed or invalid walk document
struct ParseError : Error {
  using Error::Error;
};

// singular, reducible or genus-0 input where the operation needs more
struct DegenerateWalk : Error {
  using Error::Error;
};

// degree cap or similar budget exceeded
struct ResourceLimit : Error {
  using Error::Error;
};

// an internal identity failed; indicates a bug or a broken assumption
struct InconsistencyError : Error {
  using Error::Error;
};

struct NumericHealth : Error {
  using Error::Error;
};

struct UnsupportedConfiguration : Error {
  using Error::Error;
};

}  // namespace qwalk
