#pragma once

#include <stdexcept>

namespace uwmvs {

// Precondition / contract violations (bad arguments, shape mismatches).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// File system and parsing failures.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-finite values detected where they abort the computation.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace uwmvs
