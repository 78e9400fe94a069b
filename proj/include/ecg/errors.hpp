#pragma once

#include <stdexcept>
#include <string>

namespace ecg {

// Base for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed edit profile input (arity mismatch, bad quota, bad op text).
struct ProfileError : Error {
  using Error::Error;
};

// Requested FEC lattice exceeds the bit-array capacity bound.
struct CapacityError : Error {
  using Error::Error;
};

// API misuse: out-of-order incremental calls, mismatched bit widths.
struct ContractError : Error {
  using Error::Error;
};

// Sequence character outside ACGT.
struct AlphabetError : Error {
  using Error::Error;
};

}  // namespace ecg
