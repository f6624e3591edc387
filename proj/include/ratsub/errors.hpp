#pragma once

#include <stdexcept>
#include <string>

namespace ratsub {

// Malformed or mismatched user input: unknown letters, alphabet mismatch,
// unparsable files. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A documented operation precondition does not hold: infinite index where a
// finite one is required, a subset not contained in the target subgroup, a
// witness that is not epi. Maps to CLI exit code 3.
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal self-check failed. Constructions that verify their own output
// (semilinear images, periodicity checks) throw this instead of returning
// unverified data.
class InconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace ratsub
