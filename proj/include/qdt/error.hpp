#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qdt {

// Base for every error the library raises on bad input or failed checks.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown vertex/label, mismatched vertex sets, bad file.
struct InvalidInput : Error {
  using Error::Error;
};

// An enumeration would exceed a configured budget. `required` is the
// budget that would have been needed.
struct CapExceeded : Error {
  CapExceeded(const std::string& what, std::uint64_t required_budget)
      : Error(what), required(required_budget) {}
  std::uint64_t required;
};

// A computed object failed a mathematical consistency check (non-integral
// Burnside sum, interpolation check node mismatch, non-polynomial quotient).
struct ConsistencyError : Error {
  using Error::Error;
};

}  // namespace qdt
