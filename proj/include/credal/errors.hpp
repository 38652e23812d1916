#pragma once

#include <stdexcept>
#include <string>

namespace credal {

// Common base so callers can catch everything this library throws.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : Error {
  using Error::Error;
};
struct UnknownAtom : Error {
  using Error::Error;
};
struct AtomAlreadyPresent : Error {
  using Error::Error;
};
struct AtomNotPresent : Error {
  using Error::Error;
};
struct SignatureMismatch : Error {
  using Error::Error;
};
struct ParameterOutOfRange : Error {
  using Error::Error;
};
// A conditioning step needs positive mass on some region and the state has none.
struct ZeroCondition : Error {
  using Error::Error;
};
// Proposition kinetics is only defined when the condition is a single atom.
struct KineticsOnCompound : Error {
  using Error::Error;
};
// A transition's guard does not hold in the source state.
struct GuardFailed : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
// A mass vector that was required to be a probability function is not one.
struct InvalidState : Error {
  using Error::Error;
};

}  // namespace credal
