#pragma once

#include <stdexcept>
#include <string>

namespace contactcount {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed text input: tree files, condition specs, cache files.
struct ParseError : Error {
  using Error::Error;
};

/// An operation that requires a stable tree was handed something else.
struct InvalidTreeError : Error {
  using Error::Error;
};

/// A precondition on numeric arguments was violated.
struct DomainError : Error {
  using Error::Error;
};

/// A localization denominator vanished for the sampled weights.
struct DegenerateWeightsError : Error {
  using Error::Error;
};

/// Self-checks failed: weight dependence, non-integral final counts,
/// conflicting cache values.
struct VerificationError : Error {
  using Error::Error;
};

}  // namespace contactcount
