#pragma once

#include <stdexcept>
#include <string>

namespace quenum {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A character outside the configured alphabet, or a blank inside an expression.
struct UnknownSymbolError : Error {
  using Error::Error;
};

struct EmptyInputError : Error {
  using Error::Error;
};

/// referent() requested for something that is not a sentence.
struct NotASentenceError : Error {
  using Error::Error;
};

struct InvalidDimensionError : Error {
  using Error::Error;
};

struct DimensionMismatchError : Error {
  using Error::Error;
};

struct BadRegionError : Error {
  using Error::Error;
};

/// Step-operator matrix failed the unitarity check; carries the max deviation.
struct NotUnitaryError : Error {
  NotUnitaryError(const std::string& what, double deviation)
      : Error(what), max_deviation(deviation) {}
  double max_deviation;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnknownBuiltinError : Error {
  using Error::Error;
};

/// A branching machine was iterated past the horizon its unitary was sized for.
struct HorizonExceededError : Error {
  using Error::Error;
};

/// Requested enumerator state is too large to materialize term-by-term.
struct ScaleExceededError : Error {
  using Error::Error;
};

/// A check was asked about an expression outside its domain (e.g. a
/// consistency pair for an argument that is itself a sentence).
struct NotApplicableError : Error {
  using Error::Error;
};

/// The two algebraically equivalent truth definitions disagreed; this is an
/// internal consistency failure, never expected on well-formed inputs.
struct EquivalenceViolationError : Error {
  using Error::Error;
};

}  // namespace quenum
