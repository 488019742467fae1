#pragma once

/// \file errors.hpp
/// Exception taxonomy used by every module. All throwing paths in the
/// library raise one of these so callers can distinguish bad input from
/// internal invariant violations.

#include <stdexcept>
#include <string>

namespace cubelift {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Invalid parameter value (bad range, unsupported size, ...).
struct ParameterError : Error {
  using Error::Error;
};

/// Index out of range or malformed (i = j where distinct required, ...).
struct IndexError : Error {
  using Error::Error;
};

/// A component lies outside its required domain (e.g. not in [0,1]).
struct DomainError : Error {
  using Error::Error;
};

/// File contents violate the documented schema or an invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// Filesystem / parse failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace cubelift
