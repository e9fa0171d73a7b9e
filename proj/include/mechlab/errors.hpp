#pragma once

#include <stdexcept>

namespace mechlab {

/// Base class for every error the library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: unparsable text, schema violations, invalid generator or
/// run configurations.
struct InputError : Error {
  using Error::Error;
};

/// An exact search or deviation enumeration exceeds its configured item guard.
struct SizeGuardError : Error {
  using Error::Error;
};

/// A mechanism was applied outside its domain (wrong density class, parameter
/// out of range).
struct ApplicabilityError : Error {
  using Error::Error;
};

}  // namespace mechlab
