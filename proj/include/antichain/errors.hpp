#pragma once

#include <stdexcept>
#include <string>

namespace antichain {

/// Malformed or out-of-range input (bad masks, unparsable text, non-closed downsets).
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operands built over different universes.
struct UniverseMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
struct PreconditionError : std::domain_error {
  using std::domain_error::domain_error;
};

/// The request is well formed but too large for the chosen method.
struct UnsupportedSize : std::length_error {
  using std::length_error::length_error;
};

}  // namespace antichain
