#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmoyal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A q-power or symbol exponent is not a multiple of 1/D for the configured D.
struct NonRepresentableExponent : Error {
  using Error::Error;
};

/// A coefficient handed to an exact 1/h division still has an h^0 part.
struct NotDivisibleByH : Error {
  using Error::Error;
};

/// Substituting q = 1 hits a vanishing denominator.
struct PoleAtQ1 : Error {
  using Error::Error;
};

/// Weyl symmetrization and the Weyl change of basis only exist at q = 1.
struct RequiresQ1 : Error {
  using Error::Error;
};

/// Symbols with fractional or negative exponents have no operator counterpart.
struct NonQuantizableExponent : Error {
  using Error::Error;
};

/// A star-product series does not terminate and no h-truncation was configured.
struct NonTerminatingSeries : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message);

  std::size_t offset;
  std::vector<std::string> expected;
};

}  // namespace qmoyal
