#pragma once

#include <stdexcept>
#include <string>

namespace vbtl {

/// Malformed data: non-finite samples, nonpositive exponents or weights, grid mismatches.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters outside the supported range (Nyquist violations, a <= 0, M = 0, oversized balls).
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hypothesis of a characterization does not hold (e.g. M > s+ or R > alpha2).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root finding or quadrature did not converge.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vbtl
