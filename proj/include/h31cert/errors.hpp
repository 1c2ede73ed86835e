#pragma once

#include <stdexcept>
#include <string>

namespace h31cert {

/// Malformed textual input (rationals, polynomials, series).
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Caller violated an operation's contract (mismatched orders, too few
/// coefficients, empty sample counts).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined request (nonzero constant term under
/// composition, unnormalized series under reversion, parameters outside
/// the closed unit disc).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace h31cert
