#pragma once

// The explicit constants of the weak-type estimates, stored as their closed
// forms.  The cross-check relations between them are asserted by tests:
//   c_trunc = 4 c_trunc_sa,  c_s = 5 c_trunc,
//   c_sym = 8 + 8 c_s,       c_main = 34 + 32 c_s.

#include <numbers>

namespace opweak {

struct BoundConstants {
  // Triangular reflection 2T-1 on self-adjoint zero-diagonal input: 4e/pi.
  double c_trunc_sa = 4.0 * std::numbers::e / std::numbers::pi;
  // Same map on general zero-diagonal input: 16e/pi.
  double c_trunc = 16.0 * std::numbers::e / std::numbers::pi;
  // Weak bound for the multiplier S built from a decreasing sequence: 80e/pi.
  double c_s = 80.0 * std::numbers::e / std::numbers::pi;
  // Identically-and-symmetrically distributed pairs: 8 + 640e/pi.
  double c_sym = 8.0 + 640.0 * std::numbers::e / std::numbers::pi;
  // Arbitrary self-adjoint pairs: 34 + 2560e/pi.
  double c_main = 34.0 + 2560.0 * std::numbers::e / std::numbers::pi;
  // Trace-norm factor of a Schur multiplier with positive symbol.
  double schur_factor = 4.0;
  // Quasi-triangle constant of the weak-L1 quasi-norm.
  double quasi_tri = 2.0;
};

inline const BoundConstants& bound_constants() {
  static const BoundConstants c;
  return c;
}

// Default relative slack absorbed by every inequality check.
inline constexpr double kDefaultSlack = 1e-9;

}  // namespace opweak
