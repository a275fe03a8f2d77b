#pragma once

// Triangular truncation, its sign reflection, and the coefficient multiplier
// S(A) = sum (a_k - a_l)/(a_k + a_l) p_k A p_l, together with the factored
// identity S = (2T - 1)(2M_Phi - 1) and the weak-norm ratio checks.

#include <cmath>
#include <vector>

#include "opweak/constants.hpp"
#include "opweak/norms.hpp"
#include "opweak/report.hpp"
#include "opweak/schur.hpp"

namespace opweak {

// Keep the lower triangle including the diagonal; zero the strict upper part.
inline ComplexMatrix tri_trunc(const ComplexMatrix& a) {
  require_square(a, "tri_trunc");
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j <= i; ++j) r(i, j) = a(i, j);
  return r;
}

// (2T - 1): keep entries on/below the diagonal, negate those above.
inline ComplexMatrix reflect_trunc(const ComplexMatrix& a) {
  require_square(a, "reflect_trunc");
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = (i >= j) ? a(i, j) : -a(i, j);
  return r;
}

// Coefficient matrix (mu_k - mu_l)/(mu_k + mu_l) for a nonnegative sequence;
// a vanishing denominator forces mu_k = mu_l = 0, where the numerator also
// vanishes, so the coefficient is taken as 0.
inline ComplexMatrix s_coefficients(const std::vector<double>& mu) {
  const int n = static_cast<int>(mu.size());
  ComplexMatrix c(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const double den = mu[k] + mu[l];
      c(k, l) = (den > 0.0) ? (mu[k] - mu[l]) / den : 0.0;
    }
  return c;
}

// X (C o (X* A X)) X* for an isometry X whose columns carry a rank-1
// projection family: evaluates sum_{k,l} C_{k,l} p_k A p_l in O(n^3).
inline ComplexMatrix rank1_multiplier_apply(const ComplexMatrix& coeffs, const ComplexMatrix& x,
                                            const ComplexMatrix& a) {
  const ComplexMatrix compressed = adjoint(x) * (a * x);
  return (x * hadamard(coeffs, compressed)) * adjoint(x);
}

// S(A) over the standard basis family (entrywise multiplier), or over a
// caller-supplied family of mutually orthogonal rank-1 projections.
inline ComplexMatrix s_operator(const DecreasingPositiveSeq& alpha, const ComplexMatrix& a) {
  require_square(a, "s_operator");
  if (a.rows() != alpha.size()) throw InputError("s_operator: size mismatch");
  return hadamard(s_coefficients(alpha.alpha), a);
}
inline ComplexMatrix s_operator(const DecreasingPositiveSeq& alpha, const ComplexMatrix& a,
                                const std::vector<ComplexMatrix>& projections) {
  require_square(a, "s_operator");
  if (static_cast<int>(projections.size()) != alpha.size())
    throw InputError("s_operator: projection count must match sequence length");
  const ComplexMatrix x = projection_family_isometry(projections);
  if (x.rows() != a.rows()) throw InputError("s_operator: projection size mismatch");
  return rank1_multiplier_apply(s_coefficients(alpha.alpha), x, a);
}

// Frobenius residual of S(A) against (2T - 1)(2 M_Phi(A) - A); exact up to fp.
inline double verify_s_factorization(const DecreasingPositiveSeq& alpha, const ComplexMatrix& a) {
  const ComplexMatrix lhs = s_operator(alpha, a);
  const ComplexMatrix phi = phi_matrix(alpha).matrix();
  const ComplexMatrix rhs = reflect_trunc(2.0 * hadamard(phi, a) - a);
  return frobenius_norm(lhs - rhs);
}

// Weak-norm ratios of the reflected truncation on zero-diagonal input,
// against the self-adjoint constant (when applicable) and the general one.
inline CheckReport check_truncation_bounds(const ComplexMatrix& x, double slack = kDefaultSlack) {
  require_square(x, "check_truncation_bounds");
  const double scale = frobenius_norm(x);
  for (int i = 0; i < x.rows(); ++i)
    if (std::abs(x(i, i)) > 1e-14 * std::max(1.0, scale))
      throw InputError("check_truncation_bounds: diagonal must be zero");

  const BoundConstants& c = bound_constants();
  CheckReport report;
  const double l1 = trace_norm(x);
  const double weak = weak_l1_norm(reflect_trunc(x));
  const double ratio = (l1 > 0.0) ? weak / l1 : 0.0;
  const bool selfadj = frobenius_norm(x - adjoint(x)) <= 1e-12 * std::max(1.0, scale);
  if (selfadj)
    report.add("reflected-truncation-weak-bound-selfadjoint", ratio <= c.c_trunc_sa * (1.0 + slack),
               ratio, c.c_trunc_sa);
  report.add("reflected-truncation-weak-bound-general", ratio <= c.c_trunc * (1.0 + slack), ratio,
             c.c_trunc);
  return report;
}

}  // namespace opweak
