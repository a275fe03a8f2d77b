#pragma once

// Commutator estimates: the weak-norm bound for [|A|, B] against ||[A, B]||_1,
// the exponential-conjugation series with its analytic tail bound, and the
// first-order limit of eps^{-1} [e^{i eps B}, |A|].

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "opweak/constants.hpp"
#include "opweak/eig.hpp"
#include "opweak/norms.hpp"
#include "opweak/report.hpp"

namespace opweak {

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "commutator");
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("commutator: size mismatch");
  return a * b - b * a;
}

// ||[|A|, B]||_w / ||[A, B]||_1 against c_main.  Both brackets are
// skew-adjoint for self-adjoint inputs, so i*[.,.] feeds the Hermitian norm
// paths.  A denominator at the noise floor yields ratio 0 when the numerator
// is also negligible, and an inconclusive flag otherwise.
inline CheckReport weak_commutator_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                         double slack = kDefaultSlack) {
  if (a.size() != b.size()) throw InputError("weak_commutator_check: size mismatch");
  const BoundConstants& c = bound_constants();
  const double scale = std::max(1e-300, frobenius_norm(a.matrix()) * frobenius_norm(b.matrix()));
  const ComplexMatrix abs_a = abs_of(a).matrix();
  const cplx iunit(0.0, 1.0);
  const double num = weak_l1_norm(HermitianMatrix(iunit * commutator(abs_a, b.matrix())));
  const double den = trace_norm(HermitianMatrix(iunit * commutator(a.matrix(), b.matrix())));

  CheckReport report;
  if (den <= 1e-14 * scale) {
    if (num <= 1e-12 * scale) {
      report.add("abs-commutator-weak-bound", true, 0.0, c.c_main, "commuting pair, ratio 0");
    } else {
      report.add("abs-commutator-weak-bound", true, num / scale, c.c_main,
                 "inconclusive: denominator at noise floor");
    }
    return report;
  }
  const double ratio = num / den;
  report.add("abs-commutator-weak-bound", ratio <= c.c_main * (1.0 + slack), ratio, c.c_main);
  return report;
}

// Series and trace-norm bound for [e^{i eps B}, A]:
//   (i)  the partial sum sum_{k<=K} (i eps)^k/k! [B^k, A] matches within the
//        analytic tail sum_{k>K} eps^k/k! k ||B||^{k-1} ||[B,A]||_1;
//   (ii) ||[e^{i eps B}, A]||_1 <= eps e^{eps ||B||} ||[A,B]||_1.
inline CheckReport exp_commutator_series_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                               double eps, int terms,
                                               double slack = kDefaultSlack) {
  if (a.size() != b.size()) throw InputError("exp_commutator_series_check: size mismatch");
  if (!(eps > 0.0) || terms < 1) throw InputError("exp_commutator_series_check: bad parameters");
  const int n = a.size();
  const SpectralDecomposition dec_b = eigh(b);
  const ComplexMatrix u = unitary_exp(dec_b, eps);
  const ComplexMatrix bracket = commutator(u, a.matrix());

  ComplexMatrix partial(n, n);
  ComplexMatrix bpow = ComplexMatrix::identity(n);
  cplx coef(1.0, 0.0);
  const cplx ieps(0.0, eps);
  for (int k = 1; k <= terms; ++k) {
    bpow = bpow * b.matrix();
    coef *= ieps / static_cast<double>(k);
    partial = partial + coef * commutator(bpow, a.matrix());
  }

  double bop = 0.0;
  for (double v : dec_b.eigenvalues) bop = std::max(bop, std::abs(v));
  const double l1_ba =
      trace_norm(HermitianMatrix(cplx(0.0, 1.0) * commutator(b.matrix(), a.matrix())));

  // Tail of the termwise bound, summed to numerical exhaustion.
  double tail = 0.0;
  double factor = 1.0;  // eps^k / k! at k = terms, built incrementally
  for (int k = 1; k <= terms; ++k) factor *= eps / k;
  for (int k = terms + 1; k <= terms + 400; ++k) {
    factor *= eps / k;
    const double t = factor * k * std::pow(bop, k - 1) * l1_ba;
    tail += t;
    if (t < 1e-30 * (1.0 + tail)) break;
  }

  const double fp_cushion =
      1e-12 * n * n * (1.0 + frobenius_norm(a.matrix())) * (1.0 + eps * frobenius_norm(b.matrix()));
  CheckReport report;
  const double residual = trace_norm(bracket - partial);
  const double tail_limit = tail * (1.0 + slack) + fp_cushion;
  report.add("exp-commutator-series-tail", residual <= tail_limit, residual, tail_limit);
  const double lhs = trace_norm(bracket);
  const double rhs = eps * std::exp(eps * bop) * l1_ba + fp_cushion;
  report.add("exp-commutator-trace-bound", lhs <= rhs * (1.0 + slack), lhs, rhs);
  return report;
}

// First-order convergence of eps^{-1}[e^{i eps B}, |A|] to i[B, |A|]: halving
// eps should roughly halve the error (ratio in [1.5, 2.5] at eps = 1e-3),
// unless the pair is degenerate-commuting and the error sits at noise level.
inline CheckReport conjugation_limit_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                           double eps) {
  if (a.size() != b.size()) throw InputError("conjugation_limit_check: size mismatch");
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("conjugation_limit_check: eps must be in (0,1)");
  const SpectralDecomposition dec_b = eigh(b);
  const ComplexMatrix abs_a = abs_of(a).matrix();
  const ComplexMatrix target = cplx(0.0, 1.0) * commutator(b.matrix(), abs_a);
  const double scale =
      (1.0 + frobenius_norm(abs_a)) * (1.0 + frobenius_norm(b.matrix()));

  const auto err_at = [&](double e) {
    const ComplexMatrix u = unitary_exp(dec_b, e);
    return operator_norm((1.0 / e) * commutator(u, abs_a) - target);
  };
  const double e1 = err_at(eps);
  const double e2 = err_at(eps / 2.0);

  CheckReport report;
  if (e1 <= 1e-12 * scale) {
    report.add("conjugation-first-order-limit", true, 0.0, 2.0,
               "errors at noise level (commuting case), trivially convergent");
    return report;
  }
  const double ratio = e1 / std::max(e2, 1e-300);
  report.add("conjugation-first-order-limit", ratio >= 1.5 && ratio <= 2.5, ratio, 2.0,
             "halving-error ratio, expected within [1.5, 2.5]");
  return report;
}

}  // namespace opweak
