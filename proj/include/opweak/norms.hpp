#pragma once

// Singular values and the norm/quasi-norm functionals: Schatten p-norms,
// the weak quasi-norm sup_k (k+1) mu(k), the log-averaged partial-sum norm,
// the doubling map sigma2, and the singular-value inequality checks.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "opweak/constants.hpp"
#include "opweak/eig.hpp"
#include "opweak/matrix.hpp"
#include "opweak/report.hpp"

namespace opweak {

// Singular values of a Hermitian matrix are the sorted absolute eigenvalues;
// this skips the Gram-matrix detour of the general path.
inline std::vector<double> singular_values(const HermitianMatrix& h) {
  std::vector<double> sv = eigh(h).eigenvalues;
  for (double& x : sv) x = std::abs(x);
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}
inline std::vector<double> singular_values(const SpectralDecomposition& dec) {
  std::vector<double> sv = dec.eigenvalues;
  for (double& x : sv) x = std::abs(x);
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

// mu(k; M) with the convention mu(k) = 0 beyond the list.
inline double mu_at(const std::vector<double>& sv, size_t k) {
  return k < sv.size() ? sv[k] : 0.0;
}

inline double trace_norm(const std::vector<double>& sv) {
  double s = 0.0;
  for (double x : sv) s += x;
  return s;
}
inline double trace_norm(const ComplexMatrix& m) { return trace_norm(singular_values(m)); }
inline double trace_norm(const HermitianMatrix& h) { return trace_norm(singular_values(h)); }

inline double operator_norm(const std::vector<double>& sv) { return sv.empty() ? 0.0 : sv[0]; }
inline double operator_norm(const ComplexMatrix& m) { return operator_norm(singular_values(m)); }
inline double operator_norm(const HermitianMatrix& h) { return operator_norm(singular_values(h)); }

inline double schatten_norm(const std::vector<double>& sv, double p) {
  if (!(p >= 1.0)) throw InputError("schatten_norm requires p >= 1");
  if (std::isinf(p)) return operator_norm(sv);
  double s = 0.0;
  for (double x : sv) s += std::pow(x, p);
  return std::pow(s, 1.0 / p);
}
inline double schatten_norm(const ComplexMatrix& m, double p) {
  return schatten_norm(singular_values(m), p);
}
inline double schatten_norm(const HermitianMatrix& h, double p) {
  return schatten_norm(singular_values(h), p);
}

// max_k (k+1) mu(k; M).
inline double weak_l1_norm(const std::vector<double>& sv) {
  double best = 0.0;
  for (size_t k = 0; k < sv.size(); ++k)
    best = std::max(best, static_cast<double>(k + 1) * sv[k]);
  return best;
}
inline double weak_l1_norm(const ComplexMatrix& m) { return weak_l1_norm(singular_values(m)); }
inline double weak_l1_norm(const HermitianMatrix& h) { return weak_l1_norm(singular_values(h)); }

// max_N (sum_{k<=N} mu(k)) / log(N+2), natural log.
inline double m1inf_norm(const std::vector<double>& sv) {
  double best = 0.0;
  double partial = 0.0;
  for (size_t k = 0; k < sv.size(); ++k) {
    partial += sv[k];
    best = std::max(best, partial / std::log(static_cast<double>(k) + 2.0));
  }
  return best;
}
inline double m1inf_norm(const ComplexMatrix& m) { return m1inf_norm(singular_values(m)); }
inline double m1inf_norm(const HermitianMatrix& h) { return m1inf_norm(singular_values(h)); }

// sigma2(a0, a1, ...) = (a0, a0, a1, a1, ...).
inline std::vector<double> sigma2_dilate(const std::vector<double>& s) {
  std::vector<double> out;
  out.reserve(2 * s.size());
  for (double x : s) {
    out.push_back(x);
    out.push_back(x);
  }
  return out;
}

// The three singular-value inequalities for a pair:
//   (i)  mu(AB) <= ||B||_inf * mu(A), entrywise;
//   (ii) mu(A+B) <= sigma2(mu(A) + mu(B)), entrywise;
//   (iii) ||A+B||_w <= 2(||A||_w + ||B||_w)  (quasi-triangle, factor 2).
inline CheckReport check_singular_inequalities(const ComplexMatrix& a, const ComplexMatrix& b,
                                               double slack = kDefaultSlack) {
  CheckReport report;
  const std::vector<double> mu_a = singular_values(a);
  const std::vector<double> mu_b = singular_values(b);

  if (a.cols() == b.rows()) {
    const std::vector<double> mu_ab = singular_values(a * b);
    const double bop = operator_norm(mu_b);
    bool ok = true;
    std::string detail;
    for (size_t k = 0; k < mu_ab.size(); ++k) {
      const double lim = bop * mu_at(mu_a, k);
      if (mu_ab[k] > lim * (1.0 + slack) + slack) {
        ok = false;
        detail = "violated at index " + std::to_string(k);
        break;
      }
    }
    report.add("product-dominated-by-operator-norm", ok, operator_norm(mu_ab), bop * operator_norm(mu_a),
               detail);
  }

  if (a.rows() == b.rows() && a.cols() == b.cols()) {
    const std::vector<double> mu_sum = singular_values(a + b);
    std::vector<double> pointwise(std::max(mu_a.size(), mu_b.size()));
    for (size_t k = 0; k < pointwise.size(); ++k) pointwise[k] = mu_at(mu_a, k) + mu_at(mu_b, k);
    const std::vector<double> dil = sigma2_dilate(pointwise);
    bool ok = true;
    std::string detail;
    for (size_t k = 0; k < mu_sum.size(); ++k) {
      const double lim = k < dil.size() ? dil[k] : 0.0;
      if (mu_sum[k] > lim * (1.0 + slack) + slack) {
        ok = false;
        detail = "violated at index " + std::to_string(k);
        break;
      }
    }
    report.add("sum-dominated-by-doubled-sequence", ok, operator_norm(mu_sum),
               dil.empty() ? 0.0 : dil[0], detail);

    const double lhs = weak_l1_norm(mu_sum);
    const double rhs = 2.0 * (weak_l1_norm(mu_a) + weak_l1_norm(mu_b));
    report.add("weak-quasi-triangle-factor-2", lhs <= rhs * (1.0 + slack) + slack, lhs, rhs);
  }
  return report;
}

// ||direct_sum(blocks)||_w <= sum of block weak norms (no factor 2).
inline CheckReport direct_sum_weak_bound(const std::vector<ComplexMatrix>& blocks,
                                         double slack = kDefaultSlack) {
  CheckReport report;
  double rhs = 0.0;
  double scale = 0.0;
  for (const ComplexMatrix& b : blocks) {
    rhs += weak_l1_norm(b);
    scale += frobenius_norm(b);
  }
  const double lhs = blocks.empty() ? 0.0 : weak_l1_norm(direct_sum(blocks));
  report.add("direct-sum-weak-subadditivity", lhs <= rhs + slack * (1.0 + scale), lhs, rhs);
  return report;
}

}  // namespace opweak
