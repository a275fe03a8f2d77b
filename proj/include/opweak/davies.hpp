#pragma once

// Functions of the form f(t) = sum_k a_k |t - t_k| built from finitely
// supported signed measures: evaluation, matrix functional calculus, the
// distorted variation, measure discretization onto a uniform grid, the
// dyadically weighted quasi-triangle bound, and the assembled weak-norm
// estimate for f(A) - f(B).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "opweak/absdiff.hpp"
#include "opweak/constants.hpp"
#include "opweak/eig.hpp"
#include "opweak/norms.hpp"
#include "opweak/report.hpp"

namespace opweak {

// Finitely supported signed measure: nonzero weight a_k at atom t_k.
struct DiscreteMeasure {
  std::vector<double> atoms;    // strictly increasing
  std::vector<double> weights;  // nonzero, same length

  DiscreteMeasure() = default;
  DiscreteMeasure(std::vector<double> atoms_, std::vector<double> weights_)
      : atoms(std::move(atoms_)), weights(std::move(weights_)) {
    if (atoms.size() != weights.size())
      throw InputError("DiscreteMeasure: atoms/weights length mismatch");
    for (size_t k = 0; k < atoms.size(); ++k) {
      if (!std::isfinite(atoms[k]) || !std::isfinite(weights[k]))
        throw InputError("DiscreteMeasure: entries must be finite");
      if (weights[k] == 0.0) throw InputError("DiscreteMeasure: weights must be nonzero");
      if (k > 0 && !(atoms[k] > atoms[k - 1]))
        throw InputError("DiscreteMeasure: atoms must be strictly increasing");
    }
  }

  size_t size() const { return atoms.size(); }
  double total_variation() const {
    double s = 0.0;
    for (double w : weights) s += std::abs(w);
    return s;
  }
  // f(t) = sum_k a_k |t - t_k|.
  double eval(double t) const {
    double s = 0.0;
    for (size_t k = 0; k < atoms.size(); ++k) s += weights[k] * std::abs(t - atoms[k]);
    return s;
  }
};

inline double eval_function(const DiscreteMeasure& nu, double t) { return nu.eval(t); }

// f(A) by spectral calculus; equals sum_k a_k |A - t_k I| exactly in exact
// arithmetic (the identity holds pointwise on the spectrum).
inline HermitianMatrix apply_function(const DiscreteMeasure& nu, const SpectralDecomposition& dec) {
  return HermitianMatrix(dec.apply([&nu](double t) { return nu.eval(t); }));
}
inline HermitianMatrix apply_function(const DiscreteMeasure& nu, const HermitianMatrix& a) {
  return apply_function(nu, eigh(a));
}

// Frobenius distance between the two evaluation routes (spectral calculus vs
// the shifted-absolute-value sum); a cross-check of the calculus plumbing.
inline double apply_function_two_route_residual(const DiscreteMeasure& nu,
                                                const HermitianMatrix& a) {
  const SpectralDecomposition dec = eigh(a);
  const ComplexMatrix direct = apply_function(nu, dec).matrix();
  ComplexMatrix summed(a.size(), a.size());
  for (size_t k = 0; k < nu.size(); ++k)
    summed = summed + nu.weights[k] * shifted_abs(dec, nu.atoms[k]).matrix();
  return frobenius_norm(direct - summed);
}

// Distorted variation.  For a finite atomic measure, a partition of the line
// into intervals groups consecutive atoms into blocks; the optimal power
// assignment pays 2^j for the j-th largest |block sum| (empty blocks take the
// unused powers for free).  Merging two blocks replaces |a| 2^p + |b| 2^q by
// |a+b| 2^r with r <= min(p,q) <= both, and |a+b| <= |a|+|b|, so merging never
// raises the paid cost: the singleton partition is maximal and
//   DV = sum_j 2^j * (j-th largest |weight|).
inline double distorted_variation(const DiscreteMeasure& nu) {
  std::vector<double> v(nu.weights);
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end(), std::greater<double>());
  double s = 0.0, p = 1.0;
  for (double x : v) {
    s += p * x;
    p *= 2.0;
  }
  return s;
}

inline constexpr size_t kDvBruteForceCap = 16;

// Exhaustive oracle: max over all 2^(m-1) groupings of consecutive atoms of
// the optimally-permuted dyadic cost.
inline double brute_force_distorted_variation(const DiscreteMeasure& nu) {
  const size_t m = nu.size();
  if (m > kDvBruteForceCap)
    throw InputError("brute_force_distorted_variation: too many atoms for exhaustive search");
  if (m == 0) return 0.0;
  double best = 0.0;
  const uint64_t masks = uint64_t{1} << (m - 1);
  for (uint64_t mask = 0; mask < masks; ++mask) {
    std::vector<double> sums;
    double acc = nu.weights[0];
    for (size_t g = 0; g + 1 < m; ++g) {
      if (mask & (uint64_t{1} << g)) {
        sums.push_back(std::abs(acc));
        acc = nu.weights[g + 1];
      } else {
        acc += nu.weights[g + 1];
      }
    }
    sums.push_back(std::abs(acc));
    std::sort(sums.begin(), sums.end(), std::greater<double>());
    double cost = 0.0, p = 1.0;
    for (double x : sums) {
      cost += p * x;
      p *= 2.0;
    }
    best = std::max(best, cost);
  }
  return best;
}

// Closed form against the exhaustive oracle (skipped above the cap).
inline CheckReport dv_check(const DiscreteMeasure& nu) {
  CheckReport report;
  const double closed = distorted_variation(nu);
  if (nu.size() > kDvBruteForceCap) {
    report.add("distorted-variation-oracle", true, closed, closed,
               "oracle skipped: atom count exceeds brute-force cap");
    return report;
  }
  const double brute = brute_force_distorted_variation(nu);
  report.add("distorted-variation-oracle",
             std::abs(closed - brute) <= 1e-12 * (1.0 + std::abs(brute)), closed, brute);
  return report;
}

// Signed density, piecewise constant on [0,1): cell j spans
// [breaks[j], breaks[j+1]) with the last cell ending at 1.
struct PiecewiseConstantMeasure {
  std::vector<double> breaks;
  std::vector<double> densities;

  PiecewiseConstantMeasure(std::vector<double> breaks_, std::vector<double> densities_)
      : breaks(std::move(breaks_)), densities(std::move(densities_)) {
    if (breaks.empty() || breaks.size() != densities.size())
      throw InputError("PiecewiseConstantMeasure: breaks/densities length mismatch");
    for (size_t j = 0; j < breaks.size(); ++j) {
      if (!std::isfinite(breaks[j]) || !std::isfinite(densities[j]))
        throw InputError("PiecewiseConstantMeasure: entries must be finite");
      if (j > 0 && !(breaks[j] > breaks[j - 1]))
        throw InputError("PiecewiseConstantMeasure: breaks must be strictly increasing");
    }
    if (breaks.front() < 0.0 || breaks.back() >= 1.0)
      throw InputError("PiecewiseConstantMeasure: support must lie in [0,1)");
  }

  double cell_end(size_t j) const { return j + 1 < breaks.size() ? breaks[j + 1] : 1.0; }

  // nu([a, b)).
  double measure_of(double a, double b) const {
    double s = 0.0;
    for (size_t j = 0; j < breaks.size(); ++j) {
      const double lo = std::max(a, breaks[j]);
      const double hi = std::min(b, cell_end(j));
      if (hi > lo) s += densities[j] * (hi - lo);
    }
    return s;
  }
  double total_variation() const {
    double s = 0.0;
    for (size_t j = 0; j < breaks.size(); ++j)
      s += std::abs(densities[j]) * (cell_end(j) - breaks[j]);
    return s;
  }
  // f(t) = integral of |t - s| against the density.
  double eval(double t) const {
    double s = 0.0;
    for (size_t j = 0; j < breaks.size(); ++j) {
      const double a = breaks[j], b = cell_end(j);
      double seg;
      if (t <= a)
        seg = (b - a) * (0.5 * (a + b) - t);
      else if (t >= b)
        seg = (b - a) * (t - 0.5 * (a + b));
      else
        seg = 0.5 * ((t - a) * (t - a) + (b - t) * (b - t));
      s += densities[j] * seg;
    }
    return s;
  }
};

namespace detail {
// Grid cell of width 1/m containing t, robust to the rounding of t*m.
inline int grid_cell(double t, int m) {
  int k = static_cast<int>(std::floor(t * m));
  while (k + 1 < m && t >= static_cast<double>(k + 1) / m) ++k;
  while (k > 0 && t < static_cast<double>(k) / m) --k;
  return std::clamp(k, 0, m - 1);
}
}  // namespace detail

// nu_m = sum_k nu([k/m, (k+1)/m)) delta_{k/m}; zero-weight cells dropped.
inline DiscreteMeasure discretize(const DiscreteMeasure& nu, int m) {
  if (m < 1) throw InputError("discretize: m must be >= 1");
  for (double t : nu.atoms)
    if (t < 0.0 || t >= 1.0) throw InputError("discretize: support must lie in [0,1)");
  std::vector<double> binned(m, 0.0);
  for (size_t k = 0; k < nu.size(); ++k) binned[detail::grid_cell(nu.atoms[k], m)] += nu.weights[k];
  std::vector<double> atoms, weights;
  for (int k = 0; k < m; ++k)
    if (binned[k] != 0.0) {
      atoms.push_back(static_cast<double>(k) / m);
      weights.push_back(binned[k]);
    }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

inline DiscreteMeasure discretize(const PiecewiseConstantMeasure& nu, int m) {
  if (m < 1) throw InputError("discretize: m must be >= 1");
  std::vector<double> atoms, weights;
  for (int k = 0; k < m; ++k) {
    const double w =
        nu.measure_of(static_cast<double>(k) / m, static_cast<double>(k + 1) / m);
    if (w != 0.0) {
      atoms.push_back(static_cast<double>(k) / m);
      weights.push_back(w);
    }
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

// Discretization contracts: sup |f_m - f| <= 2 |nu| / m on a 10m-point grid
// over [-1, 2], and (for atomic input) DV(nu_m) <= DV(nu).
template <typename Measure>
inline CheckReport discretization_checks(const Measure& nu, int m, double slack = kDefaultSlack) {
  CheckReport report;
  const DiscreteMeasure nu_m = discretize(nu, m);
  const double tv = nu.total_variation();
  const double bound = 2.0 * tv / m;
  double worst = 0.0;
  const int grid = 10 * m;
  for (int i = 0; i < grid; ++i) {
    const double t = -1.0 + 3.0 * i / (grid - 1);
    worst = std::max(worst, std::abs(nu_m.eval(t) - nu.eval(t)));
  }
  report.add("discretization-uniform-error", worst <= bound + slack * (1.0 + tv), worst, bound);
  if constexpr (std::is_same_v<Measure, DiscreteMeasure>) {
    const double dv_orig = distorted_variation(nu);
    const double dv_disc = distorted_variation(nu_m);
    report.add("discretization-dv-monotone",
               dv_disc <= dv_orig * (1.0 + slack) + slack * (1.0 + dv_orig), dv_disc, dv_orig);
  }
  return report;
}

// ||sum A_k||_w <= sum_k 2^(k+1) ||A_k||_w, summands taken in the given
// order (iterated weak quasi-triangle inequality).
inline CheckReport weighted_weak_sum_bound(const std::vector<ComplexMatrix>& summands,
                                           double slack = kDefaultSlack) {
  CheckReport report;
  if (summands.empty()) {
    report.add("weighted-weak-sum", true, 0.0, 0.0, "empty sum");
    return report;
  }
  if (summands.size() > 30) throw InputError("weighted_weak_sum_bound: too many summands");
  ComplexMatrix total(summands.front().rows(), summands.front().cols());
  double rhs = 0.0, weight = 2.0, scale = 0.0;
  for (const ComplexMatrix& a : summands) {
    if (a.rows() != total.rows() || a.cols() != total.cols())
      throw InputError("weighted_weak_sum_bound: size mismatch");
    total = total + a;
    rhs += weight * weak_l1_norm(a);
    weight *= 2.0;
    scale += frobenius_norm(a);
  }
  const double lhs = weak_l1_norm(total);
  report.add("weighted-weak-sum", lhs <= rhs * (1.0 + slack) + slack * (1.0 + scale), lhs, rhs);
  return report;
}

// Assembled weak-norm bound for f(A) - f(B): per-atom ratios against c_main,
// the dyadically weighted assembly, and the empirical DV-form ratio.
inline CheckReport theorem_assembled_check(const DiscreteMeasure& nu, const HermitianMatrix& a,
                                           const HermitianMatrix& b,
                                           double slack = kDefaultSlack) {
  if (a.size() != b.size()) throw InputError("theorem_assembled_check: size mismatch");
  const BoundConstants& c = bound_constants();
  CheckReport report;
  const SpectralDecomposition dec_a = eigh(a);
  const SpectralDecomposition dec_b = eigh(b);
  const double l1 = trace_norm(HermitianMatrix(a.matrix() - b.matrix()));
  const double scale = frobenius_norm(a.matrix()) + frobenius_norm(b.matrix());
  const double cushion = slack * (1.0 + scale);

  // Per-atom terms D_k = |A - t_k| - |B - t_k| and their weak norms.
  std::vector<double> term_weak(nu.size());
  ComplexMatrix total(a.size(), a.size());
  for (size_t k = 0; k < nu.size(); ++k) {
    const ComplexMatrix dk =
        shifted_abs(dec_a, nu.atoms[k]).matrix() - shifted_abs(dec_b, nu.atoms[k]).matrix();
    term_weak[k] = weak_l1_norm(HermitianMatrix(dk));
    total = total + nu.weights[k] * dk;
    report.add("shifted-pair-weak-bound[" + std::to_string(k) + "]",
               term_weak[k] <= c.c_main * l1 * (1.0 + slack) + cushion, term_weak[k],
               c.c_main * l1);
  }

  // Assembly with |weights| sorted nonincreasing against the dyadic chain.
  std::vector<double> w(nu.weights);
  for (double& x : w) x = std::abs(x);
  std::sort(w.begin(), w.end(), std::greater<double>());
  double dyadic = 0.0, p = 2.0;
  for (double x : w) {
    dyadic += p * x;
    p *= 2.0;
  }
  const double lhs = weak_l1_norm(HermitianMatrix(total));
  const double rhs = dyadic * c.c_main * l1;
  report.add("assembled-function-bound", lhs <= rhs * (1.0 + slack) + cushion, lhs, rhs);

  const double dv = distorted_variation(nu);
  const double dv_ratio = (dv > 0.0 && l1 > 0.0) ? lhs / (dv * l1) : 0.0;
  report.add("dv-form-ratio", dv_ratio <= 2.0 * c.c_main * (1.0 + slack) + slack, dv_ratio,
             2.0 * c.c_main, "empirical ratio lhs / (DV * l1)");
  return report;
}

}  // namespace opweak
