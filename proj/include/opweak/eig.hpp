#pragma once

// Hermitian eigensolver (cyclic Jacobi with complex rotations) plus the
// spectral-calculus helpers built on top of it: spectral functions,
// positive/negative parts, support projections, singular values, and
// unitary exponentials.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "opweak/matrix.hpp"

namespace opweak {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // nonincreasing
  ComplexMatrix vectors;            // unitary; column k pairs with eigenvalues[k]

  int size() const { return static_cast<int>(eigenvalues.size()); }

  // Q f(Lambda) Q*.
  template <typename F>
  ComplexMatrix apply(F&& f) const {
    const int n = size();
    ComplexMatrix scaled = vectors;
    for (int k = 0; k < n; ++k) {
      const double fk = f(eigenvalues[k]);
      for (int i = 0; i < n; ++i) scaled(i, k) *= fk;
    }
    return scaled * adjoint(vectors);
  }

  ComplexMatrix reconstruct() const {
    return apply([](double x) { return x; });
  }
};

namespace detail {

// One two-sided rotation J*AJ in the (p,q) plane, with J(p,p)=J(q,q)=c,
// J(p,q)=w, J(q,p)=-conj(w).  Annihilates A(p,q); Q accumulates J on the
// right.
inline void jacobi_rotate(cplx* a, cplx* q, int n, int p, int r) {
  const cplx apr = a[p * n + r];
  const double abs_apr = std::abs(apr);
  const double app = a[p * n + p].real();
  const double arr = a[r * n + r].real();

  const double tau = (arr - app) / (2.0 * abs_apr);
  const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx w = (s / abs_apr) * apr;  // s * e^{i arg(apr)}
  const cplx wconj = std::conj(w);

  cplx* rowp = a + static_cast<size_t>(p) * n;
  cplx* rowr = a + static_cast<size_t>(r) * n;
  for (int j = 0; j < n; ++j) {
    const cplx x = rowp[j];
    const cplx y = rowr[j];
    rowp[j] = c * x - w * y;
    rowr[j] = wconj * x + c * y;
  }
  for (int i = 0; i < n; ++i) {
    cplx* row = a + static_cast<size_t>(i) * n;
    const cplx x = row[p];
    const cplx y = row[r];
    row[p] = c * x - wconj * y;
    row[r] = w * x + c * y;
  }
  // The updated pivot entries are known in closed form; writing them directly
  // keeps the working matrix exactly Hermitian.
  a[p * n + p] = app - t * abs_apr;
  a[r * n + r] = arr + t * abs_apr;
  a[p * n + r] = 0.0;
  a[r * n + p] = 0.0;

  for (int i = 0; i < n; ++i) {
    cplx* row = q + static_cast<size_t>(i) * n;
    const cplx x = row[p];
    const cplx y = row[r];
    row[p] = c * x - wconj * y;
    row[r] = w * x + c * y;
  }
}

inline double offdiag_norm(const cplx* a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) sum += std::norm(a[static_cast<size_t>(i) * n + j]);
  return std::sqrt(sum);
}

}  // namespace detail

inline constexpr double kJacobiTol = 1e-14;
inline constexpr int kJacobiMaxSweeps = 40;

inline SpectralDecomposition eigh(const HermitianMatrix& h) {
  const int n = h.size();
  ComplexMatrix work = h.matrix();
  ComplexMatrix qmat = ComplexMatrix::identity(n);
  cplx* a = work.data();
  cplx* q = qmat.data();

  const double fro = frobenius_norm(work);
  const double thresh = kJacobiTol * fro;
  const double skip = 1e-20 * fro;

  bool converged = (fro == 0.0) || (n < 2);
  for (int sweep = 0; !converged && sweep < kJacobiMaxSweeps; ++sweep) {
    if (detail::offdiag_norm(a, n) <= thresh) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int r = p + 1; r < n; ++r)
        if (std::abs(a[static_cast<size_t>(p) * n + r]) > skip)
          detail::jacobi_rotate(a, q, n, p, r);
  }
  if (!converged && detail::offdiag_norm(a, n) > thresh) {
    throw ConvergenceError("jacobi eigensolver did not converge within " +
                               std::to_string(kJacobiMaxSweeps) + " sweeps",
                           detail::offdiag_norm(a, n));
  }

  std::vector<double> evals(n);
  for (int i = 0; i < n; ++i) evals[i] = a[static_cast<size_t>(i) * n + i].real();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&evals](int x, int y) { return evals[x] > evals[y]; });

  SpectralDecomposition dec;
  dec.eigenvalues.resize(n);
  dec.vectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    dec.eigenvalues[k] = evals[order[k]];
    for (int i = 0; i < n; ++i) dec.vectors(i, k) = qmat(i, order[k]);
  }
  return dec;
}

inline SpectralDecomposition eigh(const ComplexMatrix& m) { return eigh(HermitianMatrix(m)); }

inline std::vector<double> eigenvalues_of(const HermitianMatrix& h) { return eigh(h).eigenvalues; }

// Singular values of a general matrix, nonincreasing, via the smaller Gram
// matrix: eigenvalues are clamped at zero before the square root.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
  require_finite(m, "singular_values");
  const int r = m.rows();
  const int c = m.cols();
  const ComplexMatrix gram = (r <= c) ? m * adjoint(m) : adjoint(m) * m;
  SpectralDecomposition dec = eigh(HermitianMatrix(gram));
  std::vector<double> sv(dec.eigenvalues.size());
  for (size_t k = 0; k < sv.size(); ++k) sv[k] = std::sqrt(std::max(0.0, dec.eigenvalues[k]));
  return sv;
}

inline HermitianMatrix abs_of(const SpectralDecomposition& dec) {
  return HermitianMatrix(dec.apply([](double x) { return std::abs(x); }));
}
inline HermitianMatrix abs_of(const HermitianMatrix& h) { return abs_of(eigh(h)); }

inline HermitianMatrix positive_part(const SpectralDecomposition& dec) {
  return HermitianMatrix(dec.apply([](double x) { return std::max(x, 0.0); }));
}
inline HermitianMatrix positive_part(const HermitianMatrix& h) { return positive_part(eigh(h)); }

inline HermitianMatrix negative_part(const SpectralDecomposition& dec) {
  return HermitianMatrix(dec.apply([](double x) { return std::max(-x, 0.0); }));
}
inline HermitianMatrix negative_part(const HermitianMatrix& h) { return negative_part(eigh(h)); }

// |A - tI| via spectral calculus.
inline HermitianMatrix shifted_abs(const SpectralDecomposition& dec, double t) {
  return HermitianMatrix(dec.apply([t](double x) { return std::abs(x - t); }));
}
inline HermitianMatrix shifted_abs(const HermitianMatrix& h, double t) {
  return shifted_abs(eigh(h), t);
}

// Orthogonal projection onto the span of eigenvectors with |eigenvalue| > eps.
// The default cutoff scales with the dimension and the spectral radius.
inline double default_support_eps(const SpectralDecomposition& dec) {
  double radius = 0.0;
  for (double v : dec.eigenvalues) radius = std::max(radius, std::abs(v));
  return static_cast<double>(dec.size()) * 1e-12 * radius;
}

inline HermitianMatrix support_projection(const SpectralDecomposition& dec, double eps) {
  return HermitianMatrix(dec.apply([eps](double x) { return std::abs(x) > eps ? 1.0 : 0.0; }));
}
inline HermitianMatrix support_projection(const SpectralDecomposition& dec) {
  return support_projection(dec, default_support_eps(dec));
}
inline HermitianMatrix support_projection(const HermitianMatrix& h) {
  return support_projection(eigh(h));
}

// Q diag(vals) Q* — reassemble a matrix from an eigenbasis and a replacement
// spectrum (positionally matched to the decomposition's columns).
inline ComplexMatrix assemble_spectrum(const SpectralDecomposition& dec,
                                       const std::vector<double>& vals) {
  if (vals.size() != dec.eigenvalues.size())
    throw InputError("assemble_spectrum: spectrum length mismatch");
  const int n = dec.size();
  ComplexMatrix scaled = dec.vectors;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) scaled(i, k) *= vals[k];
  return scaled * adjoint(dec.vectors);
}

// e^{i t B} for Hermitian B.
inline ComplexMatrix unitary_exp(const SpectralDecomposition& dec, double t) {
  const int n = dec.size();
  ComplexMatrix scaled = dec.vectors;
  for (int k = 0; k < n; ++k) {
    const cplx ph = std::polar(1.0, t * dec.eigenvalues[k]);
    for (int i = 0; i < n; ++i) scaled(i, k) *= ph;
  }
  return scaled * adjoint(dec.vectors);
}
inline ComplexMatrix unitary_exp(const HermitianMatrix& b, double t) {
  return unitary_exp(eigh(b), t);
}

}  // namespace opweak
