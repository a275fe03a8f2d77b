#pragma once

// Entrywise (Hadamard) products, Schur multiplication with a positive symbol,
// the block form over an orthogonal projection family, and the two structured
// positive matrices built from a decreasing positive sequence together with
// the rank-truncated decomposition that certifies positivity.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "opweak/constants.hpp"
#include "opweak/eig.hpp"
#include "opweak/matrix.hpp"

namespace opweak {

// Strictly positive, nonincreasing coefficient sequence.
struct DecreasingPositiveSeq {
  std::vector<double> alpha;

  explicit DecreasingPositiveSeq(std::vector<double> a) : alpha(std::move(a)) {
    if (alpha.empty()) throw InputError("DecreasingPositiveSeq: empty sequence");
    for (size_t k = 0; k < alpha.size(); ++k) {
      if (!(alpha[k] > 0.0) || !std::isfinite(alpha[k]))
        throw InputError("DecreasingPositiveSeq: entries must be strictly positive");
      if (k > 0 && alpha[k] > alpha[k - 1])
        throw InputError("DecreasingPositiveSeq: entries must be nonincreasing");
    }
  }
  int size() const { return static_cast<int>(alpha.size()); }
  double operator[](size_t k) const { return alpha[k]; }
};

inline ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InputError("hadamard: shape mismatch");
  ComplexMatrix r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
  return r;
}

// Entries 1/(alpha_k + alpha_l).
inline HermitianMatrix cauchy_matrix(const DecreasingPositiveSeq& alpha) {
  const int n = alpha.size();
  ComplexMatrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) m(k, l) = 1.0 / (alpha[k] + alpha[l]);
  return HermitianMatrix(m);
}

// Entries alpha_max(k,l) / (alpha_k + alpha_l); diagonal identically 1/2.
inline HermitianMatrix phi_matrix(const DecreasingPositiveSeq& alpha) {
  const int n = alpha.size();
  ComplexMatrix m(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) m(k, l) = alpha[std::max(k, l)] / (alpha[k] + alpha[l]);
  return HermitianMatrix(m);
}

struct PhiTerm {
  double coefficient;      // nonnegative gap (or the trailing alpha_{n-1})
  HermitianMatrix matrix;  // positive semidefinite factor
};

// The telescoping decomposition of phi_matrix into manifestly positive terms:
// n terms, the k-th (k < n-1) being (alpha_k - alpha_{k+1}) * P_k Phi1 P_k
// where P_k keeps the leading k+1 coordinates, plus the trailing
// alpha_{n-1} * Phi1.  Sum of coefficient*matrix reconstructs phi_matrix.
inline std::vector<PhiTerm> phi_decomposition(const DecreasingPositiveSeq& alpha) {
  const int n = alpha.size();
  const HermitianMatrix phi1 = cauchy_matrix(alpha);
  std::vector<PhiTerm> terms;
  terms.reserve(n);
  for (int k = 0; k + 1 < n; ++k) {
    ComplexMatrix cut(n, n);  // leading (k+1)x(k+1) corner of Phi1
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) cut(i, j) = phi1(i, j);
    terms.push_back(PhiTerm{alpha[k] - alpha[k + 1], HermitianMatrix(cut)});
  }
  terms.push_back(PhiTerm{alpha[n - 1], phi1});
  return terms;
}

struct PsdVerdict {
  bool psd;
  double lambda_min;
};

// lambda_min(A) >= -tol * max(1, ||A||_inf)?
inline PsdVerdict is_psd(const HermitianMatrix& a, double tol) {
  const std::vector<double> ev = eigh(a).eigenvalues;
  double lo = 0.0, hi = 0.0;
  for (double v : ev) {
    lo = std::min(lo, v);
    hi = std::max(hi, std::abs(v));
  }
  return PsdVerdict{lo >= -tol * std::max(1.0, hi), lo};
}

namespace detail {
// Unit vector x with p = x x*, for a rank-1 orthogonal projection p.
inline std::vector<cplx> rank1_direction(const ComplexMatrix& p, double tol, const char* who) {
  require_square(p, who);
  const int n = p.rows();
  int jbest = 0;
  double dbest = -1.0;
  for (int j = 0; j < n; ++j) {
    const double d = p(j, j).real();
    if (d > dbest) {
      dbest = d;
      jbest = j;
    }
  }
  if (dbest <= tol) throw InputError(std::string(who) + ": projection has no support");
  std::vector<cplx> x(n);
  const double s = 1.0 / std::sqrt(dbest);
  for (int i = 0; i < n; ++i) x[i] = p(i, jbest) * s;
  // Verify p = x x* (self-adjointness, idempotence and rank 1 all at once).
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) err += std::norm(p(i, j) - x[i] * std::conj(x[j]));
  if (std::sqrt(err) > tol * n)
    throw InputError(std::string(who) + ": input is not a rank-1 orthogonal projection");
  return x;
}
}  // namespace detail

// Checks that the given family is mutually orthogonal rank-1 projections and
// returns the matrix whose columns are their unit directions.
inline ComplexMatrix projection_family_isometry(const std::vector<ComplexMatrix>& projections,
                                                double tol = 1e-10) {
  if (projections.empty()) throw InputError("projection family: empty");
  const int n = projections.front().rows();
  ComplexMatrix x(n, static_cast<int>(projections.size()));
  for (size_t k = 0; k < projections.size(); ++k) {
    if (projections[k].rows() != n || projections[k].cols() != n)
      throw InputError("projection family: inconsistent sizes");
    const std::vector<cplx> dir = detail::rank1_direction(projections[k], tol, "projection family");
    for (int i = 0; i < n; ++i) x(i, static_cast<int>(k)) = dir[i];
  }
  // Mutual orthogonality: X*X = I.
  const ComplexMatrix gram = adjoint(x) * x;
  double err = 0.0;
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j)
      err += std::norm(gram(i, j) - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0)));
  if (std::sqrt(err) > tol * n)
    throw InputError("projection family: projections are not mutually orthogonal");
  return x;
}

// sum_{i,j} B_{i,j} p_i X p_j for a family of mutually orthogonal projections
// (arbitrary ranks).  With rank-1 standard basis projections this is exactly
// hadamard(B, X).
inline ComplexMatrix block_schur(const ComplexMatrix& bmat,
                                 const std::vector<ComplexMatrix>& projections,
                                 const ComplexMatrix& x, double tol = 1e-10) {
  require_square(bmat, "block_schur");
  const size_t m = projections.size();
  if (static_cast<size_t>(bmat.rows()) != m)
    throw InputError("block_schur: symbol size must match projection count");
  if (m == 0) throw InputError("block_schur: empty projection family");
  const int n = projections.front().rows();
  if (x.rows() != n || x.cols() != n) throw InputError("block_schur: operand size mismatch");

  // Validate the family: self-adjoint, idempotent, mutually orthogonal.
  for (size_t i = 0; i < m; ++i) {
    const ComplexMatrix& p = projections[i];
    if (p.rows() != n || p.cols() != n) throw InputError("block_schur: projection size mismatch");
    if (frobenius_norm(p - adjoint(p)) > tol * n)
      throw InputError("block_schur: projection not self-adjoint");
    if (frobenius_norm(p * p - p) > tol * n)
      throw InputError("block_schur: projection not idempotent");
    for (size_t j = i + 1; j < m; ++j)
      if (frobenius_norm(p * projections[j]) > tol * n)
        throw InputError("block_schur: projections not mutually orthogonal");
  }

  // sum_i (p_i X) (sum_j B_{i,j} p_j): two products per i instead of m.
  ComplexMatrix out(n, n);
  for (size_t i = 0; i < m; ++i) {
    ComplexMatrix right(n, n);
    for (size_t j = 0; j < m; ++j) {
      const cplx w = bmat(static_cast<int>(i), static_cast<int>(j));
      if (w == cplx(0.0, 0.0)) continue;
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) right(r, c) += w * projections[j](r, c);
    }
    const ComplexMatrix term = (projections[i] * x) * right;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out(r, c) += term(r, c);
  }
  return out;
}

}  // namespace opweak
