#pragma once

// Dense complex matrices and the handful of structural operations the rest
// of the library builds on: adjoints, products, Kronecker products and
// direct sums, Frobenius/entrywise norms.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace opweak {

using cplx = std::complex<double>;

// Thrown on malformed input (shape mismatch, non-finite entries, bad flags).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative kernel fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw InputError("negative matrix dimension");
  }

  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(const std::vector<double>& d) {
    ComplexMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  cplx* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }
  const cplx* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }

  bool all_finite() const {
    for (const cplx& z : a_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

inline void require_finite(const ComplexMatrix& m, const char* who) {
  if (!m.all_finite()) throw InputError(std::string(who) + ": non-finite matrix entry");
}

inline void require_square(const ComplexMatrix& m, const char* who) {
  if (!m.square()) throw InputError(std::string(who) + ": matrix must be square");
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
  return r;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix r(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("operator+: shape mismatch");
  ComplexMatrix r(a.rows(), a.cols());
  const size_t n = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t k = 0; k < n; ++k) r.data()[k] = a.data()[k] + b.data()[k];
  return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("operator-: shape mismatch");
  ComplexMatrix r(a.rows(), a.cols());
  const size_t n = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t k = 0; k < n; ++k) r.data()[k] = a.data()[k] - b.data()[k];
  return r;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
  ComplexMatrix r(a.rows(), a.cols());
  const size_t n = static_cast<size_t>(a.rows()) * a.cols();
  for (size_t k = 0; k < n; ++k) r.data()[k] = s * a.data()[k];
  return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& a) { return cplx(s, 0.0) * a; }

// Plain triple-loop product; sizes here stay <= a few hundred.
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("operator*: inner dimension mismatch");
  ComplexMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    cplx* ri = r.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* bk = b.row(k);
      for (int j = 0; j < b.cols(); ++j) ri[j] += aik * bk[j];
    }
  }
  return r;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  const size_t n = static_cast<size_t>(m.rows()) * m.cols();
  for (size_t k = 0; k < n; ++k) s += std::norm(m.data()[k]);
  return std::sqrt(s);
}

inline double max_abs_entry(const ComplexMatrix& m) {
  double s = 0.0;
  const size_t n = static_cast<size_t>(m.rows()) * m.cols();
  for (size_t k = 0; k < n; ++k) s = std::max(s, std::abs(m.data()[k]));
  return s;
}

inline cplx trace(const ComplexMatrix& m) {
  require_square(m, "trace");
  cplx t = 0.0;
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Construction tolerance for self-adjointness, relative to the Frobenius norm.
inline constexpr double kHermitianTol = 1e-12;

// Square matrix certified self-adjoint: construction symmetrizes via
// (A + A*)/2 and rejects inputs whose anti-Hermitian part is not negligible.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& a) {
    require_square(a, "HermitianMatrix");
    require_finite(a, "HermitianMatrix");
    const int n = a.rows();
    m_ = ComplexMatrix(n, n);
    double skew2 = 0.0, norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const cplx sym = 0.5 * (a(i, j) + std::conj(a(j, i)));
        const cplx skew = a(i, j) - std::conj(a(j, i));
        m_(i, j) = sym;
        skew2 += std::norm(skew);
        norm2 += std::norm(a(i, j));
      }
    }
    if (std::sqrt(skew2) > kHermitianTol * std::max(1.0, std::sqrt(norm2)))
      throw InputError("HermitianMatrix: input is not self-adjoint within tolerance");
    for (int i = 0; i < n; ++i) m_(i, i) = cplx(m_(i, i).real(), 0.0);
  }

  static HermitianMatrix diagonal(const std::vector<double>& d) {
    return HermitianMatrix(ComplexMatrix::diagonal(d));
  }
  static HermitianMatrix zero(int n) { return HermitianMatrix(ComplexMatrix(n, n)); }
  static HermitianMatrix identity(int n) { return HermitianMatrix(ComplexMatrix::identity(n)); }

  int size() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(int i, int j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

// Largest tensor/direct-sum dimension the library will materialize.
inline constexpr int kMaxDimension = 4096;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const long rr = static_cast<long>(a.rows()) * b.rows();
  const long cc = static_cast<long>(a.cols()) * b.cols();
  if (rr > kMaxDimension || cc > kMaxDimension)
    throw InputError("kron: product dimension exceeds limit");
  ComplexMatrix r(static_cast<int>(rr), static_cast<int>(cc));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

inline ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw InputError("direct_sum: need at least one block");
  long rr = 0, cc = 0;
  for (const auto& b : blocks) {
    rr += b.rows();
    cc += b.cols();
  }
  if (rr > kMaxDimension || cc > kMaxDimension)
    throw InputError("direct_sum: total dimension exceeds limit");
  ComplexMatrix r(static_cast<int>(rr), static_cast<int>(cc));
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r(ro + i, co + j) = b(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

}  // namespace opweak
