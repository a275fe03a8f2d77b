#pragma once

// Counter-based deterministic randomness.  Every draw is a pure function of
// (key, counter), where the key is derived from (master seed, stream index)
// by the SplitMix64 finalizer.  Substreams never overlap and results do not
// depend on evaluation order, so trials can run concurrently.

#include <cstdint>
#include <cmath>
#include <numbers>
#include <vector>

#include "opweak/matrix.hpp"

namespace opweak {

namespace detail {
inline uint64_t splitmix64_finalize(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  // Substream key for trial `stream` of master seed `master`.
  static uint64_t derive_key(uint64_t master, uint64_t stream) {
    return detail::splitmix64_finalize(detail::splitmix64_finalize(master) ^
                                       (stream * 0xda942042e4dd58b5ULL + 1));
  }
  static CounterRng substream(uint64_t master, uint64_t stream) {
    return CounterRng(derive_key(master, stream));
  }

  uint64_t key() const { return key_; }

  uint64_t next_u64() { return detail::splitmix64_finalize(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0, 1), 53-bit mantissa.
  double next_uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the log argument is kept away from 0.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

  cplx next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return cplx(re, im) * std::sqrt(0.5);
  }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// GUE-like Hermitian sample with operator norm of order one.
inline HermitianMatrix random_hermitian(int n, CounterRng& rng) {
  ComplexMatrix g(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::max(1, n)));
  for (int i = 0; i < n; ++i) {
    g(i, i) = rng.next_gaussian() * scale;
    for (int j = i + 1; j < n; ++j) {
      const cplx z = rng.next_complex_gaussian() * scale;
      g(i, j) = z;
      g(j, i) = std::conj(z);
    }
  }
  return HermitianMatrix(g);
}

// Haar-like random unitary: QR of a complex Gaussian matrix by modified
// Gram-Schmidt, with the diagonal phase fixed so the result is a
// deterministic function of the draw.
inline ComplexMatrix random_unitary(int n, CounterRng& rng) {
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.next_complex_gaussian();
  // Orthonormalize columns.
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (int i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
    }
    // Second orthogonalization pass for numerical orthogonality.
    for (int k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (int i = 0; i < n; ++i) dot += std::conj(g(i, k)) * g(i, j);
      for (int i = 0; i < n; ++i) g(i, j) -= dot * g(i, k);
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    if (nrm < 1e-150) {
      // Degenerate draw; replace by a basis vector (cannot happen in practice).
      for (int i = 0; i < n; ++i) g(i, j) = (i == j) ? 1.0 : 0.0;
      nrm = 1.0;
    }
    // Fix the phase of the leading entry.
    cplx lead = 0.0;
    for (int i = 0; i < n; ++i)
      if (std::abs(g(i, j)) > 1e-14 * nrm) {
        lead = g(i, j);
        break;
      }
    const cplx phase = (lead == cplx(0.0, 0.0)) ? cplx(1.0, 0.0) : std::conj(lead) / std::abs(lead);
    for (int i = 0; i < n; ++i) g(i, j) = g(i, j) * phase / nrm;
  }
  return g;
}

inline std::vector<double> random_unit_vector_weights(int n, CounterRng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_gaussian();
  return v;
}

}  // namespace opweak
