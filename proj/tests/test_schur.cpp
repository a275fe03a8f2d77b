// Entrywise (Schur) products, the normalized reciprocal-sum kernels, their
// positive corner decomposition, and the block multiplier.

#include <catch_amalgamated.hpp>

#include <cmath>

#include "opweak/norms.hpp"
#include "opweak/rng.hpp"
#include "opweak/schur.hpp"

using namespace opweak;

TEST_CASE("decreasing positive sequence validation") {
  CHECK_NOTHROW(DecreasingPositiveSeq({2.0, 1.0, 1.0, 0.5}));
  CHECK_THROWS_AS(DecreasingPositiveSeq({}), InputError);
  CHECK_THROWS_AS(DecreasingPositiveSeq({1.0, 2.0}), InputError);
  CHECK_THROWS_AS(DecreasingPositiveSeq({1.0, 0.0}), InputError);
  CHECK_THROWS_AS(DecreasingPositiveSeq({1.0, -0.5}), InputError);
}

TEST_CASE("reciprocal-sum kernel at alpha = (2, 1)") {
  const DecreasingPositiveSeq alpha({2.0, 1.0});
  const HermitianMatrix c1 = cauchy_matrix(alpha);
  CHECK(c1(0, 0).real() == Catch::Approx(0.25).margin(1e-15));
  CHECK(c1(0, 1).real() == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(c1(1, 1).real() == Catch::Approx(0.5).margin(1e-15));

  const HermitianMatrix phi = phi_matrix(alpha);
  CHECK(phi(0, 0).real() == Catch::Approx(0.5).margin(1e-15));
  CHECK(phi(0, 1).real() == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(phi(1, 0).real() == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(phi(1, 1).real() == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("corner decomposition at alpha = (2, 1)") {
  const DecreasingPositiveSeq alpha({2.0, 1.0});
  const auto terms = phi_decomposition(alpha);
  REQUIRE(terms.size() == 2);
  // first term: (alpha_0 - alpha_1) * leading 1x1 corner of the kernel
  CHECK(terms[0].coefficient == Catch::Approx(1.0).margin(1e-15));
  CHECK(terms[0].matrix(0, 0).real() == Catch::Approx(0.25).margin(1e-15));
  CHECK(terms[0].matrix(0, 1).real() == 0.0);
  CHECK(terms[0].matrix(1, 1).real() == 0.0);
  // trailing term: alpha_1 * full kernel
  CHECK(terms[1].coefficient == Catch::Approx(1.0).margin(1e-15));
  CHECK(terms[1].matrix(0, 1).real() == Catch::Approx(1.0 / 3.0).margin(1e-15));
  // sum reproduces the normalized kernel
  const HermitianMatrix phi = phi_matrix(alpha);
  ComplexMatrix sum = ComplexMatrix::zero(2, 2);
  for (const PhiTerm& t : terms) sum = sum + t.coefficient * t.matrix.matrix();
  CHECK(frobenius_norm(sum - phi.matrix()) <= 1e-15);
}

TEST_CASE("corner decomposition at alpha = (3, 2, 1), frozen entries") {
  const DecreasingPositiveSeq alpha({3.0, 2.0, 1.0});
  const auto terms = phi_decomposition(alpha);
  REQUIRE(terms.size() == 3);
  // gaps (1, 1) and trailing value 1
  CHECK(terms[0].coefficient == Catch::Approx(1.0).margin(1e-15));
  CHECK(terms[1].coefficient == Catch::Approx(1.0).margin(1e-15));
  CHECK(terms[2].coefficient == Catch::Approx(1.0).margin(1e-15));
  // leading corners keep k+1 rows/columns of the base kernel
  CHECK(terms[0].matrix(0, 0).real() == Catch::Approx(1.0 / 6.0).margin(1e-15));
  CHECK(terms[0].matrix(1, 1).real() == 0.0);
  CHECK(terms[1].matrix(0, 1).real() == Catch::Approx(1.0 / 5.0).margin(1e-15));
  CHECK(terms[1].matrix(1, 1).real() == Catch::Approx(1.0 / 4.0).margin(1e-15));
  CHECK(terms[1].matrix(2, 2).real() == 0.0);
  CHECK(terms[2].matrix(0, 2).real() == Catch::Approx(1.0 / 4.0).margin(1e-15));
  // entrywise reconstruction identities for the normalized kernel
  const HermitianMatrix phi = phi_matrix(alpha);
  CHECK(phi(0, 0).real() == Catch::Approx(0.5).margin(1e-15));
  CHECK(phi(0, 1).real() == Catch::Approx(2.0 / 5.0).margin(1e-15));
  CHECK(phi(0, 2).real() == Catch::Approx(0.25).margin(1e-15));
  CHECK(phi(1, 2).real() == Catch::Approx(1.0 / 3.0).margin(1e-15));
  ComplexMatrix sum = ComplexMatrix::zero(3, 3);
  for (const PhiTerm& t : terms) sum = sum + t.coefficient * t.matrix.matrix();
  CHECK(frobenius_norm(sum - phi.matrix()) <= 1e-15);
}

TEST_CASE("corner decomposition: random reconstruction with PSD terms") {
  for (int t = 0; t < 30; ++t) {
    CounterRng rng = CounterRng::substream(222, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 16);
    std::vector<double> a(n);
    a[n - 1] = 0.05 + rng.next_uniform();
    for (int k = n - 2; k >= 0; --k) a[k] = a[k + 1] + rng.next_uniform();
    const DecreasingPositiveSeq alpha(a);
    const auto terms = phi_decomposition(alpha);
    ComplexMatrix sum = ComplexMatrix::zero(n, n);
    for (const PhiTerm& term : terms) {
      sum = sum + term.coefficient * term.matrix.matrix();
      CHECK(term.coefficient >= 0.0);
      CHECK(is_psd(term.matrix, 1e-10).psd);
    }
    const HermitianMatrix phi = phi_matrix(alpha);
    CHECK(frobenius_norm(sum - phi.matrix()) <=
          1e-12 * n * std::max(1.0, frobenius_norm(phi.matrix())));
  }
}

TEST_CASE("hadamard product basics and PSD closure") {
  ComplexMatrix a(2, 2), b(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = cplx(1, 1);
  a(1, 0) = cplx(1, -1);
  a(1, 1) = 3.0;
  b(0, 0) = 1.0;
  b(0, 1) = cplx(0, 2);
  b(1, 0) = cplx(0, -2);
  b(1, 1) = 5.0;
  const ComplexMatrix h = hadamard(a, b);
  CHECK(h(0, 0) == cplx(2.0));
  CHECK(h(0, 1) == a(0, 1) * b(0, 1));
  CHECK(h(1, 1) == cplx(15.0));
  CHECK_THROWS_AS(hadamard(a, ComplexMatrix(3, 3)), InputError);

  for (int t = 0; t < 25; ++t) {
    CounterRng rng = CounterRng::substream(333, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 10);
    ComplexMatrix g1(n, n), g2(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g1(i, j) = rng.next_complex_gaussian();
        g2(i, j) = rng.next_complex_gaussian();
      }
    const ComplexMatrix p1 = g1 * adjoint(g1), p2 = g2 * adjoint(g2);
    CHECK(is_psd(HermitianMatrix(hadamard(p1, p2)), 1e-10).psd);
  }
}

TEST_CASE("entrywise multiplier trace-norm bound") {
  for (int t = 0; t < 40; ++t) {
    CounterRng rng = CounterRng::substream(444, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 12);
    ComplexMatrix g(n, n), x(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g(i, j) = rng.next_complex_gaussian();
        x(i, j) = rng.next_complex_gaussian();
      }
    const ComplexMatrix sym = g * adjoint(g);  // PSD multiplier symbol
    double maxdiag = 0.0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, sym(i, i).real());
    CHECK(trace_norm(hadamard(sym, x)) <= 4.0 * maxdiag * trace_norm(x) * (1.0 + 1e-9));
    const ComplexMatrix xp = x * adjoint(x);  // PSD argument: factor 1
    CHECK(trace_norm(hadamard(sym, xp)) <= maxdiag * trace_norm(xp) * (1.0 + 1e-9));
  }
}

TEST_CASE("projection family isometry and validation") {
  CounterRng rng = CounterRng::substream(555, 0);
  const int n = 6;
  const ComplexMatrix q = random_unitary(n, rng);
  std::vector<ComplexMatrix> projections;
  for (int k = 0; k < 4; ++k) {  // rank-1 projections onto four unitary columns
    ComplexMatrix col(n, 1);
    for (int r = 0; r < n; ++r) col(r, 0) = q(r, k);
    projections.push_back(col * adjoint(col));
  }
  const ComplexMatrix iso = projection_family_isometry(projections);
  REQUIRE(iso.cols() == 4);
  CHECK(frobenius_norm(adjoint(iso) * iso - ComplexMatrix::identity(4)) <= 1e-10 * n);

  // higher-rank input must be rejected (the isometry wants one direction each)
  ComplexMatrix two(n, 2);
  for (int r = 0; r < n; ++r) {
    two(r, 0) = q(r, 4);
    two(r, 1) = q(r, 5);
  }
  CHECK_THROWS_AS(projection_family_isometry({two * adjoint(two)}), InputError);

  // overlapping directions must be rejected
  std::vector<ComplexMatrix> bad{projections[0], projections[0]};
  CHECK_THROWS_AS(projection_family_isometry(bad), InputError);
}

TEST_CASE("block multiplier with rank-one standard projections equals hadamard") {
  const int n = 3;
  CounterRng rng = CounterRng::substream(666, 0);
  ComplexMatrix g(n, n), x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g(i, j) = rng.next_complex_gaussian();
      x(i, j) = rng.next_complex_gaussian();
    }
  const ComplexMatrix sym = g * adjoint(g);
  std::vector<ComplexMatrix> basis_projections;
  for (int i = 0; i < n; ++i) {
    ComplexMatrix p(n, n);
    p(i, i) = 1.0;
    basis_projections.push_back(p);
  }
  const ComplexMatrix via_blocks = block_schur(sym, basis_projections, x);
  CHECK(frobenius_norm(via_blocks - hadamard(sym, x)) <= 1e-12);
}

TEST_CASE("block multiplier keeps positivity and the trace bound") {
  for (int t = 0; t < 20; ++t) {
    CounterRng rng = CounterRng::substream(777, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 8);
    const int m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(n));
    const ComplexMatrix q = random_unitary(n, rng);
    std::vector<int> sizes(m, 1);
    for (int extra = n - m; extra > 0; --extra) sizes[rng.next_u64() % m] += 1;
    std::vector<ComplexMatrix> projections;
    int col = 0;
    for (int i = 0; i < m; ++i) {
      ComplexMatrix block(n, sizes[i]);
      for (int c = 0; c < sizes[i]; ++c)
        for (int r = 0; r < n; ++r) block(r, c) = q(r, col + c);
      col += sizes[i];
      projections.push_back(block * adjoint(block));
    }
    ComplexMatrix gm(m, m), x(n, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gm(i, j) = rng.next_complex_gaussian();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = rng.next_complex_gaussian();
    const ComplexMatrix sym = gm * adjoint(gm);
    double maxdiag = 0.0;
    for (int i = 0; i < m; ++i) maxdiag = std::max(maxdiag, sym(i, i).real());

    CHECK(trace_norm(block_schur(sym, projections, x)) <=
          4.0 * maxdiag * trace_norm(x) * (1.0 + 1e-9));
    const ComplexMatrix xp = x * adjoint(x);
    CHECK(is_psd(HermitianMatrix(block_schur(sym, projections, xp)), 1e-9).psd);
  }
}

TEST_CASE("is_psd detects an indefinite matrix") {
  CHECK_FALSE(is_psd(HermitianMatrix::diagonal({1.0, -0.5}), 1e-10).psd);
  CHECK(is_psd(HermitianMatrix::diagonal({1.0, 0.0}), 1e-10).psd);
}
