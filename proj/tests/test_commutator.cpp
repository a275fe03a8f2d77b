// Commutator transfer checks: the weak bound for [|A|, B], the unitary
// conjugation series, and the first-order differentiation limit.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "opweak/commutator.hpp"
#include "opweak/norms.hpp"
#include "opweak/rng.hpp"

using namespace opweak;

TEST_CASE("commutator of frozen matrices") {
  const ComplexMatrix d = ComplexMatrix::diagonal({1.0, -1.0});
  ComplexMatrix flip(2, 2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const ComplexMatrix c = commutator(d, flip);
  CHECK(c(0, 0) == cplx(0.0));
  CHECK(c(0, 1) == cplx(2.0));
  CHECK(c(1, 0) == cplx(-2.0));
  CHECK(c(1, 1) == cplx(0.0));
  CHECK_THROWS_AS(commutator(d, ComplexMatrix(3, 3)), InputError);
}

TEST_CASE("weak commutator bound for commuting and generic pairs") {
  // commuting pair: both commutators vanish, ratio reported as zero
  const HermitianMatrix d1 = HermitianMatrix::diagonal({1.0, 2.0});
  const HermitianMatrix d2 = HermitianMatrix::diagonal({-3.0, 5.0});
  const CheckReport commuting = weak_commutator_check(d1, d2);
  CHECK(commuting.all_pass());
  REQUIRE(commuting.items.size() == 1);
  CHECK(commuting.items[0].observed == 0.0);

  for (int t = 0; t < 40; ++t) {
    CounterRng rng = CounterRng::substream(2021, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 16);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    const CheckReport rep = weak_commutator_check(a, b);
    INFO("trial " << t << " n=" << n);
    CHECK(rep.all_pass());
    for (const CheckItem& it : rep.items) CHECK(it.observed <= bound_constants().c_main);
  }
}

TEST_CASE("unitary conjugation bracket has an exact 2x2 value") {
  // A = flip, B = diag(1,-1): [e^{i eps B}, A] has trace norm 4 sin(eps)
  ComplexMatrix flip(2, 2);
  flip(0, 1) = 1.0;
  flip(1, 0) = 1.0;
  const HermitianMatrix a(flip);
  const HermitianMatrix b = HermitianMatrix::diagonal({1.0, -1.0});
  const double eps = 0.1;
  const ComplexMatrix u = unitary_exp(b, eps);
  const ComplexMatrix bracket = commutator(u, a.matrix());
  CHECK(trace_norm(bracket) == Catch::Approx(4.0 * std::sin(eps)).epsilon(1e-12));
  // and the series bound 4 eps e^{eps} dominates it
  CHECK(4.0 * std::sin(eps) <= eps * std::exp(eps) * 4.0);
}

TEST_CASE("series expansion of the conjugation bracket") {
  for (int t = 0; t < 20; ++t) {
    CounterRng rng = CounterRng::substream(2223, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 10);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    for (double eps : {0.1, 0.01}) {
      const CheckReport rep = exp_commutator_series_check(a, b, eps, 6);
      INFO("trial " << t << " eps=" << eps << " first failure "
                    << (rep.first_failure() ? rep.first_failure()->name : "none"));
      CHECK(rep.all_pass());
    }
  }
  CHECK_THROWS_AS(
      exp_commutator_series_check(HermitianMatrix::identity(2), HermitianMatrix::identity(2),
                                  -0.1, 6),
      InputError);
  CHECK_THROWS_AS(
      exp_commutator_series_check(HermitianMatrix::identity(2), HermitianMatrix::identity(2),
                                  0.1, 0),
      InputError);
}

TEST_CASE("commuting generator collapses the series") {
  // B = pi I commutes with everything: bracket and all series terms vanish
  const HermitianMatrix a = HermitianMatrix::diagonal({2.0, -1.0});
  const HermitianMatrix b =
      HermitianMatrix::diagonal({std::numbers::pi, std::numbers::pi});
  const CheckReport rep = exp_commutator_series_check(a, b, 1.0, 4);
  CHECK(rep.all_pass());
  for (const CheckItem& it : rep.items) CHECK(it.observed <= 1e-12);
}

TEST_CASE("first-order limit of the normalized bracket") {
  int informative = 0;
  for (int t = 0; t < 15; ++t) {
    CounterRng rng = CounterRng::substream(2425, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 10);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    const CheckReport rep = conjugation_limit_check(a, b, 1e-3);
    REQUIRE(rep.items.size() == 1);
    CHECK(rep.all_pass());
    if (rep.items[0].detail.find("noise") == std::string::npos) {
      ++informative;
      CHECK(rep.items[0].observed >= 1.5);
      CHECK(rep.items[0].observed <= 2.5);
    }
  }
  CHECK(informative >= 14);  // random pairs are essentially never degenerate

  // commuting pair hits the noise-floor path but still passes
  const CheckReport trivial = conjugation_limit_check(HermitianMatrix::diagonal({1.0, 2.0}),
                                                      HermitianMatrix::diagonal({3.0, 4.0}),
                                                      1e-3);
  CHECK(trivial.all_pass());

  CHECK_THROWS_AS(conjugation_limit_check(HermitianMatrix::identity(2),
                                          HermitianMatrix::identity(2), 1.5),
                  InputError);
}
