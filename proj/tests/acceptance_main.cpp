// Acceptance gate: every advertised guarantee checked at its stated tolerance
// and trial count, one verdict line per criterion.  Exit 0 iff all pass.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "opweak/opweak.hpp"

using namespace opweak;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void verdict(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

int run_command(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ComplexMatrix zero_diagonal(ComplexMatrix m) {
  for (int i = 0; i < m.rows(); ++i) m(i, i) = 0.0;
  return m;
}

// 1. Corner decomposition of the normalized kernel: reconstruction within
//    1e-12*n relative Frobenius error, every term PSD.  200 trials, < 10 s.
void criterion_corner_decomposition() {
  const auto t0 = Clock::now();
  double worst_rel = 0.0, worst_lambda = 0.0;
  bool ok = true;
  for (int t = 0; t < 200; ++t) {
    CounterRng rng = CounterRng::substream(1001, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 32);
    const DecreasingPositiveSeq alpha(detail::random_decreasing_positive(n, rng));
    const HermitianMatrix phi = phi_matrix(alpha);
    ComplexMatrix sum = ComplexMatrix::zero(n, n);
    for (const PhiTerm& term : phi_decomposition(alpha)) {
      sum = sum + term.coefficient * term.matrix.matrix();
      const PsdVerdict v = is_psd(term.matrix, 1e-10);
      ok = ok && v.psd;
      worst_lambda = std::min(worst_lambda, v.lambda_min);
    }
    const double rel = frobenius_norm(sum - phi.matrix()) / frobenius_norm(phi.matrix());
    worst_rel = std::max(worst_rel, rel / n);
    ok = ok && rel <= 1e-12 * n;
  }
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 10.0;
  verdict(1, "kernel corner decomposition", ok,
          fmt("worst rel residual/n %.3g (limit 1e-12), min term eig %.3g, %.2fs", worst_rel,
              worst_lambda, elapsed));
}

// 2. Factorization of the sign multiplier through the reflected truncation:
//    Frobenius residual <= 1e-13*||A||_F on 200 random (alpha, A).
void criterion_s_factorization() {
  double worst = 0.0;
  bool ok = true;
  for (int t = 0; t < 200; ++t) {
    CounterRng rng = CounterRng::substream(1002, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 32);
    const DecreasingPositiveSeq alpha(detail::random_decreasing_positive(n, rng));
    const ComplexMatrix a = detail::random_matrix(n, rng);
    const double residual = verify_s_factorization(alpha, a);
    const double limit = 1e-13 * frobenius_norm(a);
    worst = std::max(worst, limit > 0.0 ? residual / limit : residual);
    ok = ok && residual <= limit;
  }
  verdict(2, "sign-multiplier factorization", ok,
          fmt("worst residual/limit %.3g", worst));
}

// 3. Entrywise products of PSD matrices stay PSD; the multiplier with PSD
//    symbol obeys the 4*maxdiag trace bound; the block form preserves PSD.
void criterion_schur_multipliers() {
  bool ok = true;
  double worst_lambda = 0.0, worst_ratio = 0.0;
  for (int t = 0; t < 500; ++t) {
    CounterRng rng = CounterRng::substream(1003, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 16);
    const HermitianMatrix pa(detail::random_psd(n, rng));
    const HermitianMatrix pb(detail::random_psd(n, rng));
    const PsdVerdict v = is_psd(HermitianMatrix(hadamard(pa.matrix(), pb.matrix())), 1e-10);
    ok = ok && v.psd;
    worst_lambda = std::min(worst_lambda, v.lambda_min);

    double maxdiag = 0.0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, pb(i, i).real());
    const ComplexMatrix x = detail::random_matrix(n, rng);
    const double lhs = trace_norm(hadamard(pb.matrix(), x));
    const double rhs = bound_constants().schur_factor * maxdiag * trace_norm(x);
    ok = ok && lhs <= rhs * (1.0 + 1e-9);
    if (rhs > 0.0) worst_ratio = std::max(worst_ratio, lhs / rhs);
  }
  for (int t = 0; t < 100; ++t) {
    CounterRng rng = CounterRng::substream(1013, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 15);
    const int m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(std::min(n, 5)));
    const auto projections = detail::random_projection_family(n, m, rng);
    const ComplexMatrix bsym = detail::random_psd(m, rng);
    const ComplexMatrix xp = detail::random_psd(n, rng);
    const PsdVerdict v = is_psd(HermitianMatrix(block_schur(bsym, projections, xp)), 1e-10);
    ok = ok && v.psd;
    worst_lambda = std::min(worst_lambda, v.lambda_min);
  }
  verdict(3, "positive multipliers (entrywise and block)", ok,
          fmt("min eig %.3g, worst trace ratio %.6f of 1", worst_lambda, worst_ratio));
}

// 4. Weak-norm bounds for the reflected truncation (4e/pi self-adjoint,
//    16e/pi general, both zero-diagonal) and for the sign multiplier (80e/pi).
void criterion_truncation_bounds() {
  const BoundConstants& c = bound_constants();
  bool ok = true;
  double worst_sa = 0.0, worst_gen = 0.0, worst_s = 0.0;
  for (int t = 0; t < 500; ++t) {
    CounterRng rng = CounterRng::substream(1004, t);
    const int n = 2 + static_cast<int>(rng.next_u64() % 31);
    const ComplexMatrix xs = zero_diagonal(random_hermitian(n, rng).matrix());
    const double l1s = trace_norm(xs);
    if (l1s > 0.0) worst_sa = std::max(worst_sa, weak_l1_norm(reflect_trunc(xs)) / l1s);
    ok = ok && weak_l1_norm(reflect_trunc(xs)) <= c.c_trunc_sa * l1s * (1.0 + 1e-9);

    const ComplexMatrix xg = zero_diagonal(detail::random_matrix(n, rng));
    const double l1g = trace_norm(xg);
    if (l1g > 0.0) worst_gen = std::max(worst_gen, weak_l1_norm(reflect_trunc(xg)) / l1g);
    ok = ok && weak_l1_norm(reflect_trunc(xg)) <= c.c_trunc * l1g * (1.0 + 1e-9);
  }
  for (int t = 0; t < 200; ++t) {
    CounterRng rng = CounterRng::substream(1014, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 32);
    const DecreasingPositiveSeq alpha(detail::random_decreasing_positive(n, rng));
    const ComplexMatrix a = detail::random_matrix(n, rng);
    const double l1 = trace_norm(a);
    if (l1 > 0.0) worst_s = std::max(worst_s, weak_l1_norm(s_operator(alpha, a)) / l1);
    ok = ok && weak_l1_norm(s_operator(alpha, a)) <= c.c_s * l1 * (1.0 + 1e-9);
  }
  verdict(4, "reflected-truncation weak bounds", ok,
          fmt("worst ratios: selfadj %.3f/3.46, general %.3f/13.85, multiplier %.3f/69.24",
              worst_sa, worst_gen, worst_s));
}

// 5. Four-term decomposition for identically-and-symmetrically distributed
//    pairs: reconstruction residual <= 1e-9*(||A||_F+||B||_F) on 200
//    synthesized pairs up to dimension 64, degenerate spectra included.
void criterion_four_term_decomposition() {
  bool ok = true;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    CounterRng rng = CounterRng::substream(1005, t);
    const int m = 1 + static_cast<int>(rng.next_u64() % 32);
    std::vector<double> mu(m);
    for (int k = 0; k < m; ++k) mu[k] = kDeltaFloor + std::abs(rng.next_gaussian());
    std::sort(mu.begin(), mu.end(), std::greater<double>());
    if (t % 3 == 0)
      for (int k = 1; k < m; k += 2) mu[k] = mu[k - 1];  // repeated singular values
    const SymmetricPairSpec spec(m, mu, rng.next_u64(), rng.next_u64());
    const auto [a, b] = synth_symmetric_pair(spec);
    const Lemma33Certificate cert = lemma33_decompose(a, b);
    const double limit = 1e-9 * (frobenius_norm(a.matrix()) + frobenius_norm(b.matrix()));
    worst = std::max(worst, cert.residual / limit);
    ok = ok && cert.residual <= limit;
  }
  verdict(5, "four-term decomposition of matched pairs", ok,
          fmt("worst residual/limit %.3g over 200 pairs (degenerate spectra every 3rd)", worst));
}

// 6. The headline ratio || |A|-|B| ||_w / ||A-B||_1 stays below the assembled
//    constant on 1000 pairs across all structures (n up to 64) and under an
//    adversarial hill-climb, with the full inequality chain certified per
//    instance.  < 5 min.
void criterion_main_bound() {
  const auto t0 = Clock::now();
  bool ok = true;
  double max_ratio = 0.0;
  int chain_failures = 0;
  for (int t = 0; t < 1000; ++t) {
    CounterRng srng = CounterRng::substream(1006, t);
    TrialConfig tc;
    tc.seed = srng.next_u64();
    const double u = srng.next_uniform();
    tc.n = (t % 100 == 99) ? 64 : 1 + static_cast<int>(63 * u * u);
    tc.structure = all_structures()[t % all_structures().size()];
    const SampledPair pair = sample_pair(tc, t);
    const BoundCertificate cert = certified_abs_diff_bound(pair.a, pair.b);
    max_ratio = std::max(max_ratio, cert.ratio);
    if (!cert.links_pass()) ++chain_failures;
    ok = ok && cert.pass && cert.links_pass();
  }
  const SearchResult search =
      adversarial_search(16, 10000, 5, 1606, SearchObjective::weak_ratio);
  max_ratio = std::max(max_ratio, search.best_value);
  ok = ok && search.pass;
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 300.0;
  verdict(6, "absolute-value weak-L1 bound", ok,
          fmt("max ratio %.4f of 2249.06, chain failures %.0f, %.1fs", max_ratio,
              static_cast<double>(chain_failures), elapsed));
}

// 7. Singular-value inequalities (product, dilated sum, quasi-triangle) and
//    direct-sum weak subadditivity, 500 instances each at slack 1e-9.
void criterion_singular_inequalities() {
  bool ok = true;
  int failures = 0;
  for (int t = 0; t < 500; ++t) {
    CounterRng rng = CounterRng::substream(1007, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 16);
    const ComplexMatrix a = detail::random_matrix(n, rng);
    const ComplexMatrix b = detail::random_matrix(n, rng);
    const CheckReport rep = check_singular_inequalities(a, b, 1e-9);
    if (!rep.all_pass()) ++failures;

    std::vector<ComplexMatrix> blocks;
    const int nblocks = 1 + static_cast<int>(rng.next_u64() % 4);
    for (int j = 0; j < nblocks; ++j)
      blocks.push_back(detail::random_matrix(1 + static_cast<int>(rng.next_u64() % 8), rng));
    if (!direct_sum_weak_bound(blocks, 1e-9).all_pass()) ++failures;
  }
  ok = failures == 0;
  verdict(7, "singular-value inequalities", ok,
          fmt("%.0f of 500 trials with any failed inequality", static_cast<double>(failures)));
}

// 8. Commutator estimates: weak ratio below the main constant (500 pairs),
//    series identity and L1 bound for [e^{i eps B}, A] at eps in {0.1, 0.01}
//    (100 pairs), and the first-order conjugation limit halving ratio within
//    [1.5, 2.5] on 50 non-degenerate pairs.
void criterion_commutators() {
  bool ok = true;
  for (int t = 0; t < 500 && ok; ++t) {
    CounterRng rng = CounterRng::substream(1008, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 12);
    ok = weak_commutator_check(random_hermitian(n, rng), random_hermitian(n, rng)).all_pass();
  }
  for (int t = 0; t < 100 && ok; ++t) {
    CounterRng rng = CounterRng::substream(1018, t);
    const int n = 1 + static_cast<int>(rng.next_u64() % 10);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    ok = exp_commutator_series_check(a, b, 0.1, 6).all_pass() &&
         exp_commutator_series_check(a, b, 0.01, 6).all_pass();
  }
  int informative = 0, attempts = 0;
  while (informative < 50 && attempts < 200 && ok) {
    CounterRng rng = CounterRng::substream(1028, attempts++);
    const int n = 2 + static_cast<int>(rng.next_u64() % 8);
    const CheckReport rep =
        conjugation_limit_check(random_hermitian(n, rng), random_hermitian(n, rng), 1e-3);
    ok = rep.all_pass();
    if (!rep.items.empty() && rep.items[0].observed > 0.0) ++informative;  // non-degenerate
  }
  ok = ok && informative >= 50;
  verdict(8, "commutator estimates", ok,
          fmt("%.0f informative halving-ratio pairs in %.0f attempts",
              static_cast<double>(informative), static_cast<double>(attempts)));
}

// 9. Distorted variation: closed form equals the brute-force partition
//    optimum (300 measures), discretization is monotone and uniformly close
//    (m in {4,16}), and the assembled function-difference bound holds on 200
//    (measure, A, B) trials.
void criterion_distorted_variation() {
  bool ok = true;
  for (int t = 0; t < 300 && ok; ++t) {
    CounterRng rng = CounterRng::substream(1009, t);
    const int natoms = 1 + static_cast<int>(rng.next_u64() % 10);
    const DiscreteMeasure nu = detail::random_measure(natoms, rng);
    ok = dv_check(nu).all_pass() && discretization_checks(nu, 4).all_pass() &&
         discretization_checks(nu, 16).all_pass();
  }
  for (int t = 0; t < 200 && ok; ++t) {
    CounterRng rng = CounterRng::substream(1019, t);
    const DiscreteMeasure nu =
        detail::random_measure(1 + static_cast<int>(rng.next_u64() % 5), rng);
    const int n = 1 + static_cast<int>(rng.next_u64() % 16);
    ok = theorem_assembled_check(nu, random_hermitian(n, rng), random_hermitian(n, rng))
             .all_pass();
  }
  verdict(9, "distorted variation and function differences", ok, "");
}

// 10. Numerical core: eigensolver residuals within n*1e-12*||A||_F up to
//     n = 128; the full check suite exits 0 in under 10 min; sweep and search
//     outputs are byte-identical across reruns under --no-timestamp.
void criterion_numerical_core() {
  bool ok = true;
  double worst = 0.0;
  for (const int n : {4, 16, 64, 128}) {
    for (int t = 0; t < 2; ++t) {
      CounterRng rng = CounterRng::substream(1010, 10 * t + n);
      const HermitianMatrix h = random_hermitian(n, rng);
      const SpectralDecomposition dec = eigh(h);
      const double scale = frobenius_norm(h.matrix());
      const double rec = frobenius_norm(dec.reconstruct() - h.matrix());
      const double orth =
          frobenius_norm(adjoint(dec.vectors) * dec.vectors - ComplexMatrix::identity(n));
      worst = std::max(worst, std::max(rec, orth) / (n * 1e-12 * scale));
      ok = ok && rec <= n * 1e-12 * scale && orth <= n * 1e-12 * scale;
    }
  }

  const std::string bin = OPWEAK_CLI_PATH;
  const std::string work = OPWEAK_WORK_DIR;
  std::filesystem::create_directories(work);
  const auto t0 = Clock::now();
  const int check_rc =
      run_command("\"" + bin + "\" check --suite all > \"" + work + "/check_all.log\" 2>&1");
  const double check_elapsed = seconds_since(t0);
  ok = ok && check_rc == 0 && check_elapsed < 600.0;

  const std::string sweep_cmd = "\"" + bin +
                                "\" --no-timestamp sweep --n 6 --trials 8 --structure generic "
                                "--seed 42 --out \"" +
                                work + "/sweep_rerun";
  ok = ok && run_command(sweep_cmd + "_1.csv\" > /dev/null") == 0;
  ok = ok && run_command(sweep_cmd + "_2.csv\" > /dev/null") == 0;
  const std::string csv1 = read_file(work + "/sweep_rerun_1.csv");
  ok = ok && !csv1.empty() && csv1 == read_file(work + "/sweep_rerun_2.csv");

  const std::string search_cmd = "\"" + bin +
                                 "\" --no-timestamp search --n 5 --budget 60 --restarts 3 "
                                 "--objective weak_ratio --seed 7 --out \"" +
                                 work + "/search_rerun";
  ok = ok && run_command(search_cmd + "_1.json\" > /dev/null") == 0;
  ok = ok && run_command(search_cmd + "_2.json\" > /dev/null") == 0;
  const std::string js1 = read_file(work + "/search_rerun_1.json");
  ok = ok && !js1.empty() && js1 == read_file(work + "/search_rerun_2.json");

  verdict(10, "numerical core and CLI reproducibility", ok,
          fmt("worst eig residual %.3g of limit, check-all rc %.0f in %.1fs", worst,
              static_cast<double>(check_rc), check_elapsed));
}

}  // namespace

int main() {
  criterion_corner_decomposition();
  criterion_s_factorization();
  criterion_schur_multipliers();
  criterion_truncation_bounds();
  criterion_four_term_decomposition();
  criterion_main_bound();
  criterion_singular_inequalities();
  criterion_commutators();
  criterion_distorted_variation();
  criterion_numerical_core();
  if (g_failures == 0) {
    std::printf("ACCEPTANCE: PASS (10 criteria)\n");
    return 0;
  }
  std::printf("ACCEPTANCE: FAIL (%d of 10 criteria)\n", g_failures);
  return 1;
}
