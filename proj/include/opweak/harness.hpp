#pragma once

// Randomized verification harness: pair generators over several structures,
// sweep/record plumbing (CSV), adversarial ratio search, and the named check
// suites that the CLI exposes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "opweak/absdiff.hpp"
#include "opweak/commutator.hpp"
#include "opweak/constants.hpp"
#include "opweak/davies.hpp"
#include "opweak/eig.hpp"
#include "opweak/matrix.hpp"
#include "opweak/norms.hpp"
#include "opweak/report.hpp"
#include "opweak/rng.hpp"
#include "opweak/schur.hpp"
#include "opweak/weaktrunc.hpp"

namespace opweak {

// ---------------------------------------------------------------------------
// Pair structures and trial configuration.

enum class PairStructure {
  generic,                  // independent dense self-adjoint pair
  commuting,                // common eigenbasis, independent spectra
  rank1_perturb,            // B = A + s vv*
  identically_distributed,  // equal spectra, independent eigenbases
  symmetric_pair,           // +/-mu spectra on a doubled space
};

inline std::string to_string(PairStructure s) {
  switch (s) {
    case PairStructure::generic: return "generic";
    case PairStructure::commuting: return "commuting";
    case PairStructure::rank1_perturb: return "rank1_perturb";
    case PairStructure::identically_distributed: return "identically_distributed";
    case PairStructure::symmetric_pair: return "symmetric_pair";
  }
  throw InputError("to_string: unknown structure");
}

inline PairStructure parse_structure(const std::string& s) {
  if (s == "generic") return PairStructure::generic;
  if (s == "commuting") return PairStructure::commuting;
  if (s == "rank1_perturb") return PairStructure::rank1_perturb;
  if (s == "identically_distributed") return PairStructure::identically_distributed;
  if (s == "symmetric_pair") return PairStructure::symmetric_pair;
  throw InputError("unknown structure \"" + s +
                   "\" (expected generic|commuting|rank1_perturb|"
                   "identically_distributed|symmetric_pair)");
}

inline const std::vector<PairStructure>& all_structures() {
  static const std::vector<PairStructure> v{
      PairStructure::generic, PairStructure::commuting, PairStructure::rank1_perturb,
      PairStructure::identically_distributed, PairStructure::symmetric_pair};
  return v;
}

struct TrialConfig {
  std::uint64_t seed = 0;
  int n = 8;
  int trials = 1;
  PairStructure structure = PairStructure::generic;
  double perturb_scale = 0.5;
  double tol_slack = kDefaultSlack;

  void validate() const {
    if (n < 1 || n > 128) throw InputError("TrialConfig: n must be in [1,128]");
    if (trials < 1) throw InputError("TrialConfig: trials must be >= 1");
    if (!(perturb_scale > 0.0) || !std::isfinite(perturb_scale))
      throw InputError("TrialConfig: perturb_scale must be positive");
    if (!(tol_slack >= 0.0) || !std::isfinite(tol_slack))
      throw InputError("TrialConfig: tol_slack must be >= 0");
  }
};

// ---------------------------------------------------------------------------
// Random instance helpers.

namespace detail {

// Sizes biased toward the small end: n = 1 + floor(max_n u^2).
inline int size_schedule(int max_n, CounterRng& rng) {
  if (max_n <= 1) return 1;
  const double u = rng.next_uniform();
  return std::min(max_n, 1 + static_cast<int>(std::floor(max_n * u * u)));
}

inline ComplexMatrix random_matrix(int n, CounterRng& rng) {
  ComplexMatrix m(n, n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = s * rng.next_complex_gaussian();
  return m;
}

inline ComplexMatrix random_psd(int n, CounterRng& rng) {
  const ComplexMatrix g = random_matrix(n, rng);
  return g * adjoint(g);
}

inline ComplexMatrix random_unit_column(int n, CounterRng& rng) {
  ComplexMatrix v(n, 1);
  double norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    v(i, 0) = rng.next_complex_gaussian();
    norm2 += std::norm(v(i, 0));
  }
  if (norm2 <= 0.0) {
    v(0, 0) = 1.0;
    return v;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (int i = 0; i < n; ++i) v(i, 0) *= inv;
  return v;
}

// Strictly positive nonincreasing sequence; occasional exact ties.
inline std::vector<double> random_decreasing_positive(int n, CounterRng& rng) {
  std::vector<double> a(n);
  a[n - 1] = 0.1 + rng.next_uniform();
  for (int k = n - 2; k >= 0; --k) {
    const double gap = rng.next_uniform() < 0.2 ? 0.0 : rng.next_uniform();
    a[k] = a[k + 1] + gap;
  }
  return a;
}

inline HermitianMatrix from_spectrum(const std::vector<double>& lambda, const ComplexMatrix& q) {
  SpectralDecomposition dec;
  dec.eigenvalues = lambda;
  dec.vectors = q;
  return HermitianMatrix(dec.reconstruct());
}

// Complete orthogonal projection family from the column groups of a random
// unitary; group sizes are a random composition of n into m parts.
inline std::vector<ComplexMatrix> random_projection_family(int n, int m, CounterRng& rng) {
  if (m < 1 || m > n) throw InputError("random_projection_family: need 1 <= m <= n");
  const ComplexMatrix q = random_unitary(n, rng);
  std::vector<int> sizes(m, 1);
  for (int extra = n - m; extra > 0; --extra) sizes[rng.next_u64() % m] += 1;
  std::vector<ComplexMatrix> projections;
  projections.reserve(m);
  int col = 0;
  for (int i = 0; i < m; ++i) {
    ComplexMatrix block(n, sizes[i]);
    for (int c = 0; c < sizes[i]; ++c)
      for (int r = 0; r < n; ++r) block(r, c) = q(r, col + c);
    col += sizes[i];
    projections.push_back(block * adjoint(block));
  }
  return projections;
}

// Atoms strictly increasing inside [0,1) by stratified placement.
inline DiscreteMeasure random_measure(int natoms, CounterRng& rng) {
  std::vector<double> atoms(natoms), weights(natoms);
  for (int k = 0; k < natoms; ++k) {
    atoms[k] = (static_cast<double>(k) + 0.9 * rng.next_uniform()) / natoms;
    const double g = rng.next_gaussian();
    weights[k] = (g < 0.0 ? -1.0 : 1.0) * (1e-3 + std::abs(g));
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pair sampling.

struct SampledPair {
  HermitianMatrix a;
  HermitianMatrix b;
  int n = 0;  // actual dimension (symmetric_pair rounds to an even size)
};

inline SampledPair sample_pair(const TrialConfig& config, int trial_index) {
  config.validate();
  if (trial_index < 0) throw InputError("sample_pair: trial_index must be >= 0");
  CounterRng rng = CounterRng::substream(config.seed, static_cast<std::uint64_t>(trial_index));
  const int n = config.n;
  switch (config.structure) {
    case PairStructure::generic: {
      HermitianMatrix a = random_hermitian(n, rng);
      HermitianMatrix b = random_hermitian(n, rng);
      return {std::move(a), std::move(b), n};
    }
    case PairStructure::commuting: {
      const ComplexMatrix q = random_unitary(n, rng);
      std::vector<double> la(n), lb(n);
      for (int k = 0; k < n; ++k) la[k] = rng.next_gaussian();
      for (int k = 0; k < n; ++k) lb[k] = rng.next_gaussian();
      return {detail::from_spectrum(la, q), detail::from_spectrum(lb, q), n};
    }
    case PairStructure::rank1_perturb: {
      const HermitianMatrix a = random_hermitian(n, rng);
      const ComplexMatrix v = detail::random_unit_column(n, rng);
      const double s = config.perturb_scale * rng.next_gaussian();
      HermitianMatrix b(a.matrix() + s * (v * adjoint(v)));
      return {a, std::move(b), n};
    }
    case PairStructure::identically_distributed: {
      std::vector<double> lambda(n);
      for (int k = 0; k < n; ++k) lambda[k] = rng.next_gaussian();
      const ComplexMatrix q1 = random_unitary(n, rng);
      const ComplexMatrix q2 = random_unitary(n, rng);
      return {detail::from_spectrum(lambda, q1), detail::from_spectrum(lambda, q2), n};
    }
    case PairStructure::symmetric_pair: {
      const int m = std::max(1, n / 2);
      std::vector<double> mu(m);
      for (int k = 0; k < m; ++k) mu[k] = kDeltaFloor + std::abs(rng.next_gaussian());
      std::sort(mu.begin(), mu.end(), std::greater<double>());
      const SymmetricPairSpec spec(m, mu, rng.next_u64(), rng.next_u64());
      auto [a, b] = synth_symmetric_pair(spec);
      return {std::move(a), std::move(b), 2 * m};
    }
  }
  throw InputError("sample_pair: unknown structure");
}

// ---------------------------------------------------------------------------
// Sweeps.

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t seed = 0;
  int n = 0;
  PairStructure structure = PairStructure::generic;
  double l1_diff = 0.0;
  double weak_abs_diff = 0.0;
  double ratio = 0.0;
  double bound = 0.0;  // the dimension-free constant the ratio is tested against
  bool pass = false;
  double elapsed_ms = 0.0;
};

struct SweepSummary {
  int trials = 0;
  int pass_count = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int worst_trial = -1;
  bool all_pass = false;
};

struct SweepResult {
  std::vector<TrialRecord> records;
  SweepSummary summary;
};

inline SweepResult run_sweep(const TrialConfig& config) {
  config.validate();
  SweepResult out;
  out.records.reserve(config.trials);
  double ratio_sum = 0.0;
  for (int t = 0; t < config.trials; ++t) {
    const auto t0 = std::chrono::steady_clock::now();
    const SampledPair pair = sample_pair(config, t);
    const BoundCertificate cert = certified_abs_diff_bound(pair.a, pair.b, config.tol_slack);
    const auto t1 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_index = t;
    rec.seed = config.seed;
    rec.n = pair.n;
    rec.structure = config.structure;
    rec.l1_diff = cert.l1_diff;
    rec.weak_abs_diff = cert.lhs;
    rec.ratio = cert.ratio;
    rec.bound = bound_constants().c_main;
    rec.pass = cert.pass;
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    ratio_sum += rec.ratio;
    if (rec.ratio > out.summary.max_ratio || out.summary.worst_trial < 0) {
      out.summary.max_ratio = rec.ratio;
      out.summary.worst_trial = t;
    }
    if (rec.pass) ++out.summary.pass_count;
    out.records.push_back(rec);
  }
  out.summary.trials = config.trials;
  out.summary.mean_ratio = ratio_sum / config.trials;
  out.summary.all_pass = out.summary.pass_count == config.trials;
  return out;
}

// ---------------------------------------------------------------------------
// Adversarial ratio search (hill climb over spectrum + perturbation).

enum class SearchObjective { weak_ratio, l1_ratio };

inline std::string to_string(SearchObjective o) {
  return o == SearchObjective::weak_ratio ? "weak_ratio" : "l1_ratio";
}

inline SearchObjective parse_objective(const std::string& s) {
  if (s == "weak_ratio") return SearchObjective::weak_ratio;
  if (s == "l1_ratio") return SearchObjective::l1_ratio;
  throw InputError("unknown objective \"" + s + "\" (expected weak_ratio|l1_ratio)");
}

struct SearchResult {
  SearchObjective objective = SearchObjective::weak_ratio;
  int n = 0;
  int budget = 0;
  int restarts = 0;
  std::uint64_t seed = 0;
  double best_value = 0.0;
  double bound = 0.0;   // dimension-free limit for weak_ratio; 0 when untracked
  bool bounded = true;  // false for l1_ratio, where no fixed constant is claimed
  bool pass = false;
  int evals_used = 0;
  HermitianMatrix best_a = HermitianMatrix::zero(1);
  HermitianMatrix best_b = HermitianMatrix::zero(1);
  std::vector<std::pair<int, double>> trace;  // (eval index, new best value)
};

namespace detail {

struct SearchEval {
  double value = 0.0;
  double l1_diff = 0.0;
  bool usable = false;
};

inline SearchEval search_objective_value(const SpectralDecomposition& dec_a,
                                         const HermitianMatrix& delta, double cached_l1_delta,
                                         SearchObjective obj) {
  SearchEval out;
  out.l1_diff = cached_l1_delta >= 0.0 ? cached_l1_delta : trace_norm(delta);
  const HermitianMatrix abs_a(dec_a.apply([](double t) { return std::abs(t); }));
  const HermitianMatrix b(dec_a.reconstruct() + delta.matrix());
  const HermitianMatrix abs_b = abs_of(b);
  const HermitianMatrix diff_abs(abs_a.matrix() - abs_b.matrix());
  const double floor = 1e-8 * (1.0 + frobenius_norm(abs_a.matrix()));
  if (out.l1_diff < floor) return out;  // ratio numerically meaningless, reject
  const double num =
      obj == SearchObjective::weak_ratio ? weak_l1_norm(diff_abs) : trace_norm(diff_abs);
  out.value = num / out.l1_diff;
  out.usable = true;
  return out;
}

}  // namespace detail

inline SearchResult adversarial_search(int n, int budget, int restarts, std::uint64_t seed,
                                       SearchObjective objective,
                                       double slack = kDefaultSlack) {
  if (n < 1 || n > 128) throw InputError("adversarial_search: n must be in [1,128]");
  if (restarts < 1) throw InputError("adversarial_search: restarts must be >= 1");
  if (budget < restarts) throw InputError("adversarial_search: budget must be >= restarts");

  SearchResult out;
  out.objective = objective;
  out.n = n;
  out.budget = budget;
  out.restarts = restarts;
  out.seed = seed;
  out.bounded = objective == SearchObjective::weak_ratio;
  out.bound = out.bounded ? bound_constants().c_main : 0.0;

  const int per_restart = budget / restarts;
  int eval_counter = 0;
  bool have_best = false;

  for (int r = 0; r < restarts; ++r) {
    CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(r));
    SpectralDecomposition dec_a;
    dec_a.vectors = random_unitary(n, rng);
    dec_a.eigenvalues.resize(n);
    for (int k = 0; k < n; ++k) dec_a.eigenvalues[k] = rng.next_gaussian();
    HermitianMatrix delta(0.5 * random_hermitian(n, rng).matrix());
    double l1_delta = trace_norm(delta);

    detail::SearchEval cur =
        detail::search_objective_value(dec_a, delta, l1_delta, objective);
    ++eval_counter;
    auto consider_best = [&](const detail::SearchEval& ev) {
      if (!ev.usable) return;
      if (!have_best || ev.value > out.best_value) {
        have_best = true;
        out.best_value = ev.value;
        out.best_a = HermitianMatrix(dec_a.reconstruct());
        out.best_b = HermitianMatrix(out.best_a.matrix() + delta.matrix());
        out.trace.emplace_back(eval_counter, ev.value);
      }
    };
    consider_best(cur);

    for (int e = 1; e < per_restart; ++e) {
      const bool nudge_spectrum = (rng.next_u64() & 1) == 0;
      if (nudge_spectrum) {
        const std::vector<double> saved = dec_a.eigenvalues;
        for (int k = 0; k < n; ++k) dec_a.eigenvalues[k] += 0.15 * rng.next_gaussian();
        const detail::SearchEval ev =
            detail::search_objective_value(dec_a, delta, l1_delta, objective);
        ++eval_counter;
        if (ev.usable && (!cur.usable || ev.value > cur.value)) {
          cur = ev;
          consider_best(ev);
        } else {
          dec_a.eigenvalues = saved;
        }
      } else {
        const HermitianMatrix saved = delta;
        const double saved_l1 = l1_delta;
        delta = HermitianMatrix(delta.matrix() + 0.15 * random_hermitian(n, rng).matrix());
        l1_delta = trace_norm(delta);
        const detail::SearchEval ev =
            detail::search_objective_value(dec_a, delta, l1_delta, objective);
        ++eval_counter;
        if (ev.usable && (!cur.usable || ev.value > cur.value)) {
          cur = ev;
          consider_best(ev);
        } else {
          delta = saved;
          l1_delta = saved_l1;
        }
      }
    }
  }
  out.evals_used = eval_counter;
  if (!have_best) {
    out.best_a = HermitianMatrix::zero(n);  // keep the result well-formed
    out.best_b = HermitianMatrix::zero(n);
  }
  out.pass = !out.bounded || out.best_value <= out.bound * (1.0 + slack);
  return out;
}

// ---------------------------------------------------------------------------
// Suite accumulation: many repeated checks collapse to one summary item per
// check name, keeping the first failure (with context) or the tightest pass.

class SuiteAccumulator {
 public:
  void absorb(const CheckReport& report, const std::string& context) {
    for (const CheckItem& item : report.items) note(item, context);
  }

  void note(const CheckItem& item, const std::string& context) {
    Slot& slot = slots_[item.name];
    ++slot.count;
    if (!item.pass) {
      ++slot.failures;
      if (slot.failures == 1) {
        slot.keep = item;
        slot.context = context;
      }
      return;
    }
    if (slot.failures > 0) return;
    const double score = tightness(item);
    if (slot.count == 1 || score > slot.score) {
      slot.keep = item;
      slot.context = context;
      slot.score = score;
    }
  }

  CheckReport summary() const {
    CheckReport report;
    for (const auto& [name, slot] : slots_) {
      std::string detail = "trials=" + std::to_string(slot.count);
      if (slot.failures > 0) {
        detail += ", failures=" + std::to_string(slot.failures) + ", first at " + slot.context;
        if (!slot.keep.detail.empty()) detail += " :: " + slot.keep.detail;
      } else {
        detail += ", tightest at " + slot.context;
      }
      report.add(name, slot.failures == 0, slot.keep.observed, slot.keep.limit, detail);
    }
    return report;
  }

 private:
  struct Slot {
    long count = 0;
    long failures = 0;
    double score = -1.0;
    CheckItem keep;
    std::string context;
  };
  static double tightness(const CheckItem& item) {
    return item.limit > 0.0 ? item.observed / item.limit : item.observed;
  }
  std::map<std::string, Slot> slots_;
};

inline CheckReport certificate_report(const BoundCertificate& cert) {
  CheckReport report;
  for (const ChainLink& link : cert.links) report.add(link.name, link.pass, link.lhs, link.rhs);
  return report;
}

// ---------------------------------------------------------------------------
// Check suites.

struct SuiteConfig {
  int trials = 40;
  std::uint64_t seed = 20260815;
  int max_n = 24;
  double slack = kDefaultSlack;

  void validate() const {
    if (trials < 1) throw InputError("SuiteConfig: trials must be >= 1");
    if (max_n < 1 || max_n > 128) throw InputError("SuiteConfig: max_n must be in [1,128]");
    if (!(slack >= 0.0) || !std::isfinite(slack))
      throw InputError("SuiteConfig: slack must be >= 0");
  }
};

namespace detail {

inline std::string trial_context(const char* suite, std::uint64_t seed, int trial, int n) {
  return std::string("suite=") + suite + " seed=" + std::to_string(seed) +
         " trial=" + std::to_string(trial) + " n=" + std::to_string(n);
}

}  // namespace detail

// Singular-value calculus: product/sum dominance, the weak quasi-triangle
// factor, and direct-sum subadditivity.
inline CheckReport suite_norms(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 1);
  SuiteAccumulator acc;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int n = detail::size_schedule(cfg.max_n, rng);
    const std::string ctx = detail::trial_context("norms", cfg.seed, t, n);
    const ComplexMatrix a = detail::random_matrix(n, rng);
    const ComplexMatrix b = detail::random_matrix(n, rng);
    acc.absorb(check_singular_inequalities(a, b, cfg.slack), ctx);
    const int nblocks = 1 + static_cast<int>(rng.next_u64() % 3);
    std::vector<ComplexMatrix> blocks;
    for (int k = 0; k < nblocks; ++k)
      blocks.push_back(detail::random_matrix(detail::size_schedule(cfg.max_n, rng), rng));
    acc.absorb(direct_sum_weak_bound(blocks, cfg.slack), ctx);
  }
  return acc.summary();
}

// Entrywise and block multipliers with a positive semidefinite symbol.
inline CheckReport suite_schur(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 2);
  SuiteAccumulator acc;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int n = detail::size_schedule(cfg.max_n, rng);
    const std::string ctx = detail::trial_context("schur", cfg.seed, t, n);

    // Corner decomposition of the normalized kernel: reconstruction + PSD terms.
    const DecreasingPositiveSeq alpha(detail::random_decreasing_positive(n, rng));
    const HermitianMatrix phi = phi_matrix(alpha);
    const auto terms = phi_decomposition(alpha);
    ComplexMatrix sum = ComplexMatrix::zero(n, n);
    double min_lambda = 0.0;
    for (const PhiTerm& term : terms) {
      sum = sum + term.coefficient * term.matrix.matrix();
      const PsdVerdict verdict = is_psd(term.matrix, 1e-10);
      min_lambda = std::min(min_lambda, verdict.lambda_min);
    }
    const double rec = frobenius_norm(sum - phi.matrix());
    const double rec_limit = 1e-12 * n * std::max(1.0, frobenius_norm(phi.matrix()));
    acc.note(CheckItem{"kernel-corner-reconstruction", rec <= rec_limit, rec, rec_limit, ""}, ctx);
    acc.note(CheckItem{"kernel-corner-terms-psd", min_lambda >= -1e-10, min_lambda, -1e-10, ""},
             ctx);

    // Entrywise product of PSD matrices stays PSD.
    const HermitianMatrix pa(detail::random_psd(n, rng));
    const HermitianMatrix pb(detail::random_psd(n, rng));
    const HermitianMatrix prod(hadamard(pa.matrix(), pb.matrix()));
    const PsdVerdict pv = is_psd(prod, 1e-10);
    acc.note(CheckItem{"entrywise-product-psd", pv.psd, pv.lambda_min, -1e-10, ""}, ctx);

    // Trace-norm bound for the entrywise multiplier with PSD symbol.
    double maxdiag = 0.0;
    for (int i = 0; i < n; ++i) maxdiag = std::max(maxdiag, pb(i, i).real());
    const ComplexMatrix x = detail::random_matrix(n, rng);
    const double lhs = trace_norm(hadamard(pb.matrix(), x));
    const double rhs = bound_constants().schur_factor * maxdiag * trace_norm(x);
    acc.note(CheckItem{"entrywise-multiplier-trace-bound", lhs <= rhs * (1.0 + cfg.slack), lhs,
                       rhs, ""},
             ctx);
    const double lhs_psd = trace_norm(hadamard(pb.matrix(), pa.matrix()));
    const double rhs_psd = maxdiag * trace_norm(pa);
    acc.note(CheckItem{"entrywise-multiplier-trace-bound-psd",
                       lhs_psd <= rhs_psd * (1.0 + cfg.slack), lhs_psd, rhs_psd, ""},
             ctx);

    // Block multiplier against an orthogonal projection family.
    const int m = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(
                                           std::min(n, 4)));
    const auto projections = detail::random_projection_family(n, m, rng);
    const ComplexMatrix bsym = detail::random_psd(m, rng);
    double bmaxdiag = 0.0;
    for (int i = 0; i < m; ++i) bmaxdiag = std::max(bmaxdiag, bsym(i, i).real());
    const ComplexMatrix bx = block_schur(bsym, projections, x);
    const double blhs = trace_norm(bx);
    const double brhs = bound_constants().schur_factor * bmaxdiag * trace_norm(x);
    acc.note(CheckItem{"block-multiplier-trace-bound", blhs <= brhs * (1.0 + cfg.slack), blhs,
                       brhs, ""},
             ctx);
    const HermitianMatrix bout(block_schur(bsym, projections, pa.matrix()));
    const PsdVerdict bv = is_psd(bout, 1e-10);
    acc.note(CheckItem{"block-multiplier-psd", bv.psd, bv.lambda_min, -1e-10, ""}, ctx);
  }
  return acc.summary();
}

// Triangular truncation weak bounds and the sign-multiplier factorization.
inline CheckReport suite_trunc(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 3);
  SuiteAccumulator acc;
  const BoundConstants& c = bound_constants();
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int n = detail::size_schedule(cfg.max_n, rng);
    const std::string ctx = detail::trial_context("trunc", cfg.seed, t, n);

    ComplexMatrix x_sa = random_hermitian(n, rng).matrix();
    for (int i = 0; i < n; ++i) x_sa(i, i) = 0.0;
    acc.absorb(check_truncation_bounds(x_sa, cfg.slack), ctx);

    ComplexMatrix x_gen = detail::random_matrix(n, rng);
    for (int i = 0; i < n; ++i) x_gen(i, i) = 0.0;
    acc.absorb(check_truncation_bounds(x_gen, cfg.slack), ctx);

    const DecreasingPositiveSeq alpha(detail::random_decreasing_positive(n, rng));
    const ComplexMatrix a = detail::random_matrix(n, rng);
    const double res = verify_s_factorization(alpha, a);
    const double res_limit = 1e-13 * std::max(1e-300, frobenius_norm(a));
    acc.note(CheckItem{"sign-multiplier-factorization", res <= res_limit, res, res_limit, ""},
             ctx);
    const double s_weak = weak_l1_norm(s_operator(alpha, a));
    const double s_rhs = c.c_s * trace_norm(a);
    acc.note(
        CheckItem{"sign-multiplier-weak-bound", s_weak <= s_rhs * (1.0 + cfg.slack), s_weak,
                  s_rhs, ""},
        ctx);
  }
  return acc.summary();
}

// Absolute-value difference: four-term reconstruction on synthesized pairs and
// the fully certified dimension-free bound on every structure.
inline CheckReport suite_absdiff(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 4);
  SuiteAccumulator acc;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int half_max = std::max(1, cfg.max_n / 2);
    const int m = detail::size_schedule(half_max, rng);
    const std::string ctx = detail::trial_context("absdiff", cfg.seed, t, 2 * m);

    std::vector<double> mu(m);
    for (int k = 0; k < m; ++k) mu[k] = kDeltaFloor + std::abs(rng.next_gaussian());
    std::sort(mu.begin(), mu.end(), std::greater<double>());
    if (t % 4 == 0)
      for (int k = 1; k < (m + 1) / 2; ++k) mu[k] = mu[0];  // force degenerate spectra
    const SymmetricPairSpec spec(m, mu, rng.next_u64(), rng.next_u64());
    const auto [sa, sb] = synth_symmetric_pair(spec);
    const Lemma33Certificate cert = lemma33_decompose(sa, sb);
    const double scale = frobenius_norm(sa.matrix()) + frobenius_norm(sb.matrix());
    acc.note(CheckItem{"four-term-reconstruction-synth", cert.residual <= 1e-9 * scale,
                       cert.residual, 1e-9 * scale, ""},
             ctx);

    TrialConfig tc;
    tc.seed = rng.next_u64();
    tc.n = detail::size_schedule(cfg.max_n, rng);
    tc.structure = all_structures()[t % all_structures().size()];
    tc.tol_slack = cfg.slack;
    const SampledPair pair = sample_pair(tc, 0);
    const std::string pctx = ctx + " structure=" + to_string(tc.structure) +
                             " pair_seed=" + std::to_string(tc.seed);
    acc.absorb(certificate_report(certified_abs_diff_bound(pair.a, pair.b, cfg.slack)), pctx);
    acc.absorb(singular_value_lipschitz_check(pair.a, pair.b, cfg.slack), pctx);
  }
  return acc.summary();
}

// Distorted variation, discretization, and the assembled function bound.
inline CheckReport suite_davies(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 5);
  SuiteAccumulator acc;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int natoms = 1 + static_cast<int>(rng.next_u64() % 10);
    const DiscreteMeasure nu = detail::random_measure(natoms, rng);
    const std::string ctx = "suite=davies seed=" + std::to_string(cfg.seed) +
                            " trial=" + std::to_string(t) + " atoms=" + std::to_string(natoms);

    acc.absorb(dv_check(nu), ctx);
    acc.absorb(discretization_checks(nu, 4, cfg.slack), ctx);
    acc.absorb(discretization_checks(nu, 16, cfg.slack), ctx);

    const int ncells = 1 + static_cast<int>(rng.next_u64() % 4);
    std::vector<double> breaks(ncells), densities(ncells);
    for (int j = 0; j < ncells; ++j) {
      breaks[j] = (static_cast<double>(j) + 0.5 * rng.next_uniform()) / ncells;
      densities[j] = rng.next_gaussian();
    }
    const PiecewiseConstantMeasure rho(breaks, densities);
    acc.absorb(discretization_checks(rho, 4, cfg.slack), ctx);
    acc.absorb(discretization_checks(rho, 16, cfg.slack), ctx);

    const int n = detail::size_schedule(std::max(1, cfg.max_n / 2), rng);
    CounterRng mrng = CounterRng::substream(eff ^ 0x5eedu, static_cast<std::uint64_t>(t));
    const HermitianMatrix a = random_hermitian(n, mrng);
    const HermitianMatrix b = random_hermitian(n, mrng);
    const double two_route = apply_function_two_route_residual(nu, a);
    const double tr_limit =
        1e-10 * (1.0 + nu.total_variation()) * std::max(1.0, frobenius_norm(a.matrix()));
    acc.note(CheckItem{"function-calculus-two-route", two_route <= tr_limit, two_route, tr_limit,
                       ""},
             ctx);
    const int small_atoms = std::min(natoms, 5);
    std::vector<double> satoms(nu.atoms.begin(), nu.atoms.begin() + small_atoms);
    std::vector<double> sweights(nu.weights.begin(), nu.weights.begin() + small_atoms);
    const DiscreteMeasure snu(satoms, sweights);
    acc.absorb(theorem_assembled_check(snu, a, b, cfg.slack), ctx + " dim=" + std::to_string(n));

    const int nsum = 1 + static_cast<int>(rng.next_u64() % 5);
    std::vector<ComplexMatrix> summands;
    for (int k = 0; k < nsum; ++k) summands.push_back(detail::random_matrix(n, mrng));
    acc.absorb(weighted_weak_sum_bound(summands, cfg.slack), ctx);
  }
  return acc.summary();
}

// Commutator transfer: weak bound, unitary series, and the first-order limit.
inline CheckReport suite_comm(const SuiteConfig& cfg) {
  cfg.validate();
  const std::uint64_t eff = CounterRng::derive_key(cfg.seed, 6);
  SuiteAccumulator acc;
  for (int t = 0; t < cfg.trials; ++t) {
    CounterRng rng = CounterRng::substream(eff, static_cast<std::uint64_t>(t));
    const int n = detail::size_schedule(cfg.max_n, rng);
    const std::string ctx = detail::trial_context("comm", cfg.seed, t, n);
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    acc.absorb(weak_commutator_check(a, b, cfg.slack), ctx);
    acc.absorb(exp_commutator_series_check(a, b, 0.1, 6, cfg.slack), ctx);
    acc.absorb(exp_commutator_series_check(a, b, 0.01, 6, cfg.slack), ctx);
    if (n >= 2) acc.absorb(conjugation_limit_check(a, b, 1e-3), ctx);
  }
  return acc.summary();
}

// ---------------------------------------------------------------------------
// Suite dispatch.

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> v{"norms", "schur", "trunc",
                                          "absdiff", "davies", "comm"};
  return v;
}

inline CheckReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "norms") return suite_norms(cfg);
  if (name == "schur") return suite_schur(cfg);
  if (name == "trunc") return suite_trunc(cfg);
  if (name == "absdiff") return suite_absdiff(cfg);
  if (name == "davies") return suite_davies(cfg);
  if (name == "comm") return suite_comm(cfg);
  throw InputError("unknown suite \"" + name + "\" (expected all|norms|schur|trunc|absdiff|davies|comm)");
}

inline CheckReport check_all(const SuiteConfig& cfg) {
  CheckReport report;
  for (const std::string& name : suite_names()) report.merge(run_suite(name, cfg));
  return report;
}

}  // namespace opweak
