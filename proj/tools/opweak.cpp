// opweak: randomized verification harness for singular-value and weak-norm
// inequalities around the absolute-value map.
//
// Exit codes: 0 all checks pass, 1 a verified inequality/identity failed,
// 2 usage or input error.

#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opweak/opweak.hpp"

namespace {

using namespace opweak;

std::string timestamp_line() {
  std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("generated_at=") + buf;
}

void print_report(const CheckReport& report) {
  for (const CheckItem& item : report.items) {
    std::printf("[%s] %-42s observed=%.6g limit=%.6g%s%s\n", item.pass ? "PASS" : "FAIL",
                item.name.c_str(), item.observed, item.limit, item.detail.empty() ? "" : "  ",
                item.detail.c_str());
  }
}

int finish_report(const CheckReport& report) {
  if (report.all_pass()) {
    std::printf("RESULT: PASS (%zu checks)\n", report.items.size());
    return 0;
  }
  std::printf("RESULT: FAIL (%zu of %zu checks failed)\n", report.failure_count(),
              report.items.size());
  return 1;
}

int run_check(const std::string& suite, const SuiteConfig& cfg, bool no_timestamp) {
  if (!no_timestamp) std::printf("%s\n", timestamp_line().c_str());
  std::printf("check suite=%s trials=%d seed=%llu max_n=%d slack=%g\n", suite.c_str(),
              cfg.trials, static_cast<unsigned long long>(cfg.seed), cfg.max_n, cfg.slack);
  const CheckReport report = suite == "all" ? check_all(cfg) : run_suite(suite, cfg);
  print_report(report);
  return finish_report(report);
}

int run_sweep_cmd(const TrialConfig& cfg, const std::string& out_path, bool no_timestamp) {
  const SweepResult result = run_sweep(cfg);
  std::string csv = records_to_csv(result.records, /*include_timing=*/!no_timestamp);
  save_text_file(out_path, csv);
  std::printf("sweep n=%d trials=%d structure=%s seed=%llu -> %s\n", cfg.n, cfg.trials,
              to_string(cfg.structure).c_str(), static_cast<unsigned long long>(cfg.seed),
              out_path.c_str());
  std::printf("max_ratio=%.12g (trial %d)  mean_ratio=%.12g  bound=%.12g  pass=%d/%d\n",
              result.summary.max_ratio, result.summary.worst_trial, result.summary.mean_ratio,
              bound_constants().c_main, result.summary.pass_count, result.summary.trials);
  return result.summary.all_pass ? 0 : 1;
}

int run_search_cmd(int n, int budget, int restarts, std::uint64_t seed,
                   const std::string& objective, const std::string& out_path,
                   bool no_timestamp) {
  const SearchResult result = adversarial_search(n, budget, restarts, seed,
                                                 parse_objective(objective));
  json doc = search_result_to_json(result);
  doc["certificate"] = bound_certificate_to_json(
      certified_abs_diff_bound(result.best_a, result.best_b));
  if (!no_timestamp) doc["generated_at"] = timestamp_line().substr(13);
  save_text_file(out_path, doc.dump(2) + "\n");
  std::printf("search objective=%s n=%d budget=%d restarts=%d seed=%llu -> %s\n",
              objective.c_str(), n, budget, restarts, static_cast<unsigned long long>(seed),
              out_path.c_str());
  if (result.bounded)
    std::printf("best_value=%.12g bound=%.12g pass=%s\n", result.best_value, result.bound,
                result.pass ? "yes" : "no");
  else
    std::printf("best_value=%.12g (informational; no dimension-free bound claimed)\n",
                result.best_value);
  return result.pass ? 0 : 1;
}

int run_decompose_cmd(const std::string& a_path, const std::string& b_path,
                      const std::string& out_path, bool no_timestamp) {
  const HermitianMatrix a(matrix_from_json(load_json_file(a_path)));
  const HermitianMatrix b(matrix_from_json(load_json_file(b_path)));
  const Lemma33Certificate cert = lemma33_decompose(a, b);
  const double scale = frobenius_norm(a.matrix()) + frobenius_norm(b.matrix());
  const double limit = 1e-9 * scale;
  const bool pass = cert.residual <= limit;
  json doc = certificate_to_json(cert);
  doc["residual_limit"] = limit;
  doc["pass"] = pass;
  if (!no_timestamp) doc["generated_at"] = timestamp_line().substr(13);
  save_text_file(out_path, doc.dump(2) + "\n");
  std::printf("decompose %s %s -> %s\nresidual=%.6g limit=%.6g pass=%s\n", a_path.c_str(),
              b_path.c_str(), out_path.c_str(), cert.residual, limit, pass ? "yes" : "no");
  return pass ? 0 : 1;
}

int run_davies_cmd(const std::string& measure_path, int n, int trials, std::uint64_t seed,
                   bool no_timestamp) {
  const MeasureInput input = measure_from_json(load_json_file(measure_path));
  DiscreteMeasure nu = input.atomic
                           ? input.discrete
                           : discretize(PiecewiseConstantMeasure(input.breaks, input.densities),
                                        16);
  if (!no_timestamp) std::printf("%s\n", timestamp_line().c_str());
  std::printf("davies measure=%s atoms=%zu n=%d trials=%d seed=%llu\n", measure_path.c_str(),
              nu.size(), n, trials, static_cast<unsigned long long>(seed));
  CheckReport report;
  if (nu.size() <= kDvBruteForceCap) report.merge(dv_check(nu));
  bool in_unit = true;
  for (double t : nu.atoms)
    if (t < 0.0 || t >= 1.0) in_unit = false;
  if (in_unit) {
    report.merge(discretization_checks(nu, 4));
    report.merge(discretization_checks(nu, 16));
  }
  SuiteAccumulator acc;
  for (int t = 0; t < trials; ++t) {
    CounterRng rng = CounterRng::substream(seed, static_cast<std::uint64_t>(t));
    const HermitianMatrix a = random_hermitian(n, rng);
    const HermitianMatrix b = random_hermitian(n, rng);
    const std::string ctx = "trial=" + std::to_string(t);
    acc.absorb(theorem_assembled_check(nu, a, b), ctx);
    const double res = apply_function_two_route_residual(nu, a);
    const double limit =
        1e-10 * (1.0 + nu.total_variation()) * std::max(1.0, frobenius_norm(a.matrix()));
    acc.note(CheckItem{"function-calculus-two-route", res <= limit, res, limit, ""}, ctx);
  }
  report.merge(acc.summary());
  print_report(report);
  return finish_report(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized verification of weak-norm bounds for the absolute-value map"};
  app.require_subcommand(1);
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp,
               "omit timestamps and zero elapsed columns for byte-identical output");

  // check
  auto* check_cmd = app.add_subcommand("check", "run a named check suite");
  check_cmd->fallthrough();
  std::string suite = "all";
  SuiteConfig suite_cfg;
  check_cmd->add_option("--suite", suite, "which suite to run")
      ->check(CLI::IsMember({"all", "norms", "schur", "trunc", "absdiff", "davies", "comm"}));
  check_cmd->add_option("--trials", suite_cfg.trials, "trials per suite")
      ->check(CLI::Range(1, 1000000));
  check_cmd->add_option("--seed", suite_cfg.seed, "master seed");
  check_cmd->add_option("--max-n", suite_cfg.max_n, "largest matrix dimension")
      ->check(CLI::Range(1, 128));
  check_cmd->add_option("--slack", suite_cfg.slack, "relative tolerance for inequalities")
      ->check(CLI::NonNegativeNumber);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "sweep the certified bound and write a CSV");
  sweep_cmd->fallthrough();
  TrialConfig sweep_cfg;
  std::string sweep_structure = "generic";
  std::string sweep_out;
  sweep_cmd->add_option("--n", sweep_cfg.n, "matrix dimension")
      ->required()
      ->check(CLI::Range(1, 128));
  sweep_cmd->add_option("--trials", sweep_cfg.trials, "number of trials")
      ->required()
      ->check(CLI::Range(1, 1000000));
  sweep_cmd->add_option("--structure", sweep_structure, "pair structure")
      ->required()
      ->check(CLI::IsMember({"generic", "commuting", "rank1_perturb",
                             "identically_distributed", "symmetric_pair"}));
  sweep_cmd->add_option("--seed", sweep_cfg.seed, "master seed");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

  // search
  auto* search_cmd = app.add_subcommand("search", "adversarial ratio search");
  search_cmd->fallthrough();
  int search_n = 16, search_budget = 1000, search_restarts = 5;
  std::uint64_t search_seed = 0;
  std::string search_objective = "weak_ratio", search_out;
  search_cmd->add_option("--n", search_n, "matrix dimension")
      ->required()
      ->check(CLI::Range(1, 128));
  search_cmd->add_option("--budget", search_budget, "total objective evaluations")
      ->required()
      ->check(CLI::Range(1, 100000000));
  search_cmd->add_option("--restarts", search_restarts, "independent restarts")
      ->required()
      ->check(CLI::Range(1, 1000000));
  search_cmd->add_option("--objective", search_objective, "quantity to maximize")
      ->required()
      ->check(CLI::IsMember({"weak_ratio", "l1_ratio"}));
  search_cmd->add_option("--seed", search_seed, "master seed");
  search_cmd->add_option("--out", search_out, "output JSON path")->required();

  // decompose
  auto* dec_cmd = app.add_subcommand("decompose", "four-term decomposition certificate");
  dec_cmd->fallthrough();
  std::string dec_a, dec_b, dec_out;
  dec_cmd->add_option("--input", dec_a, "first matrix (JSON)")->required();
  dec_cmd->add_option("--input2", dec_b, "second matrix (JSON)")->required();
  dec_cmd->add_option("--out", dec_out, "output certificate path")->required();

  // davies
  auto* dav_cmd = app.add_subcommand("davies", "function-calculus weak bounds for a measure");
  dav_cmd->fallthrough();
  std::string dav_measure;
  int dav_n = 8, dav_trials = 20;
  std::uint64_t dav_seed = 0;
  dav_cmd->add_option("--measure", dav_measure, "measure (JSON)")->required();
  dav_cmd->add_option("--n", dav_n, "matrix dimension")->required()->check(CLI::Range(1, 128));
  dav_cmd->add_option("--trials", dav_trials, "number of random pairs")
      ->required()
      ->check(CLI::Range(1, 1000000));
  dav_cmd->add_option("--seed", dav_seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check_cmd) return run_check(suite, suite_cfg, no_timestamp);
    if (*sweep_cmd) {
      sweep_cfg.structure = parse_structure(sweep_structure);
      return run_sweep_cmd(sweep_cfg, sweep_out, no_timestamp);
    }
    if (*search_cmd)
      return run_search_cmd(search_n, search_budget, search_restarts, search_seed,
                            search_objective, search_out, no_timestamp);
    if (*dec_cmd) return run_decompose_cmd(dec_a, dec_b, dec_out, no_timestamp);
    if (*dav_cmd) return run_davies_cmd(dav_measure, dav_n, dav_trials, dav_seed, no_timestamp);
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const ConvergenceError& e) {
    std::fprintf(stderr, "verification failed to converge: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
