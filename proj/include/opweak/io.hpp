#pragma once

// JSON wire formats (matrices, measures, decomposition certificates) and the
// CSV emitter for sweep records.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "opweak/absdiff.hpp"
#include "opweak/davies.hpp"
#include "opweak/harness.hpp"
#include "opweak/matrix.hpp"
#include "opweak/norms.hpp"

namespace opweak {

using json = nlohmann::json;

// {"n": N, "re": [[...]], "im": [[...]]}; "im" optional.
inline json matrix_to_json(const ComplexMatrix& m) {
  require_square(m, "matrix_to_json");
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"n", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("re"))
    throw InputError("matrix json: expected object with \"n\" and \"re\"");
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxDimension) throw InputError("matrix json: dimension out of range");
  const json& re = j.at("re");
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (!re.is_array() || static_cast<int>(re.size()) != n ||
      (im && (!im->is_array() || static_cast<int>(im->size()) != n)))
    throw InputError("matrix json: row count mismatch");
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& rrow = re.at(i);
    if (!rrow.is_array() || static_cast<int>(rrow.size()) != n)
      throw InputError("matrix json: column count mismatch");
    for (int jcol = 0; jcol < n; ++jcol) {
      double x = rrow.at(jcol).get<double>();
      double y = 0.0;
      if (im) {
        const json& irow = im->at(i);
        if (!irow.is_array() || static_cast<int>(irow.size()) != n)
          throw InputError("matrix json: column count mismatch");
        y = irow.at(jcol).get<double>();
      }
      m(i, jcol) = cplx(x, y);
    }
  }
  if (!m.all_finite()) throw InputError("matrix json: entries must be finite");
  return m;
}

inline std::string matrix_to_string(const ComplexMatrix& m) { return matrix_to_json(m).dump(); }

// {"atoms": [...], "weights": [...]} for atomic measures, or
// {"breaks": [...], "densities": [...]} for piecewise-constant densities.
struct MeasureInput {
  bool atomic = true;
  DiscreteMeasure discrete;
  std::vector<double> breaks, densities;  // populated for the density form
};

inline MeasureInput measure_from_json(const json& j) {
  MeasureInput out;
  if (j.contains("atoms") && j.contains("weights")) {
    out.atomic = true;
    out.discrete = DiscreteMeasure(j.at("atoms").get<std::vector<double>>(),
                                   j.at("weights").get<std::vector<double>>());
    return out;
  }
  if (j.contains("breaks") && j.contains("densities")) {
    out.atomic = false;
    out.breaks = j.at("breaks").get<std::vector<double>>();
    out.densities = j.at("densities").get<std::vector<double>>();
    PiecewiseConstantMeasure(out.breaks, out.densities);  // validate
    return out;
  }
  throw InputError("measure json: expected atoms/weights or breaks/densities");
}

inline json certificate_to_json(const Lemma33Certificate& cert) {
  return json{{"term_pp", matrix_to_json(cert.term_pp)},
              {"term_mm", matrix_to_json(cert.term_mm)},
              {"term_pm", matrix_to_json(cert.term_pm)},
              {"term_mp", matrix_to_json(cert.term_mp)},
              {"U", matrix_to_json(cert.u)},
              {"V", matrix_to_json(cert.v)},
              {"mu", cert.mu},
              {"residual", cert.residual},
              {"term_weak_norms",
               {{"pp", weak_l1_norm(cert.term_pp)},
                {"mm", weak_l1_norm(cert.term_mm)},
                {"pm", weak_l1_norm(cert.term_pm)},
                {"mp", weak_l1_norm(cert.term_mp)}}}};
}

inline json bound_certificate_to_json(const BoundCertificate& cert) {
  json links = json::array();
  for (const ChainLink& l : cert.links)
    links.push_back(json{{"name", l.name}, {"pass", l.pass}, {"lhs", l.lhs}, {"rhs", l.rhs}});
  return json{{"n", cert.n},           {"lhs", cert.lhs},
              {"l1_diff", cert.l1_diff}, {"rhs", cert.rhs},
              {"ratio", cert.ratio},   {"lemma33_residual", cert.lemma33_residual},
              {"pass", cert.pass},     {"links", std::move(links)}};
}

// Shortest-round-trip decimal for doubles in CSV cells.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return std::string(buf);
}

// Sweep records.  Column set is part of the CLI contract; keep it stable.
// With include_timing=false the elapsed column is zeroed so reruns are
// byte-identical.
inline std::string records_to_csv(const std::vector<TrialRecord>& records,
                                  bool include_timing = true) {
  std::string out = "trial,seed,n,structure,l1_diff,weak_abs_diff,ratio,bound,pass,elapsed_ms\n";
  char elapsed[40];
  for (const TrialRecord& r : records) {
    std::snprintf(elapsed, sizeof(elapsed), "%.3f", include_timing ? r.elapsed_ms : 0.0);
    out += std::to_string(r.trial_index) + ',' + std::to_string(r.seed) + ',' +
           std::to_string(r.n) + ',' + to_string(r.structure) + ',' + format_double(r.l1_diff) +
           ',' + format_double(r.weak_abs_diff) + ',' + format_double(r.ratio) + ',' +
           format_double(r.bound) + ',' + (r.pass ? "1" : "0") + ',' + elapsed + '\n';
  }
  return out;
}

inline json sweep_summary_to_json(const SweepSummary& s) {
  return json{{"trials", s.trials},         {"pass_count", s.pass_count},
              {"max_ratio", s.max_ratio},   {"mean_ratio", s.mean_ratio},
              {"worst_trial", s.worst_trial}, {"all_pass", s.all_pass}};
}

inline json search_result_to_json(const SearchResult& res) {
  json trace = json::array();
  for (const auto& [idx, value] : res.trace) trace.push_back(json::array({idx, value}));
  return json{{"objective", to_string(res.objective)},
              {"n", res.n},
              {"budget", res.budget},
              {"restarts", res.restarts},
              {"seed", res.seed},
              {"best_value", res.best_value},
              {"bound", res.bound},
              {"bounded", res.bounded},
              {"pass", res.pass},
              {"evals_used", res.evals_used},
              {"trace", std::move(trace)},
              {"best_a", matrix_to_json(res.best_a.matrix())},
              {"best_b", matrix_to_json(res.best_b.matrix())}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("invalid json in " + path + ": " + e.what());
  }
  return j;
}

inline void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace opweak
