// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_IO_HPP
#define FRACDISC_IO_HPP

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracdisc/corpus.hpp"
#include "fracdisc/realline.hpp"
#include "fracdisc/solver.hpp"

namespace fracdisc {

using nlohmann::json;

/// Parse failure that names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string kind_to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::RiemannLiouville: return "rl";
    case ProblemKind::Regularized: return "regularized";
    case ProblemKind::RealRiemannLiouville: return "real-rl";
    case ProblemKind::RealCaputo: return "real-caputo";
  }
  return "rl";
}

inline ProblemKind kind_from_string(const std::string& s,
                                    const std::string& path) {
  if (s == "rl") return ProblemKind::RiemannLiouville;
  if (s == "regularized") return ProblemKind::Regularized;
  if (s == "real-rl") return ProblemKind::RealRiemannLiouville;
  if (s == "real-caputo") return ProblemKind::RealCaputo;
  throw SchemaError(path + ": expected one of \"rl\", \"regularized\", "
                           "\"real-rl\", \"real-caputo\", got \"" +
                    s + "\"");
}

namespace detail {

inline const json& require_field(const json& j, const char* key,
                                 const std::string& path) {
  if (!j.is_object()) {
    throw SchemaError(path + ": expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(path + "." + key + ": required field is missing");
  }
  return *it;
}

inline double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw SchemaError(path + ": expected a number");
  }
  return j.get<double>();
}

inline int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw SchemaError(path + ": expected an integer");
  }
  return j.get<int>();
}

inline Complex complex_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw SchemaError(path + ": expected a complex number as [re, im]");
  }
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

inline json complex_to_json(Complex c) {
  return json::array({c.real(), c.imag()});
}

inline json series_to_json(const FracPowerSeries& s) {
  json coeffs = json::array();
  for (const Complex& c : s.coeffs) coeffs.push_back(complex_to_json(c));
  return json{{"mu", s.mu}, {"coeffs", std::move(coeffs)}};
}

inline FracPowerSeries series_from_json(const json& j,
                                        const std::string& path) {
  FracPowerSeries s;
  if (!j.is_object()) {
    throw SchemaError(path + ": expected a series object {mu, coeffs}");
  }
  if (auto it = j.find("mu"); it != j.end()) {
    s.mu = detail::number_at(*it, path + ".mu");
  }
  const json& coeffs = detail::require_field(j, "coeffs", path);
  if (!coeffs.is_array() || coeffs.empty()) {
    throw SchemaError(path + ".coeffs: expected a non-empty array");
  }
  s.coeffs.clear();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    s.coeffs.push_back(detail::complex_at(
        coeffs[i], path + ".coeffs[" + std::to_string(i) + "]"));
  }
  return s;
}

inline json bivariate_to_json(const BivariateSeries& f) {
  json rows = json::array();
  for (std::size_t j = 0; j < f.rows; ++j) {
    json row = json::array();
    for (std::size_t k = 0; k < f.cols; ++k) {
      row.push_back(complex_to_json(f.at(j, k)));
    }
    rows.push_back(std::move(row));
  }
  return json{{"bivariate", std::move(rows)}};
}

/// Rows may have different lengths; shorter rows are padded with zeros.
inline BivariateSeries bivariate_from_json(const json& j,
                                           const std::string& path) {
  const json& rows = detail::require_field(j, "bivariate", path);
  if (!rows.is_array() || rows.empty()) {
    throw SchemaError(path + ".bivariate: expected a non-empty array of rows");
  }
  std::size_t cols = 1;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array()) {
      throw SchemaError(path + ".bivariate[" + std::to_string(r) +
                        "]: expected an array of [re, im] pairs");
    }
    cols = std::max(cols, rows[r].size());
  }
  BivariateSeries f = BivariateSeries::zero(rows.size() - 1, cols - 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t k = 0; k < rows[r].size(); ++k) {
      f.at(r, k) = detail::complex_at(
          rows[r][k], path + ".bivariate[" + std::to_string(r) + "][" +
                          std::to_string(k) + "]");
    }
  }
  return f;
}

inline json envelope_to_json(const GrowthEnvelope& env) {
  return json{{"c", env.c},
              {"n0", env.n0},
              {"g", series_to_json(env.g)},
              {"Mg", env.g_bound}};
}

inline GrowthEnvelope envelope_from_json(const json& j,
                                         const std::string& path) {
  GrowthEnvelope env;
  env.c = detail::number_at(detail::require_field(j, "c", path), path + ".c");
  env.n0 = detail::integer_at(detail::require_field(j, "n0", path),
                              path + ".n0");
  if (env.c < 0.0) throw SchemaError(path + ".c: must be nonnegative");
  if (env.n0 < 1) throw SchemaError(path + ".n0: must be at least 1");
  if (auto it = j.find("g"); it != j.end()) {
    env.g = series_from_json(*it, path + ".g");
    if (env.g.mu != 0.0) {
      throw SchemaError(path + ".g.mu: envelope series must be analytic");
    }
  }
  env.g_bound = detail::number_at(detail::require_field(j, "Mg", path),
                                  path + ".Mg");
  if (env.g_bound < 0.0) throw SchemaError(path + ".Mg: must be nonnegative");
  return env;
}

inline json problem_to_json(const ProblemSpec& p) {
  json j{{"kind", kind_to_string(p.kind)},
         {"order", p.order},
         {"initial", complex_to_json(p.initial)},
         {"rhs", bivariate_to_json(p.rhs)},
         {"trunc", p.trunc},
         {"tol", p.tol},
         {"maxIter", p.max_iter}};
  if (p.envelope) j["envelope"] = envelope_to_json(*p.envelope);
  if (p.seed) j["seed"] = series_to_json(*p.seed);
  return j;
}

inline ProblemSpec problem_from_json(const json& j) {
  const std::string path = "problem";
  ProblemSpec p;
  const json& kind = detail::require_field(j, "kind", path);
  if (!kind.is_string()) {
    throw SchemaError(path + ".kind: expected a string");
  }
  p.kind = kind_from_string(kind.get<std::string>(), path + ".kind");
  p.order = detail::number_at(detail::require_field(j, "order", path),
                              path + ".order");
  if (!(p.order > 0.0) || !(p.order < 1.0)) {
    throw SchemaError(path + ".order: must lie strictly between 0 and 1");
  }
  if (auto it = j.find("initial"); it != j.end()) {
    p.initial = detail::complex_at(*it, path + ".initial");
  }
  p.rhs = bivariate_from_json(detail::require_field(j, "rhs", path),
                              path + ".rhs");
  if (auto it = j.find("trunc"); it != j.end()) {
    const int n = detail::integer_at(*it, path + ".trunc");
    if (n < 1) throw SchemaError(path + ".trunc: must be at least 1");
    p.trunc = static_cast<std::size_t>(n);
  }
  if (auto it = j.find("tol"); it != j.end()) {
    p.tol = detail::number_at(*it, path + ".tol");
    if (!(p.tol > 0.0)) throw SchemaError(path + ".tol: must be positive");
  }
  if (auto it = j.find("maxIter"); it != j.end()) {
    p.max_iter = detail::integer_at(*it, path + ".maxIter");
    if (p.max_iter < 1) {
      throw SchemaError(path + ".maxIter: must be at least 1");
    }
  }
  if (auto it = j.find("envelope"); it != j.end()) {
    p.envelope = envelope_from_json(*it, path + ".envelope");
  }
  if (auto it = j.find("seed"); it != j.end()) {
    p.seed = series_from_json(*it, path + ".seed");
    if (p.seed->mu != 0.0) {
      throw SchemaError(path + ".seed.mu: seed series must be analytic");
    }
  }
  return p;
}

inline json report_to_json(const SolveReport& rep) {
  json j{{"status", to_string(rep.status)},
         {"solution", series_to_json(rep.solution)},
         {"radius", rep.radius},
         {"radiusSource", rep.diagnostics.radius_source},
         {"iterations", rep.iterations},
         {"distances", rep.distances},
         {"observedRatios", rep.observed_ratios},
         {"residualSeries", rep.residual_series},
         {"residualQuad", rep.residual_quad},
         {"noContractionWarning", rep.diagnostics.no_contraction_warning}};
  json conditions = json::object();
  if (rep.diagnostics.condition_ii_applicable) {
    conditions["conditionII"] = json{{"pass", rep.diagnostics.condition_ii.pass},
                                     {"gap", rep.diagnostics.condition_ii.gap}};
  }
  if (rep.diagnostics.compat_applicable) {
    conditions["regularizedCompat"] =
        json{{"pass", rep.diagnostics.compat.pass},
             {"value", rep.diagnostics.compat.value}};
  }
  j["conditions"] = std::move(conditions);
  j["contraction"] = json{{"kappa", rep.diagnostics.contraction.kappa},
                          {"rate", rep.diagnostics.contraction.rate},
                          {"threshold", rep.diagnostics.contraction.threshold},
                          {"affineExact",
                           rep.diagnostics.contraction.affine_exact}};
  j["envelope"] = envelope_to_json(rep.diagnostics.envelope);
  j["envelope"]["auto"] = rep.diagnostics.envelope_auto;
  j["invariantBall"] = json{{"radius", rep.diagnostics.ball_radius},
                            {"verified",
                             rep.diagnostics.invariant_ball_verified}};
  if (rep.diagnostics.schwarz.applicable) {
    j["schwarz"] = json{{"preconditionOk",
                         rep.diagnostics.schwarz.precondition_ok},
                        {"pass", rep.diagnostics.schwarz.pass},
                        {"worstRatio", rep.diagnostics.schwarz.worst_ratio}};
  }
  return j;
}

inline json real_result_to_json(const RealSolveResult& res) {
  return json{{"report", report_to_json(res.report)},
              {"x", res.xs},
              {"u", res.values},
              {"worstImag", res.worst_imag},
              {"residual", res.residual}};
}

inline json corpus_results_to_json(const std::vector<CorpusResult>& results) {
  json arr = json::array();
  for (const CorpusResult& r : results) {
    arr.push_back(json{{"name", r.name}, {"pass", r.pass},
                       {"detail", r.detail}});
  }
  return arr;
}

/// Iteration table: one row per Picard step; the ratio column is empty on
/// the first row.
inline void write_iteration_csv(std::ostream& os, const SolveReport& rep) {
  os << "n,distance,ratio\n" << std::setprecision(17);
  for (std::size_t i = 0; i < rep.distances.size(); ++i) {
    os << (i + 1) << ',' << rep.distances[i] << ',';
    if (i >= 1 && i - 1 < rep.observed_ratios.size()) {
      os << rep.observed_ratios[i - 1];
    }
    os << '\n';
  }
}

inline void write_real_csv(std::ostream& os, const std::vector<double>& xs,
                           const std::vector<double>& values) {
  os << "x,u\n" << std::setprecision(17);
  for (std::size_t i = 0; i < xs.size() && i < values.size(); ++i) {
    os << xs[i] << ',' << values[i] << '\n';
  }
}

}  // namespace fracdisc

#endif  // FRACDISC_IO_HPP
