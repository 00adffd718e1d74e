// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: solve initial-value problems for the fractional
// derivative on the unit disc, check hypotheses, apply the operators to
// series, run the built-in corpus, and project solutions to the real line.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracdisc/fracdisc.hpp"

namespace {

using fracdisc::Complex;
using fracdisc::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw fracdisc::SchemaError(path + ": " + e.what());
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << text;
}

int status_exit_code(fracdisc::SolveStatus s) {
  switch (s) {
    case fracdisc::SolveStatus::Converged:
      return 0;
    case fracdisc::SolveStatus::ConditionIIViolated:
    case fracdisc::SolveStatus::CompatViolated:
    case fracdisc::SolveStatus::RealCompatViolated:
      return 2;
    default:
      return 1;
  }
}

// Recentered rhs the iteration actually runs on; envelope and contraction
// estimates refer to it.
fracdisc::BivariateSeries centered_rhs(const fracdisc::ProblemSpec& p) {
  const bool regularized = fracdisc::is_regularized_kind(p.kind);
  if (p.initial == Complex{0.0, 0.0}) return p.rhs;
  fracdisc::BivariateSeries g =
      fracdisc::shift_to_homogeneous(p.rhs, p.initial, p.order);
  if (regularized) {
    g.at(0, 0) += p.initial * fracdisc::gamma_ratio(1.0, 1.0 - p.order);
  }
  return g;
}

int cmd_solve(const std::string& problem_path, const std::string& out_path,
              const std::string& csv_path) {
  const fracdisc::ProblemSpec p =
      fracdisc::problem_from_json(load_json(problem_path));
  const fracdisc::SolveReport rep = fracdisc::solve_picard(p);
  const json j = fracdisc::report_to_json(rep);
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream os;
    fracdisc::write_iteration_csv(os, rep);
    write_text(csv_path, os.str());
  }
  return status_exit_code(rep.status);
}

int cmd_check(const std::string& problem_path) {
  const fracdisc::ProblemSpec p =
      fracdisc::problem_from_json(load_json(problem_path));
  const bool regularized = fracdisc::is_regularized_kind(p.kind);
  const bool real = fracdisc::is_real_kind(p.kind);

  json j{{"kind", fracdisc::kind_to_string(p.kind)}, {"order", p.order}};
  bool hypotheses_ok = true;

  j["conditionI"] = json{{"finite", fracdisc::check_condition_I_finite(p.rhs)}};
  hypotheses_ok = hypotheses_ok && j["conditionI"]["finite"].get<bool>();

  if (!regularized) {
    const auto cond = fracdisc::check_condition_II(p.rhs, p.initial, p.order);
    j["conditionII"] = json{{"pass", cond.pass}, {"gap", cond.gap}};
    hypotheses_ok = hypotheses_ok && cond.pass;
  } else {
    const auto compat =
        fracdisc::check_regularized_compat(p.rhs, p.initial);
    j["regularizedCompat"] = json{{"pass", compat.pass},
                                  {"value", compat.value}};
    hypotheses_ok = hypotheses_ok && compat.pass;
  }
  if (real) {
    const auto rc = fracdisc::check_real_compat(p.rhs, p.initial);
    j["realCompat"] = json{{"pass", rc.pass}, {"worstImag", rc.worst_imag}};
    hypotheses_ok = hypotheses_ok && rc.pass;
  }

  const fracdisc::BivariateSeries centered = centered_rhs(p);
  const bool env_auto = !p.envelope.has_value();
  const fracdisc::GrowthEnvelope env =
      p.envelope ? *p.envelope : fracdisc::detail::auto_envelope(centered);
  const auto growth =
      fracdisc::check_growth(centered, env, Complex{0.0, 0.0},
                             fracdisc::GrowthMode::Absolute);
  j["growth"] = json{{"pass", growth.pass},
                     {"worstMargin", growth.worst_margin}};
  j["envelope"] = fracdisc::envelope_to_json(env);
  j["envelope"]["auto"] = env_auto;

  const auto contraction = fracdisc::estimate_lipschitz(centered, p.order);
  j["contraction"] = json{{"kappa", contraction.kappa},
                          {"rate", contraction.rate},
                          {"threshold", contraction.threshold},
                          {"affineExact", contraction.affine_exact}};
  if (contraction.rate < 1.0 - 1e-9) {
    j["radius"] = 1.0;
    j["radiusSource"] = "unit-disc";
  } else {
    j["radius"] = fracdisc::estimate_radius(env, 1.0, p.order);
    j["radiusSource"] = "envelope";
  }

  j["pass"] = hypotheses_ok;
  std::cout << j.dump(2) << "\n";
  return hypotheses_ok ? 0 : 2;
}

int cmd_apply(const std::string& op, double order,
              const std::string& series_path, bool quad_oracle,
              const std::string& out_path) {
  const fracdisc::FracPowerSeries s =
      fracdisc::series_from_json(load_json(series_path), "series");
  if (!(order > 0.0) || !(order < 1.0)) {
    throw std::runtime_error("apply: --order must lie strictly in (0,1)");
  }
  fracdisc::FracPowerSeries result;
  if (op == "integral") {
    result = fracdisc::frac_integral_series(s, order);
  } else if (op == "derivative") {
    if (quad_oracle) {
      throw std::runtime_error(
          "apply: --quad-oracle is only available for --op integral (the "
          "derivative has no quadrature path)");
    }
    result = fracdisc::frac_derivative_series(s, order);
  } else {
    throw std::runtime_error(
        "apply: --op must be \"integral\" or \"derivative\"");
  }
  json j{{"op", op},
         {"order", order},
         {"input", fracdisc::series_to_json(s)},
         {"result", fracdisc::series_to_json(result)}};
  if (quad_oracle) {
    const fracdisc::JacobiRule rule = fracdisc::gauss_jacobi_rule(64, order);
    const auto u_fn = [&](Complex zeta) { return fracdisc::eval(s, zeta); };
    double worst = 0.0;
    int samples = 0;
    for (int i = 0; i < 4; ++i) {
      const double rho = 0.1 + 0.9 * (i + 1) / 4.0;
      for (int k = 0; k < 5; ++k) {
        const Complex z = std::polar(rho, 2.0 * M_PI * k / 5.0 + 0.37);
        const Complex direct =
            fracdisc::frac_integral_quad(u_fn, order, z, rule);
        worst = std::max(worst,
                         std::abs(direct - fracdisc::eval(result, z)));
        ++samples;
      }
    }
    j["quadOracle"] = json{{"samples", samples}, {"maxDeviation", worst}};
  }
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_corpus(bool all, const std::string& name, double order, int family_n,
               const std::string& out_path) {
  std::vector<fracdisc::CorpusResult> results;
  if (all) {
    results = fracdisc::corpus_run_all(order, family_n);
  } else if (!name.empty()) {
    results.push_back(fracdisc::corpus_run(name, order, family_n));
  } else {
    throw std::runtime_error("corpus run: pass --all or an entry name");
  }
  const json j = fracdisc::corpus_results_to_json(results);
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  for (const auto& r : results) {
    if (!r.pass) return 1;
  }
  return 0;
}

int cmd_real(const std::string& problem_path, int grid_n,
             const std::string& csv_path, const std::string& out_path) {
  const fracdisc::ProblemSpec p =
      fracdisc::problem_from_json(load_json(problem_path));
  const fracdisc::RealSolveResult res = fracdisc::solve_real(p, grid_n);
  const json j = fracdisc::real_result_to_json(res);
  std::cout << j.dump(2) << "\n";
  if (!out_path.empty()) write_text(out_path, j.dump(2) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream os;
    fracdisc::write_real_csv(os, res.xs, res.values);
    write_text(csv_path, os.str());
  }
  return status_exit_code(res.report.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional initial-value problems on the unit disc"};
  app.require_subcommand(1);

  std::string problem_path, out_path, csv_path, series_path, corpus_name, op;
  double order = 0.5;
  int grid_n = 101;
  int family_n = 2;
  bool quad_oracle = false;
  bool corpus_all = false;

  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  solve->add_option("problem", problem_path, "problem JSON file")->required();
  solve->add_option("--out", out_path, "write the report JSON here too");
  solve->add_option("--csv", csv_path, "write the iteration table as CSV");

  auto* check = app.add_subcommand(
      "check", "Check hypotheses, growth, contraction and radius; no solve");
  check->add_option("problem", problem_path, "problem JSON file")->required();

  auto* apply = app.add_subcommand("apply", "Apply I^a or D^a to a series");
  apply->add_option("--op", op, "integral or derivative")->required();
  apply->add_option("--order", order, "fractional order in (0,1)")
      ->required();
  apply->add_option("--series", series_path, "series JSON file")->required();
  apply->add_flag("--quad-oracle", quad_oracle,
                  "cross-check the integral against quadrature");
  apply->add_option("--out", out_path, "write the result JSON here too");

  auto* corpus = app.add_subcommand("corpus", "Built-in problem catalogue");
  auto* corpus_run = corpus->add_subcommand("run", "Run catalogue entries");
  corpus_run->add_flag("--all", corpus_all, "run every entry");
  corpus_run->add_option("name", corpus_name, "single entry name");
  corpus_run->add_option("--order", order, "fractional order (default 0.5)");
  corpus_run->add_option("--family-n", family_n,
                         "exponent for the non-univalent family (default 2)");
  corpus_run->add_option("--out", out_path, "write the results JSON here too");
  corpus->require_subcommand(1);

  auto* real = app.add_subcommand("real", "Solve a real-line problem");
  real->add_option("problem", problem_path, "problem JSON file")->required();
  real->add_option("--grid", grid_n, "sample count on (0, R] (default 101)");
  real->add_option("--csv", csv_path, "write samples as CSV (x, u)");
  real->add_option("--out", out_path, "write the result JSON here too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(problem_path, out_path, csv_path);
    if (check->parsed()) return cmd_check(problem_path);
    if (apply->parsed()) {
      return cmd_apply(op, order, series_path, quad_oracle, out_path);
    }
    if (corpus->parsed()) {
      return cmd_corpus(corpus_all, corpus_name, order, family_n, out_path);
    }
    if (real->parsed()) {
      return cmd_real(problem_path, grid_n, csv_path, out_path);
    }
  } catch (const fracdisc::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
