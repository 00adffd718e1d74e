// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_CORPUS_HPP
#define FRACDISC_CORPUS_HPP

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdisc/realline.hpp"
#include "fracdisc/solver.hpp"

namespace fracdisc {

enum class ExpectedOutcome {
  UniqueSolution,
  SolutionFamily,
  ConditionIIViolated,
  NoContraction,
  KernelAnnihilation,
};

/// Catalogue entry: a problem with a known closed-form outcome. Family
/// entries are parametrized (u = c z^family_exponent for arbitrary c) and
/// verified at random parameter values; unique entries carry the expected
/// series.
struct CorpusEntry {
  std::string name;
  std::string summary;
  ProblemSpec problem;
  ExpectedOutcome expected = ExpectedOutcome::UniqueSolution;
  FracPowerSeries expected_solution = FracPowerSeries::zero();
  int family_exponent = 1;
  double tolerance = 1e-12;
};

struct CorpusResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The seven built-in problems, instantiated at order a and family exponent
/// n (n only affects the non-univalent family).
inline std::vector<CorpusEntry> corpus_list(double a = 0.5, int n = 2) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("corpus_list: order must lie in (0,1)");
  }
  if (n < 2) {
    throw std::invalid_argument("corpus_list: family exponent must be >= 2");
  }
  std::vector<CorpusEntry> entries;

  {
    CorpusEntry e;
    e.name = "kernel";
    e.summary = "the fractional derivative annihilates c z^{a-1} exactly";
    e.problem.order = a;
    e.expected = ExpectedOutcome::KernelAnnihilation;
    e.tolerance = 0.0;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "nonunique-linear";
    e.summary =
        "F = t/Gamma(2-a) sits on the contraction boundary; u = c z is a "
        "fixed point for every c";
    e.problem.kind = ProblemKind::RiemannLiouville;
    e.problem.order = a;
    e.problem.rhs = BivariateSeries::zero(0, 1);
    e.problem.rhs.at(0, 1) = Complex{gamma_ratio(1.0, 2.0 - a), 0.0};
    e.expected = ExpectedOutcome::NoContraction;
    e.family_exponent = 1;
    e.tolerance = 1e-10;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "nonunivalent-n";
    e.summary = "u = c z^n solves F = (Gamma(n+1)/Gamma(n+1-a)) t and fails "
                "the univalence probe";
    e.problem.kind = ProblemKind::RiemannLiouville;
    e.problem.order = a;
    e.problem.rhs = BivariateSeries::zero(0, 1);
    e.problem.rhs.at(0, 1) =
        Complex{gamma_ratio(n + 1.0, n + 1.0 - a), 0.0};
    e.expected = ExpectedOutcome::SolutionFamily;
    e.family_exponent = n;
    e.tolerance = 1e-10;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "prop310";
    e.summary = "F = 0.5 t + 1 with zero data violates the compatibility "
                "condition; no analytic solution exists";
    e.problem.kind = ProblemKind::RiemannLiouville;
    e.problem.order = a;
    e.problem.rhs = BivariateSeries::zero(0, 1);
    e.problem.rhs.at(0, 0) = Complex{1.0, 0.0};
    e.problem.rhs.at(0, 1) = Complex{0.5, 0.0};
    e.expected = ExpectedOutcome::ConditionIIViolated;
    e.tolerance = 1e-12;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "contract-linear";
    e.summary = "F = 0.5 t contracts at rate 0.5 Gamma(2-a); the unique "
                "solution is 0";
    e.problem.kind = ProblemKind::RiemannLiouville;
    e.problem.order = a;
    e.problem.rhs = BivariateSeries::zero(0, 1);
    e.problem.rhs.at(0, 1) = Complex{0.5, 0.0};
    e.expected = ExpectedOutcome::UniqueSolution;
    e.expected_solution = FracPowerSeries::zero();
    e.tolerance = 1e-12;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "forced";
    e.summary = "F = z forces the one-step solution Gamma(2-a) z";
    e.problem.kind = ProblemKind::RiemannLiouville;
    e.problem.order = a;
    e.problem.rhs = BivariateSeries::zero(1, 0);
    e.problem.rhs.at(1, 0) = Complex{1.0, 0.0};
    e.expected = ExpectedOutcome::UniqueSolution;
    e.expected_solution = FracPowerSeries::zero(2);
    e.expected_solution.coeffs[1] = Complex{gamma_ratio(2.0 - a, 2.0), 0.0};
    e.tolerance = 1e-12;
    entries.push_back(e);
  }
  {
    CorpusEntry e;
    e.name = "caputo-linear-rhs";
    e.summary = "regularized kind with unit data and F = z has solution "
                "1 + Gamma(2-a) z";
    e.problem.kind = ProblemKind::Regularized;
    e.problem.order = a;
    e.problem.initial = Complex{1.0, 0.0};
    e.problem.rhs = BivariateSeries::zero(1, 0);
    e.problem.rhs.at(1, 0) = Complex{1.0, 0.0};
    e.expected = ExpectedOutcome::UniqueSolution;
    e.expected_solution = FracPowerSeries::zero(2);
    e.expected_solution.coeffs[0] = Complex{1.0, 0.0};
    e.expected_solution.coeffs[1] = Complex{gamma_ratio(2.0 - a, 2.0), 0.0};
    e.tolerance = 1e-12;
    entries.push_back(e);
  }
  return entries;
}

namespace detail {

inline std::vector<Complex> random_family_parameters(std::size_t count) {
  std::mt19937 rng(20260817u);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  std::vector<Complex> cs(count);
  for (Complex& c : cs) c = std::polar(mag(rng), ang(rng));
  return cs;
}

/// Fixed-point family check for u = c z^m: every coefficient other than m
/// must come back bitwise zero (the composition never touches them) and the
/// surviving one within a few ulp of c.
inline bool family_fixed_point(const CorpusEntry& e, int m, Complex c,
                               std::string& why) {
  const std::size_t trunc = static_cast<std::size_t>(m) + 4;
  FracPowerSeries u = FracPowerSeries::zero(trunc + 1);
  u.coeffs[static_cast<std::size_t>(m)] = c;
  const FracPowerSeries v =
      picard_step(e.problem.rhs, u, e.problem.order, e.problem.kind,
                  e.problem.initial, trunc);
  constexpr double kUlp = 16.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < v.coeffs.size(); ++k) {
    if (k == static_cast<std::size_t>(m)) {
      if (std::abs(v.coeffs[k] - c) > kUlp * std::abs(c)) {
        why = "surviving coefficient drifted beyond 16 ulp";
        return false;
      }
    } else if (v.coeffs[k] != Complex{0.0, 0.0}) {
      why = "structural zero coefficient became nonzero";
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Execute one catalogue entry and compare against its expectation.
inline CorpusResult corpus_run(const CorpusEntry& e) {
  CorpusResult res;
  res.name = e.name;
  std::ostringstream msg;
  msg << std::setprecision(17);
  const double a = e.problem.order;

  switch (e.expected) {
    case ExpectedOutcome::KernelAnnihilation: {
      bool ok = true;
      for (Complex c : detail::random_family_parameters(10)) {
        FracPowerSeries s;
        s.mu = a - 1.0;
        s.coeffs = {c};
        const FracPowerSeries d = frac_derivative_series(s, a);
        for (const Complex& coeff : d.coeffs) {
          if (coeff != Complex{0.0, 0.0}) ok = false;
        }
      }
      msg << (ok ? "derivative of c z^{a-1} identically zero for 10 random c"
                 : "kernel family not annihilated");
      res.pass = ok;
      break;
    }
    case ExpectedOutcome::NoContraction: {
      const SolveReport rep = solve_picard(e.problem);
      const double rate = rep.diagnostics.contraction.rate;
      bool ok = rep.diagnostics.no_contraction_warning &&
                std::abs(rate - 1.0) <= e.tolerance;
      ok = ok && (rep.status == SolveStatus::Converged ||
                  rep.status == SolveStatus::NoContraction ||
                  rep.status == SolveStatus::IterationInconclusive);
      std::string why;
      for (Complex c : detail::random_family_parameters(10)) {
        if (!detail::family_fixed_point(e, e.family_exponent, c, why)) {
          ok = false;
          break;
        }
      }
      msg << "rate=" << rate << " warning="
          << (rep.diagnostics.no_contraction_warning ? "yes" : "no")
          << " status=" << to_string(rep.status);
      if (!why.empty()) msg << " family: " << why;
      res.pass = ok;
      break;
    }
    case ExpectedOutcome::SolutionFamily: {
      bool ok = true;
      std::string why;
      bool univalent_somewhere = false;
      for (Complex c : detail::random_family_parameters(10)) {
        if (!detail::family_fixed_point(e, e.family_exponent, c, why)) {
          ok = false;
          break;
        }
        FracPowerSeries u =
            FracPowerSeries::zero(static_cast<std::size_t>(e.family_exponent) + 1);
        u.coeffs[static_cast<std::size_t>(e.family_exponent)] = c;
        if (univalence_check(u, 1.0, 16)) univalent_somewhere = true;
      }
      ok = ok && !univalent_somewhere;
      msg << "family exponent " << e.family_exponent
          << (ok ? ": fixed points confirmed, univalence probe found a "
                   "collision"
                 : ": mismatch");
      if (!why.empty()) msg << " (" << why << ")";
      res.pass = ok;
      break;
    }
    case ExpectedOutcome::ConditionIIViolated: {
      const SolveReport rep = solve_picard(e.problem);
      const double gap = rep.diagnostics.condition_ii.gap;
      res.pass = rep.status == SolveStatus::ConditionIIViolated &&
                 std::abs(gap - 1.0) <= e.tolerance;
      msg << "status=" << to_string(rep.status) << " gap=" << gap;
      break;
    }
    case ExpectedOutcome::UniqueSolution: {
      const SolveReport rep = solve_picard(e.problem);
      bool ok = rep.status == SolveStatus::Converged;
      const double diff = coeff_weighted_norm(
          series_sub(rep.solution, [&] {
            FracPowerSeries exp_full = e.expected_solution;
            exp_full.coeffs.resize(rep.solution.coeffs.size(),
                                   Complex{0.0, 0.0});
            return exp_full;
          }()),
          1.0);
      ok = ok && diff <= e.tolerance;
      ok = ok && rep.residual_series <= 1e-12 && rep.residual_quad <= 1e-10;
      if (e.name == "contract-linear") {
        const double want = 0.5 * gamma_fn(2.0 - a);
        ok = ok &&
             std::abs(rep.diagnostics.contraction.rate - want) <= 1e-10;
      }
      if (e.name == "caputo-linear-rhs") {
        std::vector<double> grid;
        for (int i = 0; i <= 20; ++i) grid.push_back(0.01 + 0.99 * i / 20.0);
        const double rres =
            real_residual(rep.solution, e.problem.rhs, a, e.problem.initial,
                          e.problem.kind, grid);
        ok = ok && rres <= 1e-10;
        msg << "realResidual=" << rres << " ";
      }
      msg << "status=" << to_string(rep.status) << " coeffDiff=" << diff
          << " residualSeries=" << rep.residual_series
          << " residualQuad=" << rep.residual_quad;
      res.pass = ok;
      break;
    }
  }
  res.detail = msg.str();
  return res;
}

/// Look an entry up by name and run it.
inline CorpusResult corpus_run(const std::string& name, double a = 0.5,
                               int n = 2) {
  for (const CorpusEntry& e : corpus_list(a, n)) {
    if (e.name == name) return corpus_run(e);
  }
  throw std::invalid_argument("corpus_run: unknown entry \"" + name + "\"");
}

inline std::vector<CorpusResult> corpus_run_all(double a = 0.5, int n = 2) {
  std::vector<CorpusResult> out;
  for (const CorpusEntry& e : corpus_list(a, n)) out.push_back(corpus_run(e));
  return out;
}

}  // namespace fracdisc

#endif  // FRACDISC_CORPUS_HPP
