// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_REALLINE_HPP
#define FRACDISC_REALLINE_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdisc/series.hpp"
#include "fracdisc/solver.hpp"

namespace fracdisc {

struct RealCompatReport {
  bool pass = false;
  double worst_imag = 0.0;
};

/// Real-compatibility criterion: every rhs coefficient and the initial value
/// must be real (imaginary part below 1e-12). This makes F(x, y) real for
/// real arguments, so taking real parts commutes with the equation and the
/// projected function solves the real problem.
inline RealCompatReport check_real_compat(const BivariateSeries& F,
                                          Complex b) {
  RealCompatReport rep;
  rep.worst_imag = std::abs(b.imag());
  for (const Complex& c : F.c) {
    rep.worst_imag = std::max(rep.worst_imag, std::abs(c.imag()));
  }
  rep.pass = rep.worst_imag <= kHypothesisTol;
  return rep;
}

/// Independent residual of a candidate solution of the real problem
///   D^a u = f(x, u)   (Caputo kinds differentiate u - u(0) instead):
/// max over the grid of |D^a_series v (x) - x^{-a} F(x, u(x))|, where the
/// derivative uses the exact termwise rule. The solve went through the
/// integral form, so this exercises the opposite path.
inline double real_residual(const FracPowerSeries& u, const BivariateSeries& F,
                            double a, Complex b, ProblemKind kind,
                            const std::vector<double>& grid) {
  FracPowerSeries v = u;
  if (is_regularized_kind(kind) && !v.coeffs.empty()) v.coeffs[0] -= b;
  const FracPowerSeries du = frac_derivative_series(v, a);
  double worst = 0.0;
  for (double x : grid) {
    if (!(x > 0.0)) {
      throw std::invalid_argument(
          "real_residual: grid points must be strictly positive");
    }
    const Complex z{x, 0.0};
    const Complex lhs = eval(du, z);
    const Complex rhs = std::pow(x, -a) * eval(F, z, eval(u, z));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

struct RealSolveResult {
  std::vector<double> xs;
  std::vector<double> values;  // Re u(x)
  double worst_imag = 0.0;     // max |Im u(x)| over the grid, projection loss
  double residual = std::numeric_limits<double>::quiet_NaN();
  SolveReport report;
};

/// Solve a real-line problem by solving its complex counterpart and
/// projecting to the real axis: RealRL runs the direct kind (recentered when
/// b != 0), RealCaputo runs the regularized kind. Samples land on gridN
/// uniform points of [R/100, R]; x = 0 is excluded because the direct
/// derivative of a generic solution is singular there.
inline RealSolveResult solve_real(const ProblemSpec& p, int grid_n = 101) {
  if (!is_real_kind(p.kind)) {
    throw std::invalid_argument(
        "solve_real: problem kind must be real-rl or real-caputo");
  }
  if (grid_n < 2) {
    throw std::invalid_argument("solve_real: need at least 2 grid points");
  }
  RealSolveResult out;
  const RealCompatReport compat = check_real_compat(p.rhs, p.initial);
  if (!compat.pass) {
    out.report.status = SolveStatus::RealCompatViolated;
    out.report.solution = detail::constant_series(p.initial, p.trunc);
    return out;
  }
  ProblemSpec q = p;
  q.kind = (p.kind == ProblemKind::RealRiemannLiouville)
               ? ProblemKind::RiemannLiouville
               : ProblemKind::Regularized;
  out.report = solve_picard(q);
  if (out.report.status != SolveStatus::Converged) return out;

  const double R = out.report.radius;
  const double x0 = R / 100.0;
  out.xs.resize(grid_n);
  out.values.resize(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const double x = x0 + (R - x0) * static_cast<double>(i) / (grid_n - 1);
    const Complex uz = eval(out.report.solution, Complex{x, 0.0});
    out.xs[i] = x;
    out.values[i] = uz.real();
    out.worst_imag = std::max(out.worst_imag, std::abs(uz.imag()));
  }
  out.residual =
      real_residual(out.report.solution, p.rhs, p.order, p.initial, p.kind,
                    out.xs);
  return out;
}

}  // namespace fracdisc

#endif  // FRACDISC_REALLINE_HPP
