// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_SOLVER_HPP
#define FRACDISC_SOLVER_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdisc/conditions.hpp"
#include "fracdisc/fracops.hpp"
#include "fracdisc/series.hpp"
#include "fracdisc/specfun.hpp"

namespace fracdisc {

enum class ProblemKind {
  RiemannLiouville,
  Regularized,
  RealRiemannLiouville,
  RealCaputo,
};

inline bool is_real_kind(ProblemKind k) {
  return k == ProblemKind::RealRiemannLiouville ||
         k == ProblemKind::RealCaputo;
}

inline bool is_regularized_kind(ProblemKind k) {
  return k == ProblemKind::Regularized || k == ProblemKind::RealCaputo;
}

/// One initial-value problem D^a u = f(z, u), u captured through the
/// premultiplied right-hand side F = z^a f as a finite bivariate series.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::RiemannLiouville;
  double order = 0.5;
  Complex initial{0.0, 0.0};
  BivariateSeries rhs;
  std::size_t trunc = 64;
  double tol = 1e-12;
  int max_iter = 200;
  std::optional<GrowthEnvelope> envelope;   // for the homogeneous form
  std::optional<FracPowerSeries> seed;      // iteration seed override
};

struct ContractionEstimate {
  double kappa = 0.0;
  double rate = 0.0;       // kappa * Gamma(2-a)
  double threshold = 0.0;  // 1 / Gamma(2-a)
  bool affine_exact = false;
};

enum class SolveStatus {
  Converged,
  ConditionIIViolated,
  CompatViolated,
  RealCompatViolated,
  NoContraction,
  MaxIterExceeded,
  IterationInconclusive,
  Diverged,
};

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::ConditionIIViolated: return "condition-ii-violated";
    case SolveStatus::CompatViolated: return "compat-violated";
    case SolveStatus::RealCompatViolated: return "real-compat-violated";
    case SolveStatus::NoContraction: return "no-contraction";
    case SolveStatus::MaxIterExceeded: return "max-iter-exceeded";
    case SolveStatus::IterationInconclusive: return "iteration-inconclusive";
    case SolveStatus::Diverged: return "diverged";
  }
  return "unknown";
}

struct SolveDiagnostics {
  bool condition_ii_applicable = false;
  ConditionIIReport condition_ii;
  bool compat_applicable = false;
  CompatReport compat;
  ContractionEstimate contraction;
  bool no_contraction_warning = false;
  GrowthEnvelope envelope;
  bool envelope_auto = true;
  double ball_radius = 1.0;
  bool invariant_ball_verified = false;
  std::string radius_source = "unit-disc";
  SchwarzReport schwarz;
};

struct SolveReport {
  SolveStatus status = SolveStatus::Converged;
  FracPowerSeries solution = FracPowerSeries::zero();
  double radius = 1.0;
  int iterations = 0;
  std::vector<double> distances;        // d_n per iteration
  std::vector<double> observed_ratios;  // d_{n+1} / d_n
  double residual_series = std::numeric_limits<double>::quiet_NaN();
  double residual_quad = std::numeric_limits<double>::quiet_NaN();
  SolveDiagnostics diagnostics;
};

/// One sweep of the integral operator: compose the right-hand side with the
/// current iterate and scale coefficient k by m_k = Gamma(k+1-a)/Gamma(k+1).
/// This diagonal action is identical to the radial integral
///   (1/Gamma(a)) int_0^z zeta^{-a} phi(zeta) (z-zeta)^{a-1} dzeta
/// applied to phi = F(., u(.)); the regularized kinds add the initial value
/// on top. For the direct kind the caller supplies u with u(0) = b, which is
/// b = 0 once the problem is in homogeneous form.
inline FracPowerSeries picard_step(const BivariateSeries& F,
                                   const FracPowerSeries& u, double a,
                                   ProblemKind kind, Complex b,
                                   std::size_t trunc) {
  const FracPowerSeries phi = compose_rhs(F, u, trunc);
  FracPowerSeries out = FracPowerSeries::zero(trunc + 1, 0.0);
  for (std::size_t k = 0; k < phi.coeffs.size(); ++k) {
    const double kk = static_cast<double>(k);
    out.coeffs[k] = phi.coeffs[k] * gamma_ratio(kk + 1.0 - a, kk + 1.0);
  }
  if (is_regularized_kind(kind)) out.coeffs[0] += b;
  return out;
}

/// Recenter the t-variable of F around the initial value and absorb the
/// inhomogeneous term: H(z, s) = F(z, s + b) - b / Gamma(1-a). Solving the
/// direct problem for H with zero data and adding b back reproduces the
/// original solution. b = 0 leaves F bitwise unchanged.
inline BivariateSeries shift_to_homogeneous(const BivariateSeries& F,
                                            Complex b, double a) {
  BivariateSeries H = BivariateSeries::zero(F.rows - 1, F.cols - 1);
  std::vector<std::vector<double>> binom(F.cols);
  for (std::size_t k = 0; k < F.cols; ++k) {
    binom[k].assign(k + 1, 1.0);
    for (std::size_t m = 1; m < k; ++m) {
      binom[k][m] = binom[k - 1][m - 1] + binom[k - 1][m];
    }
  }
  for (std::size_t j = 0; j < F.rows; ++j) {
    for (std::size_t k = 0; k < F.cols; ++k) {
      const Complex cjk = F.at(j, k);
      if (cjk == Complex{0.0, 0.0}) continue;
      Complex bpow{1.0, 0.0};
      for (std::size_t m = k + 1; m-- > 0;) {
        H.at(j, m) += cjk * binom[k][m] * bpow;
        bpow *= b;
      }
    }
  }
  H.at(0, 0) -= b * gamma_ratio(1.0, 1.0 - a);
  return H;
}

/// Largest R in (0, 1] whose self-mapping bound
///   c r^{n0} R^{n0} Gamma(n0+1-a)/Gamma(n0+1) + Mg R Gamma(2-a) <= r
/// holds, found by bisection to 1e-12. The bound vanishes as R -> 0+, so a
/// positive radius always exists.
inline double estimate_radius(const GrowthEnvelope& env, double r, double a) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("estimate_radius: ball radius must be > 0");
  }
  const double head =
      env.c * std::pow(r, env.n0) *
      gamma_ratio(env.n0 + 1.0 - a, env.n0 + 1.0);
  const double tail = env.g_bound * gamma_fn(2.0 - a);
  const auto bound = [&](double R) {
    return head * std::pow(R, env.n0) + tail * R;
  };
  if (bound(1.0) <= r) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (bound(mid) <= r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Sampled Lipschitz constant of F in its second argument over the closed
/// bidisc, and the induced contraction data. For F affine in t the constant
/// is read off the t-linear coefficient polynomial on the boundary circle,
/// which the maximum principle makes exact up to angular sampling.
inline ContractionEstimate estimate_lipschitz(const BivariateSeries& F,
                                              double a, int nz = 64,
                                              int nt = 16,
                                              double t_radius = 1.0) {
  if (nz < 8 || nt < 8) {
    throw std::invalid_argument(
        "estimate_lipschitz: sample counts must be at least 8");
  }
  ContractionEstimate est;
  est.threshold = 1.0 / gamma_fn(2.0 - a);
  if (F.cols <= 2) {
    est.affine_exact = true;
    double kappa = 0.0;
    if (F.cols == 2) {
      for (int p = 0; p < nz; ++p) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * p / nz);
        Complex col{0.0, 0.0};
        for (std::size_t j = F.rows; j-- > 0;) col = col * z + F.at(j, 1);
        kappa = std::max(kappa, std::abs(col));
      }
    }
    est.kappa = kappa;
  } else {
    // golden-angle spiral: nt well-spread t samples, all ordered pairs
    std::vector<Complex> ts(nt);
    constexpr double kGolden = 2.39996322972865332;
    for (int i = 0; i < nt; ++i) {
      const double rho = t_radius * std::sqrt((i + 0.5) / nt);
      ts[i] = std::polar(rho, kGolden * i);
    }
    double kappa = 0.0;
    for (int p = 0; p < nz; ++p) {
      const Complex z = std::polar(1.0, 2.0 * M_PI * p / nz);
      for (int i = 0; i < nt; ++i) {
        const Complex fi = eval(F, z, ts[i]);
        for (int j = i + 1; j < nt; ++j) {
          const double sep = std::abs(ts[i] - ts[j]);
          if (sep < 1e-8) continue;
          kappa = std::max(kappa, std::abs(fi - eval(F, z, ts[j])) / sep);
        }
      }
    }
    est.kappa = kappa;
  }
  est.rate = est.kappa * gamma_fn(2.0 - a);
  return est;
}

/// Heuristic injectivity probe on the disc of radius R: images of a polar
/// sample grid are compared pairwise, and a pair of well-separated points
/// with nearly identical images is a non-univalence witness. The angle count
/// is a multiple of 6 so the symmetric families u = c z^2 and c z^3 collide
/// exactly on the grid. Absence of a witness proves nothing.
inline bool univalence_check(const FracPowerSeries& u, double R, int n) {
  if (n < 16) {
    throw std::invalid_argument("univalence_check: need n >= 16 samples");
  }
  if (!(R > 0.0)) {
    throw std::invalid_argument("univalence_check: radius must be positive");
  }
  const int n_angles = 6 * ((n + 1) / 2);
  std::vector<Complex> pts;
  std::vector<Complex> imgs;
  pts.reserve(static_cast<std::size_t>(n) * n_angles);
  for (int i = 1; i <= n; ++i) {
    const double rho = R * static_cast<double>(i) / n;
    for (int j = 0; j < n_angles; ++j) {
      const Complex w = std::polar(rho, 2.0 * M_PI * j / n_angles);
      pts.push_back(w);
      imgs.push_back(eval(u, w));
    }
  }
  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = p + 1; q < pts.size(); ++q) {
      if (std::abs(pts[p] - pts[q]) >= 1e-3 &&
          std::abs(imgs[p] - imgs[q]) <= 1e-10) {
        return false;
      }
    }
  }
  return true;
}

namespace detail {

/// Envelope derived from the series coefficients: all t-active terms fold
/// into c |t|^{n0} (scaled by 2^{k-n0} so the bound survives probing out to
/// |t| = 2), and the t-free column folds into g(z) = Mg z, valid on |z| <= 1.
inline GrowthEnvelope auto_envelope(const BivariateSeries& F) {
  GrowthEnvelope env;
  int n0 = 0;
  for (std::size_t k = 1; k < F.cols && n0 == 0; ++k) {
    for (std::size_t j = 0; j < F.rows; ++j) {
      if (F.at(j, k) != Complex{0.0, 0.0}) {
        n0 = static_cast<int>(k);
        break;
      }
    }
  }
  env.n0 = std::max(n0, 1);
  env.c = 0.0;
  for (std::size_t k = 1; k < F.cols; ++k) {
    const double scale = std::pow(2.0, static_cast<double>(k) - env.n0);
    for (std::size_t j = 0; j < F.rows; ++j) {
      env.c += std::abs(F.at(j, k)) * std::max(scale, 1.0);
    }
  }
  double mg = 0.0;
  for (std::size_t j = 1; j < F.rows; ++j) mg += std::abs(F.at(j, 0));
  env.g = FracPowerSeries::zero(2, 0.0);
  env.g.coeffs[1] = Complex{mg, 0.0};
  env.g_bound = mg;
  return env;
}

inline FracPowerSeries constant_series(Complex value, std::size_t trunc) {
  FracPowerSeries s = FracPowerSeries::zero(trunc + 1, 0.0);
  s.coeffs[0] = value;
  return s;
}

inline std::vector<Complex> residual_sample_points(double R) {
  std::vector<Complex> zs;
  const double radii[] = {0.3, 0.6, 0.9, 0.99};
  for (double rho : radii) {
    for (int j = 0; j < 5; ++j) {
      zs.push_back(std::polar(rho * R, 2.0 * M_PI * j / 5.0));
    }
  }
  return zs;
}

}  // namespace detail

/// Picard iteration for the integral form of the initial-value problem.
/// Direct problems with nonzero data are first recentered to homogeneous
/// form; regularized problems iterate in place. Convergence is measured in
/// the coefficient-weighted norm max_k |delta_k| R^k, which upper-bounds the
/// sup norm on the solve disc. Non-convergence is classified: growth of the
/// distances under a super-threshold Lipschitz estimate is reported as
/// no-contraction, growth under a sub-threshold estimate as divergence, and
/// exhaustion of max_iter inside a verified invariant ball as inconclusive
/// iteration (a fixed point exists there regardless).
inline SolveReport solve_picard(const ProblemSpec& p) {
  if (!(p.order > 0.0) || !(p.order < 1.0)) {
    throw std::domain_error("solve_picard: order must lie in (0,1)");
  }
  if (p.trunc < 1) {
    throw std::invalid_argument("solve_picard: trunc must be at least 1");
  }
  const double a = p.order;
  const Complex b = p.initial;
  const bool regularized = is_regularized_kind(p.kind);

  SolveReport rep;
  rep.diagnostics.ball_radius = 1.0;

  // Hypothesis gate
  if (!regularized) {
    rep.diagnostics.condition_ii_applicable = true;
    rep.diagnostics.condition_ii = check_condition_II(p.rhs, b, a);
    if (!rep.diagnostics.condition_ii.pass) {
      rep.status = SolveStatus::ConditionIIViolated;
      rep.solution = detail::constant_series(b, p.trunc);
      return rep;
    }
  } else {
    rep.diagnostics.compat_applicable = true;
    rep.diagnostics.compat = check_regularized_compat(p.rhs, b);
    if (!rep.diagnostics.compat.pass) {
      rep.status = SolveStatus::CompatViolated;
      rep.solution = detail::constant_series(b, p.trunc);
      return rep;
    }
  }

  // Iteration happens on the homogeneous form for the direct kind; the
  // regularized kind keeps F and adds b inside each step.
  const bool shifted = !regularized && (b != Complex{0.0, 0.0});
  const BivariateSeries working =
      shifted ? shift_to_homogeneous(p.rhs, b, a) : p.rhs;
  const Complex step_b = regularized ? b : Complex{0.0, 0.0};

  // Contraction and radius diagnostics come from the recentered rhs so the
  // estimates describe the operator actually iterated.
  const BivariateSeries centered =
      regularized && b != Complex{0.0, 0.0}
          ? [&] {
              BivariateSeries g = shift_to_homogeneous(p.rhs, b, a);
              g.at(0, 0) += b * gamma_ratio(1.0, 1.0 - a);
              return g;
            }()
          : working;
  rep.diagnostics.contraction = estimate_lipschitz(centered, a);
  const double rate = rep.diagnostics.contraction.rate;
  rep.diagnostics.no_contraction_warning = rate >= 1.0 - 1e-9;

  if (p.envelope) {
    rep.diagnostics.envelope = *p.envelope;
    rep.diagnostics.envelope_auto = false;
    const GrowthEnvelope& env = rep.diagnostics.envelope;
    if (env.c < 0.0 || env.n0 < 1) {
      throw std::invalid_argument(
          "solve_picard: envelope needs c >= 0 and n0 >= 1");
    }
    if (!env.g.coeffs.empty() && env.g.coeffs[0] != Complex{0.0, 0.0}) {
      throw std::invalid_argument("solve_picard: envelope g must have g(0)=0");
    }
    if (env.g_bound <
        sup_norm_estimate(env.g, 1.0) * (1.0 - 1e-12)) {
      throw std::invalid_argument(
          "solve_picard: envelope Mg must dominate sup |g| on the unit disc");
    }
  } else {
    rep.diagnostics.envelope = detail::auto_envelope(centered);
    rep.diagnostics.envelope_auto = true;
  }

  const double r_ball = rep.diagnostics.ball_radius;
  if (rate < 1.0 - 1e-9) {
    rep.radius = 1.0;
    rep.diagnostics.radius_source = "unit-disc";
  } else {
    rep.radius = estimate_radius(rep.diagnostics.envelope, r_ball, a);
    rep.diagnostics.radius_source = "envelope";
  }
  {
    const GrowthEnvelope& env = rep.diagnostics.envelope;
    const double bound_at_R =
        env.c * std::pow(r_ball, env.n0) * std::pow(rep.radius, env.n0) *
            gamma_ratio(env.n0 + 1.0 - a, env.n0 + 1.0) +
        env.g_bound * rep.radius * gamma_fn(2.0 - a);
    const bool env_holds =
        check_growth(centered, env, Complex{0.0, 0.0}, GrowthMode::Absolute,
                     16, 16)
            .pass;
    rep.diagnostics.invariant_ball_verified =
        env_holds && bound_at_R <= r_ball * (1.0 + 1e-12);
  }

  // Seed: default constant b; an override is given in original coordinates
  // and recentered here when the solve runs on the homogeneous form.
  FracPowerSeries u = detail::constant_series(shifted ? Complex{0.0, 0.0} : b,
                                              p.trunc);
  if (p.seed) {
    u = *p.seed;
    u.coeffs.resize(p.trunc + 1, Complex{0.0, 0.0});
    if (shifted) u.coeffs[0] -= b;
  }

  const double R = rep.radius;
  bool converged = false;
  int grow_streak = 0;
  double prev_d = std::numeric_limits<double>::quiet_NaN();
  bool blown_up = false;
  for (int it = 0; it < p.max_iter; ++it) {
    const FracPowerSeries next =
        picard_step(working, u, a, regularized ? p.kind : ProblemKind::RiemannLiouville,
                    step_b, p.trunc);
    const double d = coeff_weighted_norm(series_sub(next, u), R);
    rep.distances.push_back(d);
    if (!rep.distances.empty() && rep.distances.size() >= 2) {
      const double dp = rep.distances[rep.distances.size() - 2];
      if (dp > 0.0) rep.observed_ratios.push_back(d / dp);
    }
    u = next;
    rep.iterations = it + 1;
    if (!std::isfinite(d) || d > 1e12) {
      blown_up = true;
      break;
    }
    if (d <= p.tol) {
      converged = true;
      break;
    }
    if (!std::isnan(prev_d) && d > prev_d) {
      if (++grow_streak >= 5) {
        blown_up = true;
        break;
      }
    } else {
      grow_streak = 0;
    }
    prev_d = d;
  }

  // Undo the recentering before reporting.
  FracPowerSeries solution = u;
  if (shifted) solution.coeffs[0] += b;
  rep.solution = solution;

  if (converged) {
    rep.status = SolveStatus::Converged;
  } else if (blown_up) {
    rep.status = rep.diagnostics.no_contraction_warning
                     ? SolveStatus::NoContraction
                     : SolveStatus::Diverged;
  } else if (rep.diagnostics.no_contraction_warning) {
    rep.status = rep.diagnostics.invariant_ball_verified
                     ? SolveStatus::IterationInconclusive
                     : SolveStatus::NoContraction;
  } else {
    rep.status = SolveStatus::MaxIterExceeded;
  }

  // Residuals of the returned solution against the original operator, on
  // the series path and on an independent quadrature path.
  {
    const FracPowerSeries pu =
        picard_step(p.rhs, rep.solution, a, p.kind, b, p.trunc);
    rep.residual_series = coeff_weighted_norm(series_sub(pu, rep.solution), R);
    const JacobiRule vrule = volterra_rule(64, a);
    const auto phi = [&](Complex zeta) {
      return eval(p.rhs, zeta, eval(rep.solution, zeta));
    };
    double worst = 0.0;
    for (const Complex& z : detail::residual_sample_points(R)) {
      const Complex image = volterra_image_quad(phi, a, z, vrule);
      const Complex delta = eval(rep.solution, z) -
                            (regularized ? b : Complex{0.0, 0.0}) - image;
      worst = std::max(worst, std::abs(delta));
    }
    rep.residual_quad = worst;
  }

  if (rep.status == SolveStatus::Converged) {
    rep.diagnostics.schwarz =
        schwarz_check(rep.solution, r_ball, rep.radius);
  }
  return rep;
}

}  // namespace fracdisc

#endif  // FRACDISC_SOLVER_HPP
