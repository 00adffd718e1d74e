// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_CONDITIONS_HPP
#define FRACDISC_CONDITIONS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracdisc/series.hpp"
#include "fracdisc/specfun.hpp"

namespace fracdisc {

/// Shared tolerance for the pointwise hypothesis checks; matches the series
/// arithmetic precision used everywhere else.
inline constexpr double kHypothesisTol = 1e-12;

/// Growth envelope for the right-hand side:
///   |F(z,t)| <= c |t - center|^{n0} + |g(z)|,
/// with g analytic, g(0) = 0, and g_bound an upper bound for sup |g| on the
/// closed unit disc.
struct GrowthEnvelope {
  double c = 0.0;
  int n0 = 1;
  FracPowerSeries g = FracPowerSeries::zero();
  double g_bound = 0.0;
};

struct ConditionIIReport {
  bool pass = false;
  double gap = 0.0;  // |F(0,b) - b / Gamma(1-a)|
};

struct CompatReport {
  bool pass = false;
  double value = 0.0;  // |F(0,b)|
};

struct GrowthReport {
  bool pass = false;
  double worst_margin = 0.0;  // normalized excess over the envelope
};

/// The initial-value compatibility condition for the direct problem:
/// F(0, b) must equal b / Gamma(1-a). Its failure is exactly the obstruction
/// to analytic solvability when b = 0.
inline ConditionIIReport check_condition_II(const BivariateSeries& F,
                                            Complex b, double a) {
  ConditionIIReport rep;
  const Complex delta =
      eval(F, Complex{0.0, 0.0}, b) - b * gamma_ratio(1.0, 1.0 - a);
  rep.gap = std::abs(delta);
  rep.pass = rep.gap <= kHypothesisTol;
  return rep;
}

/// Compatibility condition for the regularized (Caputo-type) problem:
/// F(0, b) must vanish.
inline CompatReport check_regularized_compat(const BivariateSeries& F,
                                             Complex b) {
  CompatReport rep;
  rep.value = std::abs(eval(F, Complex{0.0, 0.0}, b));
  rep.pass = rep.value <= kHypothesisTol;
  return rep;
}

enum class GrowthMode { Absolute, Centered };

/// Sampled verification of the growth envelope on the closed bidisc, with t
/// probed out to radius 2 around the center to expose superlinear growth.
/// The reported margin is the worst excess (|F| - bound) normalized by
/// max(1, |t - center|^{n0}) so that a rhs violating the envelope by a fixed
/// factor reports the factor's excess, not an arbitrary power of the probe
/// radius. Negative margins mean slack everywhere.
inline GrowthReport check_growth(const BivariateSeries& F,
                                 const GrowthEnvelope& env, Complex b,
                                 GrowthMode mode, int nz = 16, int nt = 16) {
  if (nz < 8 || nt < 8) {
    throw std::invalid_argument(
        "check_growth: sample counts must be at least 8");
  }
  const Complex center =
      (mode == GrowthMode::Centered) ? b : Complex{0.0, 0.0};
  std::vector<double> t_radii;
  for (int j = 0; j <= nt; ++j) t_radii.push_back(2.0 * j / nt);
  t_radii.push_back(1.0);
  t_radii.push_back(2.0);
  GrowthReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= nz; ++i) {
    const double rz = static_cast<double>(i) / nz;
    for (int p = 0; p < nz; ++p) {
      const double thz = 2.0 * M_PI * p / nz;
      const Complex z = std::polar(rz, thz);
      const double gz = std::abs(eval(env.g, z));
      for (double rt : t_radii) {
        for (int q = 0; q < nt; ++q) {
          const double tht = 2.0 * M_PI * q / nt;
          const Complex t = center + std::polar(rt, tht);
          const double lhs = std::abs(eval(F, z, t));
          const double bound = env.c * std::pow(rt, env.n0) + gz;
          const double scale = std::max(1.0, std::pow(rt, env.n0));
          rep.worst_margin =
              std::max(rep.worst_margin, (lhs - bound) / scale);
        }
      }
      if (rz == 0.0) break;  // z = 0 needs a single angle
    }
  }
  rep.pass = rep.worst_margin <= kHypothesisTol;
  return rep;
}

/// Finiteness smoke test over the sample bidisc. Analyticity of the input is
/// structural (it is a finite series); this only guards against non-finite
/// coefficients smuggled in through parsing.
inline bool check_condition_I_finite(const BivariateSeries& F, int nz = 8,
                                     int nt = 8) {
  for (int i = 0; i <= nz; ++i) {
    const double rz = static_cast<double>(i) / nz;
    for (int p = 0; p < nz; ++p) {
      const Complex z = std::polar(rz, 2.0 * M_PI * p / nz);
      for (int j = 0; j <= nt; ++j) {
        const double rt = static_cast<double>(j) / nt;
        for (int q = 0; q < nt; ++q) {
          const Complex t = std::polar(rt, 2.0 * M_PI * q / nt);
          const Complex v = eval(F, z, t);
          if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace fracdisc

#endif  // FRACDISC_CONDITIONS_HPP
