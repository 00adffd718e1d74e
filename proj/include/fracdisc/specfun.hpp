// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_SPECFUN_HPP
#define FRACDISC_SPECFUN_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracdisc {

namespace detail {

// Lanczos rational approximation, N=13, g=6.024680040776729583740234375.
// Coefficients are the standard published set for double precision; the
// numerator below is pre-scaled by exp(-g) so the exponential factor never
// overflows intermediate terms.
inline constexpr double kLanczosG = 6.024680040776729583740234375;

inline constexpr double kLanczosNumScaled[13] = {
    56906521.91347156388090791033559122686859,
    103794043.1163445451906271053616070238554,
    86363131.28813859145546927288977868422342,
    43338889.32467613834773723740590533316085,
    14605578.08768506808414169982791359218571,
    3481712.15498064590882071018964774556468,
    601859.6171681098786670226533699352302507,
    75999.29304014542649875303443598909137092,
    6955.999602515376140356310115515198987526,
    449.9445569063168119446858607650988409623,
    19.51992788247617482847860966235652136208,
    0.5098416655656676188125178644804694509993,
    0.006061842346248906525783753964555936883222,
};

inline constexpr double kLanczosDen[13] = {
    0.0,         39916800.0,  120543840.0, 150917976.0, 105258076.0,
    45995730.0,  13339535.0,  2637558.0,   357423.0,    32670.0,
    1925.0,      66.0,        1.0,
};

// Rational evaluation in z or 1/z, whichever keeps the Horner terms bounded.
inline double lanczos_sum_exp_g_scaled(double z) {
  double num = 0.0;
  double den = 0.0;
  if (z <= 1.0) {
    num = kLanczosNumScaled[12];
    den = kLanczosDen[12];
    for (int i = 11; i >= 0; --i) {
      num = num * z + kLanczosNumScaled[i];
      den = den * z + kLanczosDen[i];
    }
  } else {
    const double r = 1.0 / z;
    num = kLanczosNumScaled[0];
    den = kLanczosDen[0];
    for (int i = 1; i <= 12; ++i) {
      num = num * r + kLanczosNumScaled[i];
      den = den * r + kLanczosDen[i];
    }
  }
  return num / den;
}

// sin(pi*x) with exact reduction on the integer part.
inline double sin_pi(double x) {
  const double s = (x < 0.0) ? -1.0 : 1.0;
  double ax = std::abs(x);
  double frac = ax - std::floor(ax);
  double sign = s;
  if (static_cast<long long>(std::floor(ax)) % 2 != 0) sign = -sign;
  if (frac > 0.5) {
    frac = 1.0 - frac;
    sign = -sign;
  }
  return sign * std::sin(M_PI * frac);
}

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
/// Relative error stays below 1e-13 (measured ~1e-15) on (0, 170].
inline double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " +
                            std::to_string(x));
  }
  const double gp = x + detail::kLanczosG - 0.5;
  return (x - 0.5) * (std::log(gp) - 1.0) +
         std::log(detail::lanczos_sum_exp_g_scaled(x));
}

namespace detail {

// ln |Gamma(x)| and the sign of Gamma(x) for any non-pole real x.
// Negative non-integer arguments go through the reflection formula
//   Gamma(x) Gamma(1-x) = pi / sin(pi x).
inline double log_abs_gamma(double x, double& sign) {
  if (x > 0.0) {
    sign = 1.0;
    return log_gamma(x);
  }
  const double s = sin_pi(x);
  // s == 0 exactly at the poles; callers screen those first.
  sign = (s < 0.0) ? -1.0 : 1.0;
  return std::log(M_PI) - std::log(std::abs(s)) - log_gamma(1.0 - x);
}

}  // namespace detail

/// Gamma(p) / Gamma(q).
///
/// Poles of Gamma are handled explicitly: a pole in the denominator makes the
/// ratio exactly 0 (this single rule is what annihilates the kernel family
/// c*z^{a-1} under the fractional derivative); a pole in the numerator is a
/// domain error.
inline double gamma_ratio(double p, double q) {
  if (detail::is_nonpositive_integer(p)) {
    throw std::domain_error("gamma_ratio: Gamma pole in numerator at p = " +
                            std::to_string(p));
  }
  if (detail::is_nonpositive_integer(q)) return 0.0;
  double sp = 1.0;
  double sq = 1.0;
  const double lp = detail::log_abs_gamma(p, sp);
  const double lq = detail::log_abs_gamma(q, sq);
  return sp * sq * std::exp(lp - lq);
}

/// Euler Beta B(p, q) = Gamma(p) Gamma(q) / Gamma(p+q), p, q > 0.
inline double beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::domain_error("beta: arguments must be positive, got (" +
                            std::to_string(p) + ", " + std::to_string(q) +
                            ")");
  }
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

/// Gamma(x) for x > 0.
inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

}  // namespace fracdisc

#endif  // FRACDISC_SPECFUN_HPP
