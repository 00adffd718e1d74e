// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_SERIES_HPP
#define FRACDISC_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdisc {

using Complex = std::complex<double>;

/// Principal argument in (-pi, pi]. std::arg returns -pi for inputs on the
/// negative real axis with a negative zero imaginary part; fold that back.
inline double principal_arg(Complex z) {
  double t = std::arg(z);
  if (t == -M_PI) t = M_PI;
  return t;
}

/// Principal branch of z^mu on the cut plane, z^mu = |z|^mu exp(i mu arg z).
/// At z = 0 the limit along any ray is 0 for mu > 0 and 1 for mu == 0;
/// negative exponents have no limit there.
inline Complex principal_pow(Complex z, double mu) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    if (mu > 0.0) return {0.0, 0.0};
    if (mu == 0.0) return {1.0, 0.0};
    throw std::domain_error(
        "principal_pow: principal branch has no value at z = 0 for exponent " +
        std::to_string(mu));
  }
  const double r = std::abs(z);
  const double t = principal_arg(z);
  return std::polar(std::pow(r, mu), mu * t);
}

/// Truncated power series with a fractional leading exponent,
///   s(z) = z^mu * sum_{k=0..N} a_k z^k,
/// understood on the principal branch of z^mu. mu == 0 is the analytic case.
struct FracPowerSeries {
  double mu = 0.0;
  std::vector<Complex> coeffs;  // a_0 .. a_N

  static FracPowerSeries zero(std::size_t n_coeffs = 1, double mu = 0.0) {
    FracPowerSeries s;
    s.mu = mu;
    s.coeffs.assign(std::max<std::size_t>(n_coeffs, 1), Complex{0.0, 0.0});
    return s;
  }
};

namespace detail {

inline Complex poly_eval(const std::vector<Complex>& c, Complex z) {
  Complex acc{0.0, 0.0};
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

inline std::vector<Complex> poly_add(const std::vector<Complex>& a,
                                     const std::vector<Complex>& b) {
  std::vector<Complex> out(std::max(a.size(), b.size()), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

/// Product truncated at degree `max_deg` inclusive.
inline std::vector<Complex> poly_mul_trunc(const std::vector<Complex>& a,
                                           const std::vector<Complex>& b,
                                           std::size_t max_deg) {
  std::vector<Complex> out(
      std::min(max_deg + 1, a.size() + b.size() > 0 ? a.size() + b.size() - 1
                                                    : std::size_t{1}),
      Complex{0.0, 0.0});
  if (a.empty() || b.empty()) return {Complex{0.0, 0.0}};
  for (std::size_t i = 0; i < a.size() && i <= max_deg; ++i) {
    if (a[i] == Complex{0.0, 0.0}) continue;
    const std::size_t jmax = std::min(b.size() - 1, max_deg - i);
    for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace detail

/// Evaluate s at z. The analytic part uses Horner; z = 0 follows the
/// principal_pow limit rules (domain error when mu < 0).
inline Complex eval(const FracPowerSeries& s, Complex z) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    if (s.mu > 0.0) return {0.0, 0.0};
    if (s.mu == 0.0) return s.coeffs.empty() ? Complex{0.0, 0.0} : s.coeffs[0];
    throw std::domain_error(
        "eval: series with negative leading exponent has no value at z = 0");
  }
  const Complex head = principal_pow(z, s.mu);
  return head * detail::poly_eval(s.coeffs, z);
}

/// max_k |a_k| R^k over the analytic part; the discrete convergence metric
/// used by the solver. Series must share mu for the difference to make sense,
/// so this takes coefficients only.
inline double coeff_weighted_norm(const FracPowerSeries& s, double R) {
  double best = 0.0;
  double w = 1.0;
  for (const Complex& c : s.coeffs) {
    best = std::max(best, std::abs(c) * w);
    w *= R;
  }
  return best;
}

/// Sampled estimate of sup |s| on the closed disc of radius R: the maximum
/// modulus principle reduces the search to the boundary circle for mu >= 0,
/// so the estimate takes n_samples equally spaced points on |z| = R. A lower
/// bound on the true sup, monotone in the sample count.
inline double sup_norm_estimate(const FracPowerSeries& s, double R,
                                int n_samples = 64) {
  if (n_samples < 8) {
    throw std::invalid_argument(
        "sup_norm_estimate: need at least 8 boundary samples, got " +
        std::to_string(n_samples));
  }
  double best = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double th = 2.0 * M_PI * j / n_samples;
    best = std::max(best, std::abs(eval(s, std::polar(R, th))));
  }
  return best;
}

/// Schwarz-lemma diagnostic for an analytic series with s(0) = 0 mapping the
/// disc of radius R into the disc of radius r: checks |s(z)| <= (r/R) |z| on
/// a sample grid. The precondition sup |s| <= r is itself sampled; when it
/// fails the check reports that separately instead of a bound violation.
struct SchwarzReport {
  bool applicable = false;       // mu == 0 and s(0) == 0
  bool precondition_ok = false;  // sampled sup norm <= r
  bool pass = false;
  double worst_ratio = 0.0;  // max |s(z)| / ((r/R) |z|)
};

inline SchwarzReport schwarz_check(const FracPowerSeries& s, double r,
                                   double R, int n_samples = 32,
                                   double tol = 1e-9) {
  SchwarzReport rep;
  rep.applicable = (s.mu == 0.0) &&
                   (s.coeffs.empty() || s.coeffs[0] == Complex{0.0, 0.0});
  if (!rep.applicable) return rep;
  rep.precondition_ok =
      sup_norm_estimate(s, R, std::max(n_samples, 8)) <= r * (1.0 + tol);
  const double slope = r / R;
  for (int i = 1; i <= n_samples; ++i) {
    const double rho = R * static_cast<double>(i) / n_samples;
    for (int j = 0; j < n_samples; ++j) {
      const double th = 2.0 * M_PI * j / n_samples;
      const Complex z = std::polar(rho, th);
      const double ratio = std::abs(eval(s, z)) / (slope * std::abs(z));
      rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    }
  }
  rep.pass = rep.precondition_ok && rep.worst_ratio <= 1.0 + tol;
  return rep;
}

/// Finite double series F(z, t) = sum_{j,k} c_{jk} z^j t^k, row index j for
/// powers of z, column index k for powers of t.
struct BivariateSeries {
  std::size_t rows = 1;  // J + 1
  std::size_t cols = 1;  // K + 1
  std::vector<Complex> c = {Complex{0.0, 0.0}};

  static BivariateSeries zero(std::size_t max_z_deg, std::size_t max_t_deg) {
    BivariateSeries f;
    f.rows = max_z_deg + 1;
    f.cols = max_t_deg + 1;
    f.c.assign(f.rows * f.cols, Complex{0.0, 0.0});
    return f;
  }

  Complex& at(std::size_t j, std::size_t k) { return c[j * cols + k]; }
  Complex at(std::size_t j, std::size_t k) const { return c[j * cols + k]; }
};

inline Complex eval(const BivariateSeries& f, Complex z, Complex t) {
  Complex acc{0.0, 0.0};
  for (std::size_t j = f.rows; j-- > 0;) {
    Complex row{0.0, 0.0};
    for (std::size_t k = f.cols; k-- > 0;) row = row * t + f.at(j, k);
    acc = acc * z + row;
  }
  return acc;
}

/// Substitute an analytic series u into F and truncate:
///   phi(z) = F(z, u(z)) up to degree max_deg.
/// Powers of u are built incrementally, each product truncated, so
/// coefficients that are exactly zero stay exactly zero.
inline FracPowerSeries compose_rhs(const BivariateSeries& f,
                                   const FracPowerSeries& u,
                                   std::size_t max_deg) {
  if (u.mu != 0.0) {
    throw std::invalid_argument(
        "compose_rhs: substituted series must be analytic (mu == 0), got mu "
        "= " +
        std::to_string(u.mu));
  }
  std::vector<Complex> phi(max_deg + 1, Complex{0.0, 0.0});
  std::vector<Complex> upow = {Complex{1.0, 0.0}};
  for (std::size_t k = 0; k < f.cols; ++k) {
    std::vector<Complex> col(std::min<std::size_t>(f.rows, max_deg + 1),
                             Complex{0.0, 0.0});
    for (std::size_t j = 0; j < col.size(); ++j) col[j] = f.at(j, k);
    const auto term = detail::poly_mul_trunc(col, upow, max_deg);
    for (std::size_t i = 0; i < term.size(); ++i) phi[i] += term[i];
    if (k + 1 < f.cols) {
      upow = detail::poly_mul_trunc(upow, u.coeffs, max_deg);
    }
  }
  FracPowerSeries out;
  out.mu = 0.0;
  out.coeffs = std::move(phi);
  return out;
}

/// a + b and a - b on series sharing the same leading exponent.
inline FracPowerSeries series_add(const FracPowerSeries& a,
                                  const FracPowerSeries& b) {
  if (a.mu != b.mu) {
    throw std::invalid_argument("series_add: mismatched leading exponents");
  }
  FracPowerSeries out;
  out.mu = a.mu;
  out.coeffs = detail::poly_add(a.coeffs, b.coeffs);
  return out;
}

inline FracPowerSeries series_sub(const FracPowerSeries& a,
                                  const FracPowerSeries& b) {
  FracPowerSeries neg = b;
  for (Complex& c : neg.coeffs) c = -c;
  return series_add(a, neg);
}

}  // namespace fracdisc

#endif  // FRACDISC_SERIES_HPP
