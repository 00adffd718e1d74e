// SPDX-License-Identifier: Apache-2.0
#ifndef FRACDISC_FRACOPS_HPP
#define FRACDISC_FRACOPS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracdisc/series.hpp"
#include "fracdisc/specfun.hpp"

namespace fracdisc {

/// Riemann-Liouville fractional integral of a truncated series, order
/// a in (0,1). Termwise rule on the principal branch:
///   z^{k+mu} -> gamma_ratio(k+mu+1, k+mu+1+a) * z^{k+mu+a}.
inline FracPowerSeries frac_integral_series(const FracPowerSeries& s,
                                            double a) {
  if (!(s.mu > -1.0)) {
    throw std::domain_error(
        "frac_integral_series: leading exponent must exceed -1, got " +
        std::to_string(s.mu));
  }
  FracPowerSeries out;
  out.mu = s.mu + a;
  out.coeffs.resize(s.coeffs.size());
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
    const double p = static_cast<double>(k) + s.mu + 1.0;
    out.coeffs[k] = s.coeffs[k] * gamma_ratio(p, p + a);
  }
  return out;
}

/// Riemann-Liouville fractional derivative, order a in (0,1). Termwise:
///   z^{k+mu} -> gamma_ratio(k+mu+1, k+mu+1-a) * z^{k+mu-a}.
/// When k+mu+1-a lands on a nonpositive integer the gamma_ratio pole rule
/// makes the coefficient exactly 0, which is what kills c*z^{a-1}.
inline FracPowerSeries frac_derivative_series(const FracPowerSeries& s,
                                              double a) {
  if (!(s.mu > -1.0)) {
    throw std::domain_error(
        "frac_derivative_series: leading exponent must exceed -1, got " +
        std::to_string(s.mu));
  }
  FracPowerSeries out;
  out.mu = s.mu - a;
  out.coeffs.resize(s.coeffs.size());
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
    const double p = static_cast<double>(k) + s.mu + 1.0;
    out.coeffs[k] = s.coeffs[k] * gamma_ratio(p, p - a);
  }
  return out;
}

/// Gauss-Jacobi rule on [0,1]. `order` is the fractional order a the rule
/// was built for; the weight function is (1-t)^{a-1} for the one-sided rule
/// and t^{-a}(1-t)^{a-1} for the two-sided companion (see volterra_rule).
struct JacobiRule {
  double order = 0.5;
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Implicit-shift QL iteration on a symmetric tridiagonal matrix, rotating a
// companion vector so it ends up holding the first component of each
// normalized eigenvector (the only part Gauss weights need). diag gains the
// eigenvalues, sorted ascending.
inline void tridiag_eigen_first(std::vector<double>& diag,
                                std::vector<double>& sub,
                                std::vector<double>& first) {
  const int n = static_cast<int>(diag.size());
  first.assign(diag.size(), 0.0);
  if (n == 0) return;
  first[0] = 1.0;
  if (n == 1) return;
  sub.resize(diag.size(), 0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int m = l;
    for (int sweep = 0;; ++sweep) {
      for (m = l; m < n - 1; ++m) {
        const double scale = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= eps * scale) break;
      }
      if (m == l) break;
      if (sweep >= 50) {
        throw std::runtime_error(
            "tridiag_eigen_first: QL iteration did not converge");
      }
      double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * sub[i];
        const double b = c * sub[i];
        r = std::hypot(f, g);
        sub[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          sub[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first[i + 1];
        first[i + 1] = s * first[i] + c * f;
        first[i] = c * first[i] - s * f;
      }
      if (r == 0.0 && m - 1 >= l) continue;
      diag[l] -= p;
      sub[l] = g;
      sub[m] = 0.0;
    }
  }
  for (int i = 1; i < n; ++i) {
    const double d = diag[i];
    const double w = first[i];
    int j = i;
    while (j > 0 && diag[j - 1] > d) {
      diag[j] = diag[j - 1];
      first[j] = first[j - 1];
      --j;
    }
    diag[j] = d;
    first[j] = w;
  }
}

// Golub-Welsch construction for the weight t^beta (1-t)^alpha on [0,1],
// alpha, beta > -1. Built from the classical Jacobi recurrence on [-1,1]
// and mapped by t = (x+1)/2. The k = 1 off-diagonal entry uses a cancelled
// form so alpha + beta = -1 (the two-sided kernel weight) stays finite.
inline std::pair<std::vector<double>, std::vector<double>>
jacobi_nodes_weights01(int n, double alpha, double beta) {
  if (n < 2) {
    throw std::invalid_argument("jacobi rule: need at least 2 nodes, got " +
                                std::to_string(n));
  }
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("jacobi rule: weight exponents must exceed -1");
  }
  const double ab = alpha + beta;
  std::vector<double> diag(n, 0.0), sub(n, 0.0), first;
  diag[0] = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t2 = 2.0 * k + ab;
    diag[k] = (beta * beta - alpha * alpha) / (t2 * (t2 + 2.0));
  }
  {
    const double t2 = ab + 2.0;
    sub[0] = std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) /
                       (t2 * t2 * (ab + 3.0)));
  }
  for (int k = 2; k < n; ++k) {
    const double t2 = 2.0 * k + ab;
    sub[k - 1] = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                           (t2 * t2 * (t2 + 1.0) * (t2 - 1.0)));
  }
  tridiag_eigen_first(diag, sub, first);
  // mu0 = integral of the weight over [0,1]
  const double mu0 = fracdisc::beta(beta + 1.0, alpha + 1.0);
  std::vector<double> nodes(n), weights(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = 0.5 * (diag[i] + 1.0);
    weights[i] = mu0 * first[i] * first[i];
  }
  return {std::move(nodes), std::move(weights)};
}

}  // namespace detail

/// Rule for the one-sided kernel weight: integrates
/// g -> integral_0^1 g(t) (1-t)^{a-1} dt exactly for polynomial degree
/// <= 2n-1. Moments: sum w_i t_i^m = B(m+1, a).
inline JacobiRule gauss_jacobi_rule(int n, double a) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("gauss_jacobi_rule: order must lie in (0,1)");
  }
  JacobiRule rule;
  rule.order = a;
  auto nw = detail::jacobi_nodes_weights01(n, a - 1.0, 0.0);
  rule.nodes = std::move(nw.first);
  rule.weights = std::move(nw.second);
  return rule;
}

/// Rule for the two-sided weight t^{-a} (1-t)^{a-1}: the kernel weight after
/// both singular factors of the substituted integrand are absorbed. Moments:
/// sum w_i t_i^m = B(m+1-a, a). Used for quadrature residuals of solutions
/// whose integrand carries the z^{-a} factor analytically.
inline JacobiRule volterra_rule(int n, double a) {
  if (!(a > 0.0) || !(a < 1.0)) {
    throw std::domain_error("volterra_rule: order must lie in (0,1)");
  }
  JacobiRule rule;
  rule.order = a;
  auto nw = detail::jacobi_nodes_weights01(n, a - 1.0, -a);
  rule.nodes = std::move(nw.first);
  rule.weights = std::move(nw.second);
  return rule;
}

/// Fractional integral by quadrature along the radial segment [0, z]:
///   I^a u (z) = (z^a / Gamma(a)) * sum_i w_i u(t_i z)
/// on the principal branch. The substitution zeta = t z keeps arg(z - zeta)
/// equal to arg z along the whole segment, so no branch tracking is needed.
template <class Fn>
inline Complex frac_integral_quad(Fn&& u, double a, Complex z,
                                  const JacobiRule& rule) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    throw std::invalid_argument("frac_integral_quad: z must be nonzero");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * u(rule.nodes[i] * z);
  }
  return principal_pow(z, a) * acc / gamma_fn(a);
}

/// I^a applied to zeta^{-a} phi(zeta), evaluated at z with a volterra_rule:
/// the z^a and zeta^{-a} factors cancel analytically on the principal
/// branch, leaving (1 / Gamma(a)) * sum_i W_i phi(t_i z).
template <class Fn>
inline Complex volterra_image_quad(Fn&& phi, double a, Complex z,
                                   const JacobiRule& vrule) {
  if (z.real() == 0.0 && z.imag() == 0.0) {
    throw std::invalid_argument("volterra_image_quad: z must be nonzero");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < vrule.nodes.size(); ++i) {
    acc += vrule.weights[i] * phi(vrule.nodes[i] * z);
  }
  return acc / gamma_fn(a);
}

}  // namespace fracdisc

#endif  // FRACDISC_FRACOPS_HPP
