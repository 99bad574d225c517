#pragma once

// Comparison-function library: the sn_kappa family and logarithmic
// derivatives, Kahler and Riemannian model Laplacians, the alpha(t) weight,
// ball radius and diameter constants, area elements, model ball volumes and
// Bishop-Gromov ratio curves.
//
// Domain violations are hard errors, never clamped values: the comparison
// statements are meaningless past the first conjugate radius.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgeo/quadrature.hpp"

namespace kgeo::comparison {

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// End of the sn_kappa domain: pi/sqrt(kappa) for kappa > 0, +inf otherwise.
inline double domain_end(double kappa) {
  return kappa > 0.0 ? kPi / std::sqrt(kappa) : std::numeric_limits<double>::infinity();
}

namespace detail {
// sn and sn' accept the closed interval [0, pi/sqrt(kappa)]; snlog needs the
// open one.
inline void check_domain(double kappa, double r, bool closed, const char* who) {
  if (closed ? !(r >= 0.0) : !(r > 0.0))
    throw std::domain_error(std::string(who) + ": radius must be positive");
  if (kappa > 0.0) {
    const double end = domain_end(kappa);
    if (closed ? !(r <= end) : !(r < end))
      throw std::domain_error(std::string(who) + ": radius past the conjugate point");
  }
}
}  // namespace detail

// sn_kappa solves y'' + kappa y = 0, y(0) = 0, y'(0) = 1.
inline double sn(double kappa, double r) {
  detail::check_domain(kappa, r, /*closed=*/true, "sn");
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::sin(s * r) / s;
  }
  if (kappa < 0.0) {
    const double s = std::sqrt(-kappa);
    return std::sinh(s * r) / s;
  }
  return r;
}

inline double sn_prime(double kappa, double r) {
  detail::check_domain(kappa, r, /*closed=*/true, "sn_prime");
  if (kappa > 0.0) return std::cos(std::sqrt(kappa) * r);
  if (kappa < 0.0) return std::cosh(std::sqrt(-kappa) * r);
  return 1.0;
}

// sn'/sn; evaluated by series 1/r - kappa r/3 - kappa^2 r^3/45 when
// sqrt(|kappa|) r < 1e-4 to dodge cancellation against the 1/r pole.
inline double snlog(double kappa, double r) {
  detail::check_domain(kappa, r, /*closed=*/false, "snlog");
  if (kappa == 0.0) return 1.0 / r;
  const double s = std::sqrt(std::abs(kappa));
  if (s * r < 1e-4) return 1.0 / r - kappa * r / 3.0 - kappa * kappa * r * r * r / 45.0;
  if (kappa > 0.0) return s * std::cos(s * r) / std::sin(s * r);
  return s * std::cosh(s * r) / std::sinh(s * r);
}

// 2(n-1) sn'_{c/2}/sn_{c/2} + sn'_{2c}/sn_{2c}: the model Laplacian of the
// constant-HBSC-c space form at radius r.
inline double kahler_model_laplacian(int n, double c, double r) {
  if (n < 1) throw std::invalid_argument("kahler_model_laplacian: dimension must be >= 1");
  return 2.0 * (n - 1) * snlog(0.5 * c, r) + snlog(2.0 * c, r);
}

inline double riemannian_model_laplacian(double m, double k, double r) {
  return (m - 1.0) * snlog(k, r);
}

// alpha(t) = [sn^2_{c/2}(t)/sn^2_{c/2}(l)] / [sn^2_{2c}(t)/sn^2_{2c}(l)];
// alpha(l) = 1.
inline double alpha_weight(double t, double ell, double c) {
  if (!(t > 0.0) || !(t <= ell)) throw std::domain_error("alpha_weight: requires 0 < t <= ell");
  const double a = sn(0.5 * c, t) / sn(0.5 * c, ell);
  const double b = sn(2.0 * c, t) / sn(2.0 * c, ell);
  return (a * a) / (b * b);
}

// Ball radius constant of the positive-lower-bound local comparison:
// cos^2(sqrt(c/2) l) >= 2(k-1)/(n-1) holds up to l = C(k,n)/sqrt(c) with
// C(k,n) = sqrt(2) arccos(sqrt(2(k-1)/(n-1))).
inline double radius_C(int k, int n) {
  if (k < 1) throw std::invalid_argument("radius_C: requires k >= 1");
  if (2 * k >= n + 1) throw std::invalid_argument("radius_C: requires k < (n+1)/2");
  const double arg = 2.0 * (k - 1) / static_cast<double>(n - 1);
  return std::sqrt(2.0) * std::acos(std::sqrt(arg));
}

struct DiamConstants {
  double nu = 0.0;
  double bound = 0.0;  // pi / sqrt(nu)
};

inline DiamConstants diam_constants(int k, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("diam_constants: requires c > 0");
  if (k < 1) throw std::invalid_argument("diam_constants: requires k >= 1");
  DiamConstants d;
  d.nu = 2.0 * k * c / (4.0 * k - 3.0);
  d.bound = kPi / std::sqrt(d.nu);
  return d;
}

// Vol(S^{2n-1}) = 2 pi^n / (n-1)!
inline double sphere_volume_odd(int n) {
  if (n < 1) throw std::invalid_argument("sphere_volume_odd: requires n >= 1");
  double v = 2.0;
  for (int i = 0; i < n; ++i) v *= kPi;
  for (int i = 2; i <= n - 1; ++i) v /= i;
  return v;
}

// Area of the model geodesic sphere; the model Laplacian is its logarithmic
// derivative.
inline double area_element(int n, double c, double r) {
  double a = sphere_volume_odd(n);
  const double s1 = sn(0.5 * c, r);
  for (int i = 0; i < 2 * n - 2; ++i) a *= s1;
  return a * sn(2.0 * c, r);
}

inline double ball_volume(int n, double c, double delta) {
  if (!(delta > 0.0)) throw std::domain_error("ball_volume: radius must be positive");
  if (c > 0.0 && delta > domain_end(2.0 * c) * (1.0 + 1e-14))
    throw std::domain_error("ball_volume: radius past the model diameter");
  const double top = c > 0.0 ? std::min(delta, domain_end(2.0 * c)) : delta;
  return numkit::integrate([n, c](double r) { return area_element(n, c, r); }, 0.0, top, 1e-12);
}

// Ball volume in (CP^1, h) x (CP^1, h) where h is the common factor HSC
// (equivalently the Gauss curvature of each round factor). The distance
// splits as r1^2 + r2^2, and the inner factor integrates in closed form.
inline double product_cp1_ball_volume(double h, double delta) {
  if (!(h > 0.0)) throw std::invalid_argument("product_cp1_ball_volume: requires h > 0");
  if (!(delta > 0.0)) throw std::domain_error("product_cp1_ball_volume: radius must be positive");
  const double rmax = kPi / std::sqrt(h);  // factor diameter
  const double dmax = rmax * std::sqrt(2.0);
  if (delta > dmax * (1.0 + 1e-14))
    throw std::domain_error("product_cp1_ball_volume: radius past the product diameter");
  const double sh = std::sqrt(h);
  auto disc_area = [&](double rr) {  // area of a factor ball of radius rr
    return 2.0 * kPi * (1.0 - std::cos(sh * std::min(rr, rmax))) / h;
  };
  auto f = [&](double r1) {
    const double r2 = std::sqrt(std::max(delta * delta - r1 * r1, 0.0));
    return 2.0 * kPi * (std::sin(sh * r1) / sh) * disc_area(r2);
  };
  const double top = std::min(delta, rmax);
  // kink where the inner radius saturates at the factor diameter
  if (delta > rmax) {
    const double split = std::sqrt(delta * delta - rmax * rmax);
    if (split < top)
      return numkit::integrate(f, 0.0, split, 5e-13) + numkit::integrate(f, split, top, 5e-13);
  }
  return numkit::integrate(f, 0.0, top, 1e-12);
}

struct ComparisonCurve {
  std::vector<double> grid;
  std::vector<double> values;
  std::string model;
  std::string bound;
};

struct BgRatioResult {
  ComparisonCurve curve;       // ratio Vol(B(p,delta)) / Vol(model ball)
  bool non_increasing = true;  // discrete verdict along the grid
  double max_increase = 0.0;
};

inline BgRatioResult bg_ratio(const std::vector<std::pair<double, double>>& samples, int n,
                              double c, double tol = 1e-9) {
  BgRatioResult res;
  res.curve.model = "samples";
  res.curve.bound = "model ball volume";
  for (const auto& [delta, vol] : samples) {
    res.curve.grid.push_back(delta);
    res.curve.values.push_back(vol / ball_volume(n, c, delta));
  }
  for (std::size_t i = 1; i < res.curve.values.size(); ++i) {
    const double inc = res.curve.values[i] - res.curve.values[i - 1];
    res.max_increase = std::max(res.max_increase, inc);
    if (inc > tol) res.non_increasing = false;
  }
  return res;
}

// pi/sqrt(2) * sqrt((4n-2)/(n+1)): the Myers bound under Ric >= (n+1)g seen
// as a real (2n)-manifold condition.
inline double myers_bound_riemannian(int n) {
  if (n < 1) throw std::invalid_argument("myers_bound_riemannian: requires n >= 1");
  return kPi / std::sqrt(2.0) * std::sqrt((4.0 * n - 2.0) / (n + 1.0));
}

}  // namespace kgeo::comparison
