#pragma once

// Adaptive Simpson quadrature and a classical fixed-step RK4 stepper.

#include <cmath>
#include <stdexcept>
#include <utility>

namespace kgeo::numkit {

namespace detail {

template <class F>
double simpson_adapt(F& f, double a, double b, double fa, double fm, double fb, double whole,
                     double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double integrate(F&& fn, double a, double b, double tol = 1e-10) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return 0.0;
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
  auto f = [&fn](double x) {
    const double y = fn(x);
    if (!std::isfinite(y)) throw std::domain_error("integrate: non-finite integrand sample");
    return y;
  };
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_adapt(f, a, b, fa, fm, fb, whole, tol, 52);
}

// One classical RK4 step for a scalar ODE y' = f(t, y); step size is the
// caller's business.
template <class F>
double rk4_step(F&& f, double t, double y, double h) {
  const double k1 = f(t, y);
  const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const double k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace kgeo::numkit
