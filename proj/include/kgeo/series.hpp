#pragma once

// Exact Bernoulli-number arithmetic and the Laurent-series certificate that
// the product manifold beats the naive model Laplacian bound:
//
//   g(r) = 2 sn'_{3/2}/sn_{3/2} + 1/r - 2 sn'_{1/2}/sn_{1/2} - sn'_2/sn_2
//        = sum_k (-1)^k 2^{2k} B_{2k} r^{2k-1} / (2k)! * T_k,
//   T_k  = (3^k - 1)/2^{k-1} - 2^k.
//
// Exact arithmetic gives T_1 = T_2 = 0 and T_k < 0 for k >= 3; combined with
// (-1)^k B_{2k} < 0 every surviving series term is positive, which is what
// certifies g > 0 on (0, pi/sqrt(2)). All coefficients stay rational until
// the final evaluation.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "kgeo/comparison.hpp"
#include "kgeo/rational.hpp"

namespace kgeo::series {

using numkit::BigInt;
using numkit::BigRational;

// B_0 .. B_upto via the recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<BigRational> bernoulli(int upto) {
  if (upto < 0 || upto > 400) throw std::invalid_argument("bernoulli: order out of range");
  std::vector<BigRational> b;
  b.reserve(upto + 1);
  b.push_back(BigRational(1));
  for (int m = 1; m <= upto; ++m) {
    BigRational acc(0);
    for (int j = 0; j < m; ++j) acc += BigRational(numkit::binomial(m + 1, j)) * b[j];
    acc /= BigRational(m + 1);
    b.push_back(-acc);
  }
  return b;
}

// T_k = (3^k - 1)/2^{k-1} - 2^k, exact.
inline BigRational bracket(int k) {
  if (k < 1) throw std::invalid_argument("bracket: requires k >= 1");
  const BigRational first(numkit::int_pow(BigInt(3), k) - 1, numkit::int_pow(BigInt(2), k - 1));
  return first - BigRational(numkit::int_pow(BigInt(2), k));
}

struct GSeries {
  int K = 0;
  std::vector<BigRational> coeffs;  // c_1 .. c_K multiplying r^{2k-1}
  double radius = 0.0;              // pi/sqrt(2), set by the sn_2 frequency
};

// c_k = (-1)^k 2^{2k} B_{2k} T_k / (2k)!.
inline GSeries g_coefficients(int K) {
  if (K < 1 || K > 200) throw std::invalid_argument("g_coefficients: order out of range");
  GSeries s;
  s.K = K;
  s.radius = comparison::kPi / std::sqrt(2.0);
  const auto b = bernoulli(2 * K);
  s.coeffs.reserve(K);
  for (int k = 1; k <= K; ++k) {
    BigRational c = b[2 * k] * BigRational(numkit::int_pow(BigInt(2), 2 * k)) * bracket(k);
    c /= BigRational(numkit::factorial(2 * k));
    if (k % 2 != 0) c = -c;
    s.coeffs.push_back(c);
  }
  return s;
}

// Tail bound for fixed r < pi/sqrt(2): |B_{2k}|/(2k)! <= 4/((2pi)^{2k}
// (1 - 2^{1-2k})) <= 8/(2pi)^{2k} and |2^{2k} T_k| <= 3 * 8^k give
// |c_k r^{2k-1}| <= (24/r) q^k with q = 2 r^2 / pi^2.
inline double truncation_tail(double r, int K) {
  const double q = 2.0 * r * r / (comparison::kPi * comparison::kPi);
  if (!(q < 1.0)) throw std::domain_error("truncation_tail: r past the convergence radius");
  return 24.0 / r * std::pow(q, K + 1) / (1.0 - q);
}

struct SeriesEval {
  double value = 0.0;
  double remainder_bound = 0.0;  // truncation tail plus evaluation slack
};

inline SeriesEval g_eval_series(double r, int K) {
  if (K < 3) throw std::invalid_argument("g_eval_series: requires K >= 3");
  if (!(r > 0.0) || !(r < comparison::kPi / std::sqrt(2.0)))
    throw std::domain_error("g_eval_series: r outside (0, pi/sqrt(2))");
  const GSeries s = g_coefficients(K);
  double value = 0.0;
  const double r2 = r * r;
  double rpow = r;  // r^{2k-1}
  for (int k = 1; k <= K; ++k) {
    value += s.coeffs[k - 1].to_double() * rpow;
    rpow *= r2;
  }
  SeriesEval out;
  out.value = value;
  // The slack term covers double rounding in both evaluators; the closed
  // form combines four cot-scale terms of magnitude up to ~3/r plus the
  // sn_2 pole scale.
  const double scale = 3.0 / r + 3.0 * std::abs(comparison::snlog(2.0, r)) + std::abs(value);
  out.remainder_bound = truncation_tail(r, K) + 64.0 * 2.220446049250313e-16 * scale;
  return out;
}

// Closed form via the sn logarithmic derivatives. The four terms cancel to
// O(r^5) near zero, so they are combined in extended precision.
inline double g_eval_closed(double r) {
  if (!(r > 0.0) || !(r < comparison::kPi / std::sqrt(2.0)))
    throw std::domain_error("g_eval_closed: r outside (0, pi/sqrt(2))");
  const long double x = r;
  auto cotlog = [](long double kappa, long double t) -> long double {
    const long double s = sqrtl(kappa);
    return s * cosl(s * t) / sinl(s * t);
  };
  const long double v =
      2.0L * cotlog(1.5L, x) + 1.0L / x - 2.0L * cotlog(0.5L, x) - cotlog(2.0L, x);
  return static_cast<double>(v);
}

}  // namespace kgeo::series
