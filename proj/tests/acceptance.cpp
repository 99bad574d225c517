// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include "kgeo/catalog.hpp"
#include "kgeo/comparison.hpp"
#include "kgeo/curvature.hpp"
#include "kgeo/geodesic.hpp"
#include "kgeo/series.hpp"
#include "kgeo/symop.hpp"

using namespace kgeo;
using numkit::cdouble;

namespace {

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// 1. CP^n operator spectrum is 2 id for n = 1..8.
void criterion1() {
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const auto op = symop::build(curvature::const_hbsc(n, 1.0));
    for (double v : op.spectrum) worst = std::max(worst, std::abs(v - 2.0));
  }
  report(1, "CP^n operator spectrum {2}^N, n = 1..8", worst <= 1e-10,
         "max deviation " + fmt(worst));
}

// 2. Hyperquadric spectrum {2-n} u {2}^{N-1} for n = 2..8.
void criterion2() {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const auto op = symop::build(curvature::hyperquadric(n));
    worst = std::max(worst, std::abs(op.spectrum[0] - (2.0 - n)));
    for (int i = 1; i < op.N; ++i) worst = std::max(worst, std::abs(op.spectrum[i] - 2.0));
  }
  report(2, "hyperquadric spectrum {2-n, 2, ..., 2}, n = 2..8", worst <= 1e-9,
         "max deviation " + fmt(worst));
}

// 3. Riccati integration against the model Laplacian closed form.
void criterion3() {
  double worst = 0.0;
  for (int n : {1, 2, 3}) {
    for (double c : {-1.0, -0.5, 0.5, 1.0}) {
      const double top = c > 0.0 ? 0.9 * comparison::domain_end(2.0 * c) : 0.9 * 3.0;
      curvature::RadialProfile p;
      p.n = n;
      p.entries.push_back({1, 2.0 * c});
      if (n > 1) p.entries.push_back({2 * n - 2, 0.5 * c});
      for (int i = 0; i < 20; ++i) {
        const double r = 0.05 + (top - 0.05) * i / 19.0;
        const double delta = geodesic::riccati_delta_r(p, r, r / 600.0).delta_r;
        worst = std::max(worst, std::abs(delta - comparison::kahler_model_laplacian(n, c, r)));
      }
    }
  }
  report(3, "Riccati vs closed-form model Laplacian", worst <= 1e-6, "max |error| " + fmt(worst));
}

// 4. Product Laplacian: closed form vs Riccati, and the maximizer.
void criterion4() {
  double worst = 0.0;
  bool max_ok = true;
  numkit::SeededRng rng(20250810);
  for (int n : {2, 3}) {
    const auto model = catalog::make_model("product-cp1", n);
    const std::vector<double> h(n, n + 1.0);
    const double rmax = 0.85 * comparison::kPi / std::sqrt(n + 1.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double r = 0.05 + (rmax - 0.05) * rng.uniform();
      const auto mix = geodesic::random_mix(n, rng);
      const double closed = geodesic::product_laplacian(h, r, mix);
      const auto profile = curvature::radial_profile(model, mix);
      const double riccati = geodesic::riccati_delta_r(profile, r, r / 500.0).delta_r;
      worst = std::max(worst, std::abs(closed - riccati));
    }
    const double r = 0.5;
    const double ref = geodesic::product_laplacian_max(n, r);
    double best = -1e300;
    for (int s = 0; s < 1000; ++s)
      best = std::max(best, geodesic::product_laplacian(h, r, geodesic::random_mix(n, rng)));
    const std::vector<double> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
    if (best > ref + 1e-6 || std::abs(geodesic::product_laplacian(h, r, uniform) - ref) > 1e-6)
      max_ok = false;
  }
  report(4, "product Laplacian vs Riccati and maximizer at lambda_i^2 = 1/n",
         worst <= 1e-6 && max_ok, "max |error| " + fmt(worst));
}

// 5. The example52 series certificate: positivity, exact signs, remainder.
void criterion5() {
  const double top = comparison::kPi / std::sqrt(2.0) - 0.01;
  int nonpositive = 0;
  for (int i = 0; i < 1000; ++i) {
    const double r = 0.01 + (top - 0.01) * i / 999.0;
    if (!(series::g_eval_closed(r) > 0.0)) ++nonpositive;
  }
  const auto s = series::g_coefficients(100);
  bool signs = s.coeffs[0] == numkit::BigRational(0) && s.coeffs[1] == numkit::BigRational(0);
  for (int k = 3; k <= 100; ++k)
    if (!(s.coeffs[k - 1] > numkit::BigRational(0))) signs = false;
  int series_fail = 0;
  for (int i = 0; i < 100; ++i) {
    const double r = 0.02 + (top - 0.02) * i / 99.0;
    const auto se = series::g_eval_series(r, 40);
    if (std::abs(se.value - series::g_eval_closed(r)) > se.remainder_bound) ++series_fail;
  }
  report(5, "example52: g > 0, T_1 = T_2 = 0, c_k > 0 (k = 3..100), series bound",
         nonpositive == 0 && signs && series_fail == 0,
         "non-positive " + std::to_string(nonpositive) + ", series misses " +
             std::to_string(series_fail));
}

// 6. Mixed-estimate sweep over random admissible tensors; model saturation.
void criterion6() {
  long long checks = 0;
  int violations = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k < n; ++k) {
      for (double c : {-1.0, 0.0, 1.0}) {
        const double amin = 2.0 * (k - 1) / static_cast<double>(n - 1);
        for (int trial = 0; trial < 200; ++trial) {
          auto rc = symop::random_kahler_curvature(
              n, 160000ULL + 1000ULL * n + 100ULL * k + trial);
          rc = symop::shift_to_k_semipositive(rc, c, k);
          for (int f = 0; f < 100; ++f) {
            const auto frame = numkit::random_unitary(n, 710000ULL + 100ULL * trial + f);
            const auto vals = symop::detail::mixed_values(rc, frame);
            double sum = 0.0;
            for (int i = 0; i < n - 1; ++i) sum += vals[i];
            for (int ai = 0; ai < 10; ++ai) {
              const double alpha = amin + (4.0 - amin) * ai / 9.0;
              ++checks;
              if (vals[n - 1] + alpha * sum < 2.0 * c + alpha * (n - 1) * c - 1e-8) ++violations;
            }
          }
        }
      }
    }
  }
  double sat_worst = 0.0;
  for (int n : {2, 4, 6}) {
    for (double c : {-1.0, 1.0}) {
      const auto rc = curvature::const_hbsc(n, c);
      for (int k = 1; k < n; ++k) {
        const auto frame = numkit::random_unitary(n, 42ULL + n + k);
        const auto res = symop::mixed_estimate_check(
            rc, c, k, 2.0 * (k - 1) / static_cast<double>(n - 1), frame);
        sat_worst = std::max(sat_worst, std::abs(res.lhs - res.rhs));
      }
    }
  }
  report(6, "mixed-estimate sweep (random admissible tensors) and model saturation",
         violations == 0 && sat_worst <= 1e-10,
         std::to_string(checks) + " checks, " + std::to_string(violations) +
             " violations, saturation gap " + fmt(sat_worst));
}

// 7. Ky Fan partial-trace minimum.
void criterion7() {
  numkit::SeededRng rng(777);
  numkit::CMatrix a(6, 6);
  for (int i = 0; i < 6; ++i) {
    a(i, i) = rng.gaussian();
    for (int j = i + 1; j < 6; ++j) {
      a(i, j) = cdouble(rng.gaussian(), rng.gaussian());
      a(j, i) = std::conj(a(i, j));
    }
  }
  const int k = 2;
  const double exact = symop::kyfan_min(a, k);
  const auto eig = numkit::hermitian_eigen(a);
  const double attained = symop::frame_partial_trace(a, eig.vectors, k);
  double sampled = 1e300;
  for (int t = 0; t < 100000; ++t) {
    const auto f = numkit::random_unitary(6, 3000000ULL + t);
    sampled = std::min(sampled, symop::frame_partial_trace(a, f, k));
  }
  const bool ok = std::abs(attained - exact) <= 1e-10 && sampled >= exact - 1e-9;
  report(7, "Ky Fan minimum attained, 1e5 random frames never undercut", ok,
         "sampled margin " + fmt(sampled - exact));
}

// 8. Hessian comparison: dominance and the equality clause.
void criterion8() {
  int checked = 0, dominance_fail = 0, equality_fail = 0;
  for (const auto& model_pair :
       std::vector<std::pair<int, double>>{{2, 1.0}, {2, -1.0}, {3, 1.0}}) {
    const int n = model_pair.first;
    const double c = model_pair.second;
    const double ell = c > 0.0 ? 0.45 * comparison::domain_end(2.0 * c) : 0.9;
    const auto rc = curvature::const_hbsc(n, c);
    numkit::SeededRng rng(880000ULL + 10ULL * n + static_cast<int>(c + 2));
    for (int trial = 0; trial < 67 && checked < 200; ++trial, ++checked) {
      std::vector<cdouble> x(n);
      double norm = 0.0;
      for (auto& v : x) {
        v = {rng.gaussian(), rng.gaussian()};
        norm += std::norm(v);
      }
      for (auto& v : x) v /= std::sqrt(norm);
      const double hess = geodesic::spaceform_hessian_value(n, c, ell, x, ell / 2000.0);
      const auto canon = geodesic::canonical_field(n, c, ell, x);
      if (std::abs(geodesic::hessian_upper_bound(rc, x, canon) - hess) > 1e-6) ++equality_fail;
      std::vector<double> amp(2 * n);
      for (auto& av : amp) av = 0.4 * (2.0 * rng.uniform() - 1.0);
      const auto pert = geodesic::FieldSample::from_function(
          n, ell, canon.points(), [&](double t) {
            auto row = canon.values[static_cast<int>(std::round(t / ell * (canon.points() - 1)))];
            for (int i = 0; i < n; ++i)
              for (int m = 1; m <= 2; ++m)
                row[i] += amp[2 * i + m - 1] * std::sin(m * comparison::kPi * t / ell);
            return row;
          });
      if (geodesic::hessian_upper_bound(rc, x, pert) < hess - 1e-8) ++dominance_fail;
    }
  }
  report(8, "Hessian comparison dominance (200 fields) and canonical equality",
         dominance_fail == 0 && equality_fail == 0,
         std::to_string(checked) + " fields, dominance fails " +
             std::to_string(dominance_fail) + ", equality fails " +
             std::to_string(equality_fail));
}

// 9. Diameter constants.
void criterion9() {
  const auto d1 = comparison::diam_constants(1, 1.0);
  const double cpn = comparison::kPi / std::sqrt(2.0);
  const auto d2 = comparison::diam_constants(2, 0.75);
  const double product_diam = comparison::kPi * std::sqrt(2.0 / 3.0);
  const bool ok = std::abs(d1.bound - cpn) <= 1e-12 && std::abs(d2.nu - 0.6) <= 1e-12 &&
                  std::abs(d2.bound - comparison::kPi * std::sqrt(5.0 / 3.0)) <= 1e-12 &&
                  product_diam <= d2.bound;
  report(9, "diameter constants: nu, pi/sqrt(nu) and the product instance", ok,
         "bounds " + fmt(d1.bound) + ", " + fmt(d2.bound));
}

// 10. Volumes: closed-form balls, ratio monotonicity, total volume bound.
void criterion10() {
  const double diam_model = comparison::kPi / std::sqrt(2.0);
  const double v1 = comparison::ball_volume(1, 1.0, diam_model);
  const double v2 = comparison::ball_volume(2, 1.0, diam_model);
  const bool balls_ok = std::abs(v1 - 2.0 * comparison::kPi) <= 1e-8 &&
                        std::abs(v2 - 2.0 * comparison::kPi * comparison::kPi) <= 1e-7;

  const double diam_prod = comparison::kPi * std::sqrt(2.0 / 3.0);
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i < 50; ++i) {
    const double d = 0.05 + (diam_prod - 0.05) * i / 49.0;
    samples.push_back({d, comparison::product_cp1_ball_volume(3.0, d)});
  }
  const auto ratio = comparison::bg_ratio(samples, 2, 0.75, 1e-9);

  const double total = comparison::product_cp1_ball_volume(3.0, diam_prod);
  const double model_total = 2.0 * comparison::kPi * comparison::kPi / (0.75 * 0.75);
  const bool total_ok = std::abs(total - std::pow(4.0 * comparison::kPi / 3.0, 2)) <= 1e-7 &&
                        total <= model_total;
  report(10, "ball volumes 2pi and 2pi^2, ratio non-increasing, total volume bound",
         balls_ok && ratio.non_increasing && total_ok,
         "ratio max increase " + fmt(ratio.max_increase));
}

// 11. Sharpness of the Kahler bound against the Riemannian one.
void criterion11() {
  bool ok = true;
  for (int n : {2, 3}) {
    const double k = (n + 1.0) / (2.0 * n - 1.0);
    for (int i = 1; i <= 300; ++i) {
      const double r = 0.02 + (comparison::kPi / std::sqrt(2.0) - 0.03) * i / 300.0;
      if (!(comparison::kahler_model_laplacian(n, 1.0, r) <
            comparison::riemannian_model_laplacian(2.0 * n, k, r)))
        ok = false;
    }
  }
  const bool myers_ok = std::abs(comparison::myers_bound_riemannian(2) - comparison::kPi) <=
                            1e-12 &&
                        comparison::myers_bound_riemannian(2) > comparison::kPi / std::sqrt(2.0);
  report(11, "Kahler Laplacian bound sharper than Riemannian; Myers bound exceeds pi/sqrt(2)",
         ok && myers_ok, std::string("n = 2, 3 grids"));
}

// 12. The product satisfies the HSC/Ric comparison at c = 3/4.
void criterion12() {
  const std::vector<double> h = {3.0, 3.0};
  const double min_hsc = curvature::product_min_hsc(h);
  const double ric_min = curvature::ricci_min_eigenvalue(
      curvature::to_curvature(catalog::make_model("product-cp1", 2)));
  const bool hyp_ok = std::abs(min_hsc - 1.5) <= 1e-12 && min_hsc >= 2.0 * 0.75 - 1e-12 &&
                      ric_min >= 3.0 * 0.75 - 1e-9;

  const double diam = comparison::kPi * std::sqrt(2.0 / 3.0);
  const auto grid = geodesic::linear_grid(0.02, 0.95 * diam, 60);
  const auto rep = geodesic::sweep_product_cp1(2, 3.0, 0.75, grid, 64, 121, 1e-8);
  report(12, "product vs model bound at c = 3/4 with hypothesis checks",
         hyp_ok && rep.violations == 0,
         "min gap " + fmt(rep.min_gap) + ", violations " + std::to_string(rep.violations));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  const auto end = std::chrono::steady_clock::now();
  const double secs = std::chrono::duration<double>(end - start).count();
  std::printf("%d of 12 criteria passed in %.1f s\n", 12 - failures, secs);
  return failures == 0 ? 0 : 1;
}
