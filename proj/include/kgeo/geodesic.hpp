#pragma once

// Distance-function Hessians along geodesics: Riccati integration driven by
// radial curvature profiles, the complexified index form, the product
// Laplacian closed form, and comparison-inequality sweeps over catalog
// models.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgeo/cmatrix.hpp"
#include "kgeo/comparison.hpp"
#include "kgeo/curvature.hpp"
#include "kgeo/quadrature.hpp"

namespace kgeo::geodesic {

using curvature::KahlerCurvature;
using curvature::RadialProfile;
using numkit::CMatrix;
using numkit::cdouble;

struct ConjugatePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AccuracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Riccati integration

struct RiccatiResult {
  std::vector<std::pair<int, double>> blocks;  // (multiplicity, curvature)
  std::vector<double> s_values;                // Hessian eigenvalue per block
  double delta_r = 0.0;
};

namespace detail {

// Integrates the scalar Riccati equation s' = -s^2 - kappa from
// s(t0) = 1/t0 - kappa t0 / 3 at t0 = 10h out to r. The regular part
// u = s - 1/t is what actually gets stepped: u' = -u^2 - 2u/t - kappa stays
// bounded near t = 0, so the fixed-step RK4 error keeps its h^4 scaling.
inline double riccati_block(double kappa, double r, double h) {
  const double t0 = 10.0 * h;
  auto rhs = [kappa](double t, double u) { return -u * u - 2.0 * u / t - kappa; };
  double t = t0;
  double u = -kappa * t0 / 3.0;
  const double blow = 1e8;
  while (t < r - 1e-15 * r) {
    const double step = std::min(h, r - t);
    u = numkit::rk4_step(rhs, t, u, step);
    t += step;
    if (!std::isfinite(u) || u + 1.0 / t < -blow)
      throw ConjugatePointError("riccati: Hessian diverged before the target radius "
                                "(conjugate point reached)");
  }
  return u + 1.0 / r;
}

}  // namespace detail

inline RiccatiResult riccati_delta_r(const RadialProfile& profile, double r, double h) {
  if (!(r > 0.0)) throw std::invalid_argument("riccati_delta_r: radius must be positive");
  if (!(h > 0.0) || h > r / 100.0)
    throw std::invalid_argument("riccati_delta_r: step must satisfy 0 < h <= r/100");
  if (profile.multiplicity_sum() != profile.dim())
    throw std::invalid_argument("riccati_delta_r: profile multiplicities must sum to 2n-1");

  RiccatiResult res;
  res.blocks = profile.entries;
  for (const auto& [mult, kappa] : profile.entries) {
    const double s = detail::riccati_block(kappa, r, h);
    res.s_values.push_back(s);
    res.delta_r += mult * s;
  }
  return res;
}

// Complex (1,1)-Hessian eigenvalues of a constant-HBSC-c space form at
// radius r computed from the Riccati blocks: the n-1 directions orthogonal
// to E_r carry s_{c/2}, the E_r direction carries s_{2c}/2 (the radial real
// direction contributes zero).
struct SpaceformHessian {
  double normal = 0.0;          // each of the n-1 orthogonal complex directions
  double radial_complex = 0.0;  // the E_r direction
};

inline SpaceformHessian spaceform_complex_hessian(int n, double c, double r, double h) {
  RadialProfile p;
  p.n = n;
  p.entries.push_back({1, 2.0 * c});
  if (n > 1) p.entries.push_back({2 * n - 2, 0.5 * c});
  const RiccatiResult rr = riccati_delta_r(p, r, h);
  SpaceformHessian out;
  out.radial_complex = 0.5 * rr.s_values[0];
  out.normal = n > 1 ? rr.s_values[1] : 0.0;
  return out;
}

// ---------------------------------------------------------------------------
// Index form

// A (1,0) field sampled on a uniform grid over [0, ell] in the parallel
// frame. The point count must be 4m+1 so that both the composite Simpson
// rule and its half-resolution error estimate apply.
struct FieldSample {
  std::vector<double> grid;
  std::vector<std::vector<cdouble>> values;  // values[t][component]

  double ell() const { return grid.empty() ? 0.0 : grid.back(); }
  int points() const { return static_cast<int>(grid.size()); }
  int dim() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }

  static FieldSample from_function(int n, double ell, int points,
                                   const std::function<std::vector<cdouble>(double)>& f) {
    if (points < 5 || (points - 1) % 4 != 0)
      throw std::invalid_argument("FieldSample: point count must be 4m+1");
    FieldSample v;
    v.grid.resize(points);
    v.values.resize(points);
    for (int i = 0; i < points; ++i) {
      v.grid[i] = ell * i / (points - 1);
      v.values[i] = f(v.grid[i]);
      if (static_cast<int>(v.values[i].size()) != n)
        throw std::invalid_argument("FieldSample: component count mismatch");
    }
    return v;
  }
};

namespace detail {

// 4th-order finite differences on a uniform grid.
inline std::vector<std::vector<cdouble>> derivative(const FieldSample& v) {
  const int m = v.points();
  const int n = v.dim();
  const double h = v.grid[1] - v.grid[0];
  std::vector<std::vector<cdouble>> d(m, std::vector<cdouble>(n));
  auto val = [&](int i, int c) { return v.values[i][c]; };
  for (int c = 0; c < n; ++c) {
    for (int i = 2; i < m - 2; ++i)
      d[i][c] = (val(i - 2, c) - 8.0 * val(i - 1, c) + 8.0 * val(i + 1, c) - val(i + 2, c)) /
                (12.0 * h);
    d[0][c] = (-25.0 * val(0, c) + 48.0 * val(1, c) - 36.0 * val(2, c) + 16.0 * val(3, c) -
               3.0 * val(4, c)) /
              (12.0 * h);
    d[1][c] = (-3.0 * val(0, c) - 10.0 * val(1, c) + 18.0 * val(2, c) - 6.0 * val(3, c) +
               val(4, c)) /
              (12.0 * h);
    d[m - 2][c] = -(-3.0 * val(m - 1, c) - 10.0 * val(m - 2, c) + 18.0 * val(m - 3, c) -
                    6.0 * val(m - 4, c) + val(m - 5, c)) /
                  (12.0 * h);
    d[m - 1][c] = -(-25.0 * val(m - 1, c) + 48.0 * val(m - 2, c) - 36.0 * val(m - 3, c) +
                    16.0 * val(m - 4, c) - 3.0 * val(m - 5, c)) /
                  (12.0 * h);
  }
  return d;
}

inline double simpson_on_grid(const std::vector<double>& f, double h, int stride) {
  double s = 0.0;
  const int m = static_cast<int>(f.size());
  for (int i = 0; i + 2 * stride < m; i += 2 * stride)
    s += (f[i] + 4.0 * f[i + stride] + f[i + 2 * stride]) * (stride * h) / 3.0;
  return s;
}

// Composite Simpson with a half-resolution comparison; throws if the
// estimated quadrature error exceeds the stated accuracy.
inline double integrate_sampled(const std::vector<double>& f, double h, double accuracy,
                                const char* who) {
  const double fine = simpson_on_grid(f, h, 1);
  const double coarse = simpson_on_grid(f, h, 2);
  if (std::abs(fine - coarse) / 15.0 > accuracy)
    throw AccuracyError(std::string(who) + ": grid does not resolve the integrand");
  return fine;
}

}  // namespace detail

// X_gamma(V, Vbar) = int |V'|^2 - (1/2) R(E_gamma, E_gamma bar, V, Vbar) dt
// with E_gamma the last frame direction; the curvature tensor is constant in
// the parallel frame for every catalog model.
inline double index_form(const KahlerCurvature& rc, const FieldSample& v) {
  const int n = rc.dim();
  if (v.dim() != n) throw std::invalid_argument("index_form: field dimension mismatch");
  if (v.points() < 5) throw std::invalid_argument("index_form: grid too coarse");
  for (const auto& x0 : v.values.front())
    if (std::abs(x0) > 1e-12) throw std::invalid_argument("index_form: field must vanish at t=0");

  const double h = v.grid[1] - v.grid[0];
  for (int i = 1; i < v.points(); ++i)
    if (std::abs(v.grid[i] - v.grid[i - 1] - h) > 1e-12 * (1.0 + std::abs(h)))
      throw std::invalid_argument("index_form: grid must be uniform");
  const auto d = detail::derivative(v);
  const int en = n - 1;

  std::vector<double> f(v.points());
  for (int t = 0; t < v.points(); ++t) {
    double kin = 0.0;
    for (int c = 0; c < n; ++c) kin += std::norm(d[t][c]);
    cdouble curv(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        curv += rc.at(en, en, i, j) * v.values[t][i] * std::conj(v.values[t][j]);
    f[t] = kin - 0.5 * std::real(curv);
  }
  return detail::integrate_sampled(f, h, 1e-8, "index_form");
}

// (1/2) int |<V', E_gamma>|^2 dt.
inline double index_correction(const FieldSample& v) {
  const auto d = detail::derivative(v);
  const int en = v.dim() - 1;
  std::vector<double> f(v.points());
  for (int t = 0; t < v.points(); ++t) f[t] = std::norm(d[t][en]);
  const double h = v.grid[1] - v.grid[0];
  return 0.5 * detail::integrate_sampled(f, h, 1e-8, "index_correction");
}

// Right-hand side of the Hessian comparison: X_gamma(V, Vbar) minus the
// correction, an upper bound for (d dbar r)(X, Xbar) whenever V(0) = 0 and
// V(ell) = X.
inline double hessian_upper_bound(const KahlerCurvature& rc, std::span<const cdouble> x,
                                  const FieldSample& v) {
  const int n = rc.dim();
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("hessian_upper_bound: endpoint dimension mismatch");
  for (int c = 0; c < n; ++c)
    if (std::abs(v.values.back()[c] - x[c]) > 1e-9)
      throw std::invalid_argument("hessian_upper_bound: field endpoint does not match X");
  return index_form(rc, v) - index_correction(v);
}

// The canonical comparison field through X on the constant-HBSC-c model:
// sn_{c/2}-profiles on the directions orthogonal to E_gamma and an
// sn_{2c}-profile along it. Its perpendicular part is a Jacobi field, so the
// Hessian bound is attained.
inline FieldSample canonical_field(int n, double c, double ell, std::span<const cdouble> x,
                                   int points = 2001) {
  std::vector<cdouble> xc(x.begin(), x.end());
  return FieldSample::from_function(n, ell, points, [n, c, ell, xc](double t) {
    std::vector<cdouble> row(n);
    const double perp = comparison::sn(0.5 * c, t) / comparison::sn(0.5 * c, ell);
    const double rad = comparison::sn(2.0 * c, t) / comparison::sn(2.0 * c, ell);
    for (int i = 0; i < n; ++i) row[i] = xc[i] * (i == n - 1 ? rad : perp);
    return row;
  });
}

// (d dbar r)(X, Xbar) on the model, assembled from the Riccati eigenvalues.
inline double spaceform_hessian_value(int n, double c, double ell, std::span<const cdouble> x,
                                      double h) {
  const SpaceformHessian sh = spaceform_complex_hessian(n, c, ell, h);
  double norm2 = 0.0;
  for (const auto& v : x) norm2 += std::norm(v);
  const double xn2 = std::norm(x[n - 1]);
  return sh.normal * (norm2 - xn2) + sh.radial_complex * xn2;
}

// Sup-norm distance between the perpendicular parts of V and of the
// canonical field with the same endpoint; the equality clause of the Hessian
// comparison detects Jacobi fields through this distance.
inline double jacobi_distance(int n, double c, const FieldSample& v, std::span<const cdouble> x) {
  const FieldSample ref = canonical_field(n, c, v.ell(), x, v.points());
  double worst = 0.0;
  for (int t = 0; t < v.points(); ++t) {
    double d2 = 0.0;
    for (int i = 0; i < n - 1; ++i) d2 += std::norm(v.values[t][i] - ref.values[t][i]);
    d2 += 0.5 * std::norm(v.values[t][n - 1] - ref.values[t][n - 1]);
    worst = std::max(worst, std::sqrt(d2));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Product manifolds

// f_r(x) = sn'_x(r)/sn_x(r) with the 1/r branch at x = 0.
inline double f_r(double x, double r) { return x == 0.0 ? 1.0 / r : comparison::snlog(x, r); }

// Delta r at a point whose geodesic direction splits over the factors with
// weights lambda_i: sum f_r(h_i lambda_i^2) + (n-1) f_r(0). Factor HSCs are
// kept general; the catalog products use h_i = n + 1 throughout.
inline double product_laplacian(std::span<const double> hsc, double r,
                                std::span<const double> mix) {
  const int n = static_cast<int>(hsc.size());
  if (n < 1) throw std::invalid_argument("product_laplacian: needs at least one factor");
  if (static_cast<int>(mix.size()) != n)
    throw std::invalid_argument("product_laplacian: mix length must match factor count");
  double s2 = 0.0;
  for (double v : mix) s2 += v * v;
  if (std::abs(s2 - 1.0) > 1e-8)
    throw std::invalid_argument("product_laplacian: mix must have unit square sum");
  double out = (n - 1) / r;
  for (int i = 0; i < n; ++i) out += f_r(hsc[i] * mix[i] * mix[i], r);
  return out;
}

// max over direction mixes, attained at lambda_i^2 = 1/n by concavity of
// f_r: n f_r((n+1)/n) + (n-1) f_r(0).
inline double product_laplacian_max(int n, double r) {
  if (n < 1) throw std::invalid_argument("product_laplacian_max: requires n >= 1");
  return n * f_r((n + 1.0) / n, r) + (n - 1.0) / r;
}

inline double phi_theta(double theta) {
  return 2.0 * theta * theta - theta * std::tan(theta) - std::sin(theta) * std::sin(theta);
}

// Concavity of x -> f_r(x) on (0, pi^2/r^2), checked by second differences
// on a grid together with the sign of phi(theta) = 2 theta^2 - theta tan
// theta - sin^2 theta on (0, pi/2).
inline bool fr_concavity_check(double r, int grid_points = 400) {
  const double xmax = comparison::kPi * comparison::kPi / (r * r);
  const double lo = 1e-3 * xmax;
  const double hi = 0.999 * xmax;
  const double dx = (hi - lo) / (grid_points - 1);
  for (int i = 1; i + 1 < grid_points; ++i) {
    const double x = lo + i * dx;
    const double second = f_r(x - dx, r) - 2.0 * f_r(x, r) + f_r(x + dx, r);
    const double scale = std::max({std::abs(f_r(x - dx, r)), std::abs(f_r(x, r)),
                                   std::abs(f_r(x + dx, r)), 1.0});
    if (second > 1e-7 * scale) return false;
  }
  for (int i = 1; i < 2000; ++i) {
    const double theta = (comparison::kPi / 2.0 - 1e-6) * i / 2000.0;
    if (phi_theta(theta) > 0.0) return false;
  }
  return true;
}

// Hermitian matrix of the complex (1,1)-Hessian of r on a product of
// 1-dimensional factors with HSCs h and direction mix lambda, in the complex
// frame aligned with the factors. Entries come from polarizing the real
// quadratic form q(X) = (S(x,x) + S(Jx,Jx))/2 where S is the real Hessian.
inline CMatrix product_complex_hessian(std::span<const double> hsc, std::span<const double> mix,
                                       double r) {
  const int n = static_cast<int>(hsc.size());
  if (static_cast<int>(mix.size()) != n)
    throw std::invalid_argument("product_complex_hessian: mix length mismatch");

  // Real Hessian eigendata: J-direction of factor i carries f_r(h_i l_i^2);
  // on the even (factor-radial) span it is (1/r)(I - u u^T) with u = mix.
  std::vector<double> fj(n);
  for (int i = 0; i < n; ++i) fj[i] = f_r(hsc[i] * mix[i] * mix[i], r);

  auto s_form = [&](const std::vector<double>& even, const std::vector<double>& odd) {
    // S(x, x) for x = sum even_i b_{2i} + odd_i b_{2i-1}
    double se = 0.0, dot = 0.0, so = 0.0;
    for (int i = 0; i < n; ++i) {
      se += even[i] * even[i];
      dot += even[i] * mix[i];
      so += fj[i] * odd[i] * odd[i];
    }
    return (se - dot * dot) / r + so;
  };

  auto q = [&](const std::vector<cdouble>& x) {
    // v = sum Re(x_i) b_{2i} + Im(x_i) b_{2i-1}; Jv swaps the parts.
    std::vector<double> ve(n), vo(n), je(n), jo(n);
    for (int i = 0; i < n; ++i) {
      ve[i] = x[i].real();
      vo[i] = x[i].imag();
      je[i] = -x[i].imag();
      jo[i] = x[i].real();
    }
    return 0.5 * (s_form(ve, vo) + s_form(je, jo));
  };

  CMatrix hmat(n, n);
  std::vector<cdouble> ea(n), eb(n), work(n);
  for (int a = 0; a < n; ++a) {
    std::fill(ea.begin(), ea.end(), cdouble(0.0, 0.0));
    ea[a] = 1.0;
    hmat(a, a) = q(ea);
    for (int b = a + 1; b < n; ++b) {
      std::fill(eb.begin(), eb.end(), cdouble(0.0, 0.0));
      eb[b] = 1.0;
      auto combine = [&](cdouble w) {
        for (int i = 0; i < n; ++i) work[i] = ea[i] + w * eb[i];
        return q(work);
      };
      const double re = 0.25 * (combine(1.0) - combine(-1.0));
      const double im = 0.25 * (combine(cdouble(0.0, 1.0)) - combine(cdouble(0.0, -1.0)));
      hmat(a, b) = cdouble(re, im);
      hmat(b, a) = cdouble(re, -im);
    }
  }
  return hmat;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepRow {
  double r = 0.0;
  double actual = 0.0;
  double bound = 0.0;
  double gap = 0.0;  // bound - actual
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double min_gap = 0.0;
  int violations = 0;
  bool hypothesis_ok = true;
  std::string note;

  void push(double r, double actual, double bound, double tol) {
    SweepRow row{r, actual, bound, bound - actual};
    rows.push_back(row);
    if (rows.size() == 1 || row.gap < min_gap) min_gap = row.gap;
    if (row.gap < -tol) ++violations;
  }
};

inline std::vector<double> linear_grid(double a, double b, int count) {
  if (count < 2) throw std::invalid_argument("linear_grid: needs at least two points");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = a + (b - a) * i / (count - 1);
  return g;
}

// Random direction mix with nonnegative entries and unit square sum.
inline std::vector<double> random_mix(int n, numkit::SeededRng& rng) {
  std::vector<double> m(n);
  double s2 = 0.0;
  do {
    s2 = 0.0;
    for (auto& v : m) {
      v = rng.gaussian();
      s2 += v * v;
    }
  } while (s2 < 1e-12);
  for (auto& v : m) v = std::abs(v) / std::sqrt(s2);
  return m;
}

// A mix realizable at radius r on a product of factors with common HSC h:
// the per-factor distance lambda_i r cannot pass the factor diameter
// pi/sqrt(h). Falls back to the uniform mix when rejection keeps failing.
inline std::vector<double> admissible_random_mix(int n, double h, double r,
                                                 numkit::SeededRng& rng) {
  const double cap = 0.999 * comparison::kPi / (std::sqrt(h) * r);
  for (int attempt = 0; attempt < 200; ++attempt) {
    auto m = random_mix(n, rng);
    double worst = 0.0;
    for (double v : m) worst = std::max(worst, v);
    if (worst < cap) return m;
  }
  return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
}

// Space form against the model bound with parameter c_bound; gap is
// identically zero when c_bound equals the model constant.
inline SweepReport sweep_spaceform(int n, double c_model, double c_bound,
                                   std::span<const double> grid, double tol = 1e-8) {
  SweepReport rep;
  for (double r : grid)
    rep.push(r, comparison::kahler_model_laplacian(n, c_model, r),
             comparison::kahler_model_laplacian(n, c_bound, r), tol);
  return rep;
}

// Product of CP^1 factors with common HSC h, swept against the model bound
// with parameter c_bound. `actual` at each radius is the maximum of the
// product Laplacian over the analytic maximizer and `mixes` random mixes.
inline SweepReport sweep_product_cp1(int n, double h, double c_bound,
                                     std::span<const double> grid, int mixes, std::uint64_t seed,
                                     double tol = 1e-8) {
  SweepReport rep;
  std::vector<double> hs(n, h);
  for (double r : grid) {
    numkit::SeededRng rng(seed ^ std::hash<double>{}(r));
    double actual = 0.0;
    if (std::abs(h - (n + 1.0)) < 1e-12) {
      actual = product_laplacian_max(n, r);
    } else {
      std::vector<double> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
      actual = product_laplacian(hs, r, uniform);
    }
    for (int m = 0; m < mixes; ++m)
      actual = std::max(actual, product_laplacian(hs, r, admissible_random_mix(n, h, r, rng)));
    rep.push(r, actual, comparison::kahler_model_laplacian(n, c_bound, r), tol);
  }
  return rep;
}

// k-Hessian comparison on the product: the largest k-frame partial trace of
// the (1,1)-Hessian over frames orthogonal to E_r against k sn'/sn. The
// per-radius maximum is exact (Ky Fan applied to the projected matrix).
inline SweepReport k_hessian_product_sweep(int n, double h, double c, int k,
                                           std::span<const double> grid, int mixes,
                                           std::uint64_t seed, double tol = 1e-8) {
  if (k < 1 || k >= n) throw std::invalid_argument("k_hessian_product_sweep: requires 1 <= k < n");
  SweepReport rep;
  std::vector<double> hs(n, h);
  for (double r : grid) {
    numkit::SeededRng rng(seed ^ std::hash<double>{}(r));
    double actual = -1e300;
    for (int m = 0; m < mixes; ++m) {
      const std::vector<double> mix = admissible_random_mix(n, h, r, rng);
      const CMatrix hmat = product_complex_hessian(hs, mix, r);
      // complex orthogonal complement of E_r = (lambda_1, ..., lambda_n)
      CMatrix basis(n, n - 1);
      {
        // Householder-style completion of the unit vector `mix`
        std::vector<std::vector<cdouble>> cols;
        for (int j = 0; j < n; ++j) {
          std::vector<cdouble> e(n, cdouble(0.0, 0.0));
          e[j] = 1.0;
          cdouble proj(0.0, 0.0);
          for (int i = 0; i < n; ++i) proj += e[i] * mix[i];
          for (int i = 0; i < n; ++i) e[i] -= proj * mix[i];
          for (const auto& c2 : cols) {
            cdouble p(0.0, 0.0);
            for (int i = 0; i < n; ++i) p += e[i] * std::conj(c2[i]);
            for (int i = 0; i < n; ++i) e[i] -= p * c2[i];
          }
          double nr = 0.0;
          for (const auto& v : e) nr += std::norm(v);
          nr = std::sqrt(nr);
          if (nr > 1e-8) {
            for (auto& v : e) v /= nr;
            cols.push_back(e);
            if (static_cast<int>(cols.size()) == n - 1) break;
          }
        }
        for (int j = 0; j < n - 1; ++j)
          for (int i = 0; i < n; ++i) basis(i, j) = cols[j][i];
      }
      CMatrix proj(n - 1, n - 1);
      for (int a = 0; a < n - 1; ++a)
        for (int b = 0; b < n - 1; ++b) {
          cdouble acc(0.0, 0.0);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              acc += std::conj(basis(i, a)) * hmat(i, j) * basis(j, b);
          proj(a, b) = acc;
        }
      const auto eig = numkit::hermitian_eigen(proj);
      double top = 0.0;
      for (int i = 0; i < k; ++i) top += eig.values[n - 2 - i];
      actual = std::max(actual, top);
    }
    rep.push(r, actual, k * comparison::snlog(0.5 * c, r), tol);
  }
  return rep;
}

}  // namespace kgeo::geodesic
