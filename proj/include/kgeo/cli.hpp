#pragma once

// Command-line front end: spectrum/laplacian/volume reports, the check
// suites, and the series inspector. Emits CSV or JSON, exits 0 on success,
// 1 on an assertion failure (with a reproducer seed), 2 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kgeo/catalog.hpp"
#include "kgeo/comparison.hpp"
#include "kgeo/curvature.hpp"
#include "kgeo/geodesic.hpp"
#include "kgeo/series.hpp"
#include "kgeo/symop.hpp"

namespace kgeo::cli {

struct GridSpec {
  double a = 0.0;
  double b = 1.0;
  int count = 2;
};

struct RunConfig {
  std::string subcommand;
  std::string what;  // check variant
  std::string model = "cpn";
  std::string bound = "kahler";
  int n = 2;
  double c = 1.0;
  int k = 1;
  int order = 40;           // series truncation K
  std::optional<double> eval_r;
  std::vector<double> mix;  // explicit direction mix
  GridSpec grid{0.1, 1.5, 20};
  bool grid_set = false;
  bool n_set = false;
  bool k_set = false;
  std::uint64_t seed = 12345;
  double tol = 1e-8;
  int trials = 200;
  int frames = 100;
  int mixes = 64;
  bool dump = false;
  std::string out_path;
  std::string format = "csv";
};

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline bool parse_grid(const std::string& s, GridSpec& g) {
  const auto p1 = s.find(':');
  const auto p2 = s.find(':', p1 + 1);
  if (p1 == std::string::npos || p2 == std::string::npos) return false;
  try {
    g.a = std::stod(s.substr(0, p1));
    g.b = std::stod(s.substr(p1 + 1, p2 - p1 - 1));
    g.count = std::stoi(s.substr(p2 + 1));
  } catch (const std::exception&) {
    return false;
  }
  return g.count >= 2 && g.b > g.a;
}

inline bool parse_mix(const std::string& s, std::vector<double>& mix) {
  mix.clear();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      mix.push_back(std::stod(item));
    } catch (const std::exception&) {
      return false;
    }
  }
  return !mix.empty();
}

class Output {
 public:
  Output(std::ostream& fallback, const std::string& path) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::ofstream file_;
};

// Rows of (r, value-like columns) as CSV or as versioned JSON.
inline void emit_rows(std::ostream& os, const std::string& format,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  if (format == "json") {
    nlohmann::json j;
    j["schema"] = 1;
    j["columns"] = columns;
    j["rows"] = rows;
    os << j.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << columns[i] << (i + 1 < columns.size() ? "," : "");
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << fmt(row[i]) << (i + 1 < row.size() ? "," : "");
    os << "\n";
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spectrum

inline int run_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  curvature::KahlerCurvature rc = curvature::to_curvature(
      catalog::make_model(cfg.model, cfg.n, cfg.c));
  if (cfg.dump) {
    nlohmann::json dump;
    dump["n"] = rc.dim();
    nlohmann::json comp = nlohmann::json::array();
    for (const auto& v : rc.raw()) comp.push_back({v.real(), v.imag()});
    dump["comp"] = std::move(comp);
    detail::Output o(out, cfg.out_path);
    o.stream() << dump.dump(2) << "\n";
    return 0;
  }
  const symop::SymOperator op = symop::build(rc);
  nlohmann::json j;
  j["schema"] = 1;
  j["model"] = cfg.model;
  j["n"] = op.n;
  j["N"] = op.N;
  j["eigenvalues"] = op.spectrum;
  nlohmann::json ks;
  for (int k = 1; k <= op.N; ++k) ks[std::to_string(k)] = symop::k_sum(op, k);
  j["ksum"] = std::move(ks);
  detail::Output o(out, cfg.out_path);
  o.stream() << j.dump(2) << "\n";
  (void)err;
  return 0;
}

// ---------------------------------------------------------------------------
// laplacian / volume

inline int run_laplacian(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = geodesic::linear_grid(cfg.grid.a, cfg.grid.b, cfg.grid.count);
  std::vector<std::vector<double>> rows;
  int violations = 0;
  for (double r : grid) {
    double value = 0.0;
    if (cfg.model == "cpn") {
      value = comparison::kahler_model_laplacian(cfg.n, cfg.c, r);
    } else if (cfg.model == "product-cp1") {
      if (!cfg.mix.empty()) {
        std::vector<double> h(cfg.n, cfg.n + 1.0);
        value = geodesic::product_laplacian(h, r, cfg.mix);
      } else {
        value = geodesic::product_laplacian_max(cfg.n, r);
      }
    } else {
      err << "laplacian: model '" << cfg.model << "' has no radial data\n";
      return 2;
    }
    const double bound = comparison::kahler_model_laplacian(cfg.n, cfg.c, r);
    const double gap = bound - value;
    if (gap < -cfg.tol) ++violations;
    rows.push_back({r, value, bound, gap});
  }
  detail::Output o(out, cfg.out_path);
  detail::emit_rows(o.stream(), cfg.format, {"r", "value", "bound", "gap"}, rows);
  return violations == 0 ? 0 : 1;
}

inline int run_volume(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = geodesic::linear_grid(cfg.grid.a, cfg.grid.b, cfg.grid.count);
  std::vector<std::vector<double>> rows;
  int violations = 0;
  for (double r : grid) {
    double value = 0.0;
    if (cfg.model == "cpn") {
      value = comparison::ball_volume(cfg.n, cfg.c, r);
    } else if (cfg.model == "product-cp1") {
      if (cfg.n != 2) {
        err << "volume: product-cp1 ball volumes are implemented for n = 2\n";
        return 2;
      }
      value = comparison::product_cp1_ball_volume(3.0, r);
    } else {
      err << "volume: model '" << cfg.model << "' has no volume data\n";
      return 2;
    }
    const double bound = comparison::ball_volume(cfg.n, cfg.c, r);
    const double gap = bound - value;
    if (gap < -cfg.tol) ++violations;
    rows.push_back({r, value, bound, gap});
  }
  detail::Output o(out, cfg.out_path);
  detail::emit_rows(o.stream(), cfg.format, {"r", "value", "bound", "gap"}, rows);
  return violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// check suites

inline int check_lemma31(const RunConfig& cfg, std::ostream& out) {
  const std::vector<double> cs = {-1.0, 0.0, 1.0};
  std::vector<int> ns;
  if (cfg.n_set) ns = {cfg.n};
  else ns = {2, 3, 4, 5, 6};
  int total = 0, violations = 0;
  for (int n : ns) {
    for (int k = 1; k < n; ++k) {
      if (cfg.k_set && k != cfg.k) continue;
      for (double c : cs) {
        const double alpha_min = 2.0 * (k - 1) / static_cast<double>(n - 1);
        for (int trial = 0; trial < cfg.trials; ++trial) {
          const std::uint64_t tseed = cfg.seed + 1000003ULL * trial + 17ULL * n + 7ULL * k;
          auto rc = symop::random_kahler_curvature(n, tseed);
          rc = symop::shift_to_k_semipositive(rc, c, k);
          for (int f = 0; f < cfg.frames; ++f) {
            const auto frame = numkit::random_unitary(n, tseed ^ (0xabcdULL + f));
            const auto vals = symop::detail::mixed_values(rc, frame);
            for (int ai = 0; ai < 10; ++ai) {
              const double alpha = alpha_min + (4.0 - alpha_min) * ai / 9.0;
              double lhs = vals[n - 1];
              for (int i = 0; i < n - 1; ++i) lhs += alpha * vals[i];
              const double rhs = 2.0 * c + alpha * (n - 1) * c;
              ++total;
              if (lhs < rhs - cfg.tol) {
                ++violations;
                out << "VIOLATION lemma31 n=" << n << " k=" << k << " c=" << c
                    << " alpha=" << alpha << " tensor_seed=" << tseed << " frame=" << f
                    << " lhs=" << detail::fmt(lhs) << " rhs=" << detail::fmt(rhs) << "\n";
              }
            }
          }
        }
      }
    }
  }
  out << (violations == 0 ? "PASS" : "FAIL") << ": lemma31 sweep, " << total
      << " inequality checks, " << violations << " violations (seed " << cfg.seed << ")\n";
  return violations == 0 ? 0 : 1;
}

inline int check_thm21(const RunConfig& cfg, std::ostream& out) {
  int failures = 0;
  const std::vector<std::pair<int, double>> models = {{2, 1.0}, {2, -1.0}, {3, 1.0}};
  for (const auto& model_pair : models) {
    const int n = model_pair.first;
    const double c = model_pair.second;
    const double ell = c > 0.0 ? 0.45 * comparison::domain_end(2.0 * c) : 0.9;
    const auto rc = curvature::const_hbsc(n, c);
    numkit::SeededRng rng(cfg.seed ^ (static_cast<std::uint64_t>(n) << 8));
    const double h = ell / 2000.0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      std::vector<numkit::cdouble> x(n);
      double norm = 0.0;
      for (auto& v : x) {
        v = {rng.gaussian(), rng.gaussian()};
        norm += std::norm(v);
      }
      for (auto& v : x) v /= std::sqrt(norm);

      const double hess = geodesic::spaceform_hessian_value(n, c, ell, x, h);
      // canonical field: equality within 1e-6
      const auto canon = geodesic::canonical_field(n, c, ell, x);
      const double bound_eq = geodesic::hessian_upper_bound(rc, x, canon);
      if (std::abs(bound_eq - hess) > 1e-6) {
        ++failures;
        out << "FAIL thm21 equality n=" << n << " c=" << c << " trial=" << trial
            << " gap=" << detail::fmt(bound_eq - hess) << "\n";
      }
      // perturbed field: bound must dominate
      std::vector<double> amp(3 * n);
      for (auto& a : amp) a = 0.5 * (2.0 * rng.uniform() - 1.0);
      const auto pert = geodesic::FieldSample::from_function(
          n, ell, canon.points(), [&](double t) {
            auto row = canon.values[static_cast<int>(std::round(t / ell * (canon.points() - 1)))];
            for (int i = 0; i < n; ++i) {
              double bump = 0.0;
              for (int m = 1; m <= 3; ++m)
                bump += amp[3 * i + m - 1] * std::sin(m * comparison::kPi * t / ell);
              row[i] += bump;
            }
            return row;
          });
      const double bound_pert = geodesic::hessian_upper_bound(rc, x, pert);
      if (bound_pert < hess - cfg.tol) {
        ++failures;
        out << "FAIL thm21 dominance n=" << n << " c=" << c << " trial=" << trial
            << " undercut=" << detail::fmt(hess - bound_pert) << "\n";
      }
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << ": thm21 dominance and equality, seed " << cfg.seed
      << "\n";
  return failures == 0 ? 0 : 1;
}

inline int check_product(const RunConfig& cfg, std::ostream& out) {
  int failures = 0;
  std::vector<int> ns = cfg.n_set ? std::vector<int>{cfg.n} : std::vector<int>{2, 3};
  for (int n : ns) {
    const auto model = catalog::make_model("product-cp1", n);
    const std::vector<double> h(n, n + 1.0);
    numkit::SeededRng rng(cfg.seed + n);
    const double hard_max = 0.85 * comparison::kPi / std::sqrt(n + 1.0);
    const double rmin = cfg.grid_set ? std::max(cfg.grid.a, 0.01) : 0.05;
    const double rmax = cfg.grid_set ? std::min(cfg.grid.b, hard_max) : hard_max;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const double r = rmin + (rmax - rmin) * rng.uniform();
      const auto mix = geodesic::random_mix(n, rng);
      const double closed = geodesic::product_laplacian(h, r, mix);
      const auto profile = curvature::radial_profile(model, mix);
      const double riccati = geodesic::riccati_delta_r(profile, r, r / 400.0).delta_r;
      if (std::abs(closed - riccati) > 1e-6) {
        ++failures;
        out << "FAIL product n=" << n << " trial=" << trial << " r=" << detail::fmt(r)
            << " closed=" << detail::fmt(closed) << " riccati=" << detail::fmt(riccati) << "\n";
      }
    }
    // brute-force maximizer check at a fixed radius
    const double r = 0.5;
    const double maxref = geodesic::product_laplacian_max(n, r);
    double best = -1e300;
    for (int s = 0; s < 1000; ++s) {
      const auto mix = geodesic::random_mix(n, rng);
      best = std::max(best, geodesic::product_laplacian(h, r, mix));
    }
    const std::vector<double> uniform(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const double at_uniform = geodesic::product_laplacian(h, r, uniform);
    if (best > maxref + 1e-9 || std::abs(at_uniform - maxref) > 1e-6) {
      ++failures;
      out << "FAIL product maximizer n=" << n << " best=" << detail::fmt(best)
          << " max_formula=" << detail::fmt(maxref) << "\n";
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << ": product laplacian vs riccati, seed " << cfg.seed
      << "\n";
  return failures == 0 ? 0 : 1;
}

inline int check_khessian(const RunConfig& cfg, std::ostream& out) {
  int failures = 0;
  // constant-HBSC model: every normal (1,1)-eigenvalue equals sn'/sn, so the
  // k-frame sum attains the bound exactly
  {
    const int n = std::max(cfg.n, 2);
    const double c = cfg.c;
    const double rtop = c > 0.0 ? 0.85 * comparison::domain_end(2.0 * c) : 2.0;
    for (double r : geodesic::linear_grid(0.1, rtop, 12)) {
      const auto sh = geodesic::spaceform_complex_hessian(n, c, r, r / 400.0);
      const int k = std::min(cfg.k, n - 1);
      const double actual = k * sh.normal;
      const double bound = k * comparison::snlog(0.5 * c, r);
      if (std::abs(actual - bound) > 1e-6) {
        ++failures;
        out << "FAIL khessian spaceform r=" << detail::fmt(r)
            << " gap=" << detail::fmt(bound - actual) << "\n";
      }
    }
  }
  // product model at c = 0 (the operator is 0-semipositive): strict at
  // generic mixes
  {
    const int n = 3, k = std::min(std::max(cfg.k, 1), 2);
    const auto grid = geodesic::linear_grid(0.2, 1.4, 10);
    const auto rep = geodesic::k_hessian_product_sweep(n, n + 1.0, 0.0, k, grid, cfg.mixes,
                                                       cfg.seed, cfg.tol);
    if (rep.violations != 0) {
      ++failures;
      out << "FAIL khessian product violations=" << rep.violations
          << " min_gap=" << detail::fmt(rep.min_gap) << " seed=" << cfg.seed << "\n";
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << ": k-hessian comparison\n";
  return failures == 0 ? 0 : 1;
}

inline int check_diam(const RunConfig& cfg, std::ostream& out) {
  (void)cfg;
  int failures = 0;
  const auto d1 = comparison::diam_constants(1, 1.0);
  const double cpn_diam = comparison::kPi / std::sqrt(2.0);
  if (std::abs(d1.bound - cpn_diam) > 1e-12) ++failures;
  out << "diam k=1 c=1: nu=" << detail::fmt(d1.nu) << " bound=" << detail::fmt(d1.bound)
      << " (model diameter " << detail::fmt(cpn_diam) << ")\n";

  const auto d2 = comparison::diam_constants(2, 0.75);
  const double product_diam = comparison::kPi * std::sqrt(2.0 / 3.0);
  if (!(product_diam <= d2.bound + 1e-12)) ++failures;
  if (std::abs(d2.nu - 0.6) > 1e-12) ++failures;
  out << "diam k=2 c=3/4: nu=" << detail::fmt(d2.nu) << " bound=" << detail::fmt(d2.bound)
      << " >= product diameter " << detail::fmt(product_diam) << "\n";
  out << (failures == 0 ? "PASS" : "FAIL") << ": diameter constants\n";
  return failures == 0 ? 0 : 1;
}

// Reproduces the failure of the naive model comparison on the product
// manifold: a positive violation at every radius is the expected outcome, so
// exit 0 means "violation reproduced".
inline int check_example52(const RunConfig& cfg, std::ostream& out) {
  const double top = comparison::kPi / std::sqrt(2.0) - 0.01;
  const auto grid = cfg.grid_set ? geodesic::linear_grid(cfg.grid.a, cfg.grid.b, cfg.grid.count)
                                 : geodesic::linear_grid(0.01, top, 1000);
  int nonpositive = 0;
  double first_bad = 0.0;
  for (double r : grid)
    if (!(series::g_eval_closed(r) > 0.0)) {
      if (nonpositive == 0) first_bad = r;
      ++nonpositive;
    }

  const auto coeffs = series::g_coefficients(100);
  bool signs_ok = coeffs.coeffs[0] == numkit::BigRational(0) &&
                  coeffs.coeffs[1] == numkit::BigRational(0);
  for (int k = 3; k <= 100; ++k)
    if (!(coeffs.coeffs[k - 1] > numkit::BigRational(0))) signs_ok = false;

  int series_fail = 0;
  for (double r : geodesic::linear_grid(0.05, top, 25)) {
    const auto se = series::g_eval_series(r, cfg.order);
    if (std::abs(se.value - series::g_eval_closed(r)) > se.remainder_bound) ++series_fail;
  }

  const bool reproduced = nonpositive == 0 && signs_ok && series_fail == 0;
  out << "example52: grid points " << grid.size() << ", non-positive g values " << nonpositive;
  if (nonpositive > 0) out << " (first at r=" << detail::fmt(first_bad) << ")";
  out << ", exact coefficient signs " << (signs_ok ? "ok" : "WRONG") << ", series checks failed "
      << series_fail << "\n";
  out << (reproduced ? "PASS" : "FAIL")
      << ": naive model bound violated on the product manifold (expected)\n";
  return reproduced ? 0 : 1;
}

inline int check_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto grid = geodesic::linear_grid(cfg.grid.a, cfg.grid.b, cfg.grid.count);
  geodesic::SweepReport rep;
  if (cfg.model == "cpn") {
    rep = geodesic::sweep_spaceform(cfg.n, cfg.c, cfg.c, grid, cfg.tol);
  } else if (cfg.model == "product-cp1") {
    if (cfg.bound == "kahler") {
      // hypothesis check for the named bound constant
      const std::vector<double> h(cfg.n, cfg.n + 1.0);
      const double min_hsc = curvature::product_min_hsc(h);
      const double ric = cfg.n + 1.0;
      rep.hypothesis_ok = min_hsc >= 2.0 * cfg.c - 1e-12 && ric >= (cfg.n + 1) * cfg.c - 1e-12;
      rep.note = "min HSC " + detail::fmt(min_hsc) + ", Ric " + detail::fmt(ric);
      auto swept = geodesic::sweep_product_cp1(cfg.n, cfg.n + 1.0, cfg.c, grid, cfg.mixes,
                                               cfg.seed, cfg.tol);
      swept.hypothesis_ok = rep.hypothesis_ok;
      swept.note = rep.note;
      rep = swept;
    } else if (cfg.bound == "riemannian") {
      auto swept = geodesic::sweep_product_cp1(cfg.n, cfg.n + 1.0, cfg.c, grid, cfg.mixes,
                                               cfg.seed, cfg.tol);
      for (auto& row : swept.rows) {
        row.bound = comparison::riemannian_model_laplacian(
            2.0 * cfg.n, (cfg.n + 1.0) / (2.0 * cfg.n - 1.0), row.r);
        row.gap = row.bound - row.actual;
      }
      swept.violations = 0;
      swept.min_gap = swept.rows.empty() ? 0.0 : swept.rows.front().gap;
      for (const auto& row : swept.rows) {
        swept.min_gap = std::min(swept.min_gap, row.gap);
        if (row.gap < -cfg.tol) ++swept.violations;
      }
      rep = swept;
    } else {
      err << "sweep: unknown bound '" << cfg.bound << "' (kahler, riemannian)\n";
      return 2;
    }
  } else {
    err << "sweep: unsupported model '" << cfg.model << "'\n";
    return 2;
  }

  detail::Output o(out, cfg.out_path);
  std::vector<std::vector<double>> rows;
  for (const auto& row : rep.rows) rows.push_back({row.r, row.actual, row.bound, row.gap});
  detail::emit_rows(o.stream(), cfg.format, {"r", "actual", "bound", "gap"}, rows);
  if (!rep.hypothesis_ok) {
    err << "sweep: hypothesis check failed (" << rep.note << ")\n";
    return 1;
  }
  return rep.violations == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// series

inline int run_series(const RunConfig& cfg, std::ostream& out) {
  detail::Output o(out, cfg.out_path);
  std::ostream& os = o.stream();
  const int K = cfg.order;
  const auto s = series::g_coefficients(K);
  bool positive = true;
  os << "k,T_k,c_k,c_k_decimal\n";
  for (int k = 1; k <= K; ++k) {
    const auto t = series::bracket(k);
    const auto& c = s.coeffs[k - 1];
    if (k >= 3 && !(c > numkit::BigRational(0))) positive = false;
    os << k << "," << t.str() << "," << c.str() << "," << detail::fmt(c.to_double()) << "\n";
  }
  os << "verdict: " << (positive ? "all nonzero terms positive (k >= 3)" : "SIGN VIOLATION")
     << "\n";
  if (cfg.eval_r) {
    const double r = *cfg.eval_r;
    const auto se = series::g_eval_series(r, K);
    const double closed = series::g_eval_closed(r);
    os << "g_series(" << detail::fmt(r) << ") = " << detail::fmt(se.value) << "\n";
    os << "g_closed(" << detail::fmt(r) << ") = " << detail::fmt(closed) << "\n";
    os << "gap = " << detail::fmt(se.value - closed)
       << " remainder_bound = " << detail::fmt(se.remainder_bound) << "\n";
    if (!(std::abs(se.value - closed) <= se.remainder_bound)) return 1;
  }
  return positive ? 0 : 1;
}

// ---------------------------------------------------------------------------
// entry point

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"kgeo: numerical checks for Kahler comparison geometry"};
  app.require_subcommand(1);

  std::string grid_str, mix_str;
  double eval_r = -1.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "model name (cpn, hyperquadric, product-cp1)");
    sub->add_option("--n", cfg.n, "complex dimension");
    sub->add_option("--c", cfg.c, "curvature constant");
    sub->add_option("--k", cfg.k, "eigenvalue count k");
    sub->add_option("--grid", grid_str, "radius grid a:b:count");
    sub->add_option("--mix", mix_str, "direction mix lambda_1,...,lambda_m");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tol, "inequality tolerance");
    sub->add_option("--trials", cfg.trials, "trial count");
    sub->add_option("--frames", cfg.frames, "frames per trial");
    sub->add_option("--mixes", cfg.mixes, "random mixes per radius");
    sub->add_option("--out", cfg.out_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "output format (csv, json)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "operator spectrum of a catalog model");
  add_common(spectrum);
  spectrum->add_flag("--dump", cfg.dump, "dump the curvature tensor as JSON");

  CLI::App* laplacian = app.add_subcommand("laplacian", "model Laplacian against the comparison bound");
  add_common(laplacian);

  CLI::App* volume = app.add_subcommand("volume", "ball volumes against the model");
  add_common(volume);

  CLI::App* check = app.add_subcommand("check", "run a named check suite");
  add_common(check);
  check->add_option("what", cfg.what, "lemma31|thm21|product|khessian|diam|example52|sweep")
      ->required();
  check->add_option("--bound", cfg.bound, "bound name for sweep (kahler, riemannian)");

  CLI::App* seriescmd = app.add_subcommand("series", "Bernoulli series of the example");
  add_common(seriescmd);
  seriescmd->add_option("--K", cfg.order, "truncation order");
  seriescmd->add_option("--eval", eval_r, "evaluate both forms at r");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  cfg.n_set = check->count("--n") > 0 || spectrum->count("--n") > 0 ||
              laplacian->count("--n") > 0 || volume->count("--n") > 0;
  cfg.k_set = check->count("--k") > 0;
  if (!grid_str.empty()) {
    if (!detail::parse_grid(grid_str, cfg.grid)) {
      err << "usage error: --grid expects a:b:count with count >= 2 and b > a\n";
      return 2;
    }
    cfg.grid_set = true;
  }
  if (!mix_str.empty() && !detail::parse_mix(mix_str, cfg.mix)) {
    err << "usage error: --mix expects comma-separated numbers\n";
    return 2;
  }
  if (eval_r > 0.0) cfg.eval_r = eval_r;
  if (!(cfg.tol > 0.0)) {
    err << "usage error: --tol must be positive\n";
    return 2;
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    err << "usage error: --format must be csv or json\n";
    return 2;
  }

  const bool needs_model = spectrum->parsed() || laplacian->parsed() || volume->parsed();
  if (needs_model) {
    bool known = false;
    for (const auto& name : catalog::names()) known = known || name == cfg.model;
    if (!known) {
      err << "unknown model '" << cfg.model << "'; available models:";
      for (const auto& name : catalog::names()) err << " " << name;
      err << "\n";
      return 2;
    }
  }

  try {
    if (spectrum->parsed()) {
      cfg.subcommand = "spectrum";
      return run_spectrum(cfg, out, err);
    }
    if (laplacian->parsed()) {
      cfg.subcommand = "laplacian";
      return run_laplacian(cfg, out, err);
    }
    if (volume->parsed()) {
      cfg.subcommand = "volume";
      return run_volume(cfg, out, err);
    }
    if (seriescmd->parsed()) {
      cfg.subcommand = "series";
      return run_series(cfg, out);
    }
    if (check->parsed()) {
      cfg.subcommand = "check";
      if (cfg.what == "lemma31") return check_lemma31(cfg, out);
      if (cfg.what == "thm21") return check_thm21(cfg, out);
      if (cfg.what == "product") return check_product(cfg, out);
      if (cfg.what == "khessian") return check_khessian(cfg, out);
      if (cfg.what == "diam") return check_diam(cfg, out);
      if (cfg.what == "example52") return check_example52(cfg, out);
      if (cfg.what == "sweep") return check_sweep(cfg, out, err);
      err << "unknown check '" << cfg.what
          << "' (lemma31, thm21, product, khessian, diam, example52, sweep)\n";
      return 2;
    }
  } catch (const std::domain_error& e) {
    err << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace kgeo::cli
