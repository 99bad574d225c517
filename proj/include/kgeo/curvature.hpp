#pragma once

// Kahler curvature tensors in a fixed unitary frame, pointwise curvature
// queries, and the catalog of model geometries with closed-form radial data.
//
// Storage convention: comp(i,j,k,l) holds the component R_{i jbar k lbar}.
// Valid tensors satisfy the pair symmetries
//     comp(i,j,k,l) = comp(k,j,i,l) = comp(i,l,k,j)
// and the Hermitian reality comp(i,j,k,l) = conj(comp(j,i,l,k)).
//
// Normalization is pinned by three simultaneous anchors on CP^n with the
// Fubini-Study metric: Ric = (n+1) id, HSC = 2 and a symmetrized curvature
// operator equal to 2 id. Constant-HBSC-c space forms then read
// comp(i,j,k,l) = c (delta_ij delta_kl + delta_il delta_kj).

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kgeo/cmatrix.hpp"

namespace kgeo::curvature {

using numkit::CMatrix;
using numkit::cdouble;

class KahlerCurvature {
 public:
  explicit KahlerCurvature(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("KahlerCurvature: dimension must be >= 1");
    comp_.assign(static_cast<std::size_t>(n) * n * n * n, cdouble(0.0, 0.0));
  }

  int dim() const { return n_; }

  cdouble& at(int i, int j, int k, int l) { return comp_[idx(i, j, k, l)]; }
  const cdouble& at(int i, int j, int k, int l) const { return comp_[idx(i, j, k, l)]; }

  const std::vector<cdouble>& raw() const { return comp_; }

  // Writes one value into all four index positions tied by the pair
  // symmetries plus their Hermitian mirrors, so stored symmetry is exact.
  void set_sym(int i, int j, int k, int l, cdouble v) {
    at(i, j, k, l) = v;
    at(k, j, i, l) = v;
    at(i, l, k, j) = v;
    at(k, l, i, j) = v;
    const cdouble w = std::conj(v);
    at(j, i, l, k) = w;
    at(j, k, l, i) = w;
    at(l, i, j, k) = w;
    at(l, k, j, i) = w;
  }

 private:
  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  int n_;
  std::vector<cdouble> comp_;
};

inline double symmetry_defect(const KahlerCurvature& r) {
  const int n = r.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cdouble v = r.at(i, j, k, l);
          worst = std::max(worst, std::abs(v - r.at(k, j, i, l)));
          worst = std::max(worst, std::abs(v - r.at(i, l, k, j)));
          worst = std::max(worst, std::abs(v - std::conj(r.at(j, i, l, k))));
        }
  return worst;
}

inline void validate_symmetries(const KahlerCurvature& r, double rel_tol = 1e-9) {
  double scale = 0.0;
  for (const auto& v : r.raw()) scale = std::max(scale, std::abs(v));
  if (symmetry_defect(r) > rel_tol * (1.0 + scale))
    throw std::invalid_argument("KahlerCurvature: tensor violates Kahler symmetries");
}

inline KahlerCurvature const_hbsc(int n, double c) {
  KahlerCurvature r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = c * ((i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0));
          r.at(i, j, k, l) = v;
        }
  return r;
}

// Hyperquadric in CP^{n+1} with the induced metric. The frame form below is
// calibrated against the known operator spectrum {2-n, 2, ..., 2} and the
// Einstein constant n; the spectrum check lives in the test suite as a gate.
inline KahlerCurvature hyperquadric(int n) {
  if (n < 2) throw std::invalid_argument("hyperquadric: requires n >= 2");
  KahlerCurvature r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = (i == j && k == l ? 1.0 : 0.0) + (i == l && k == j ? 1.0 : 0.0) -
                           (i == k && j == l ? 1.0 : 0.0);
          r.at(i, j, k, l) = v;
        }
  return r;
}

// Block tensor of a metric product: components vanish unless all four
// indices fall in one factor.
inline KahlerCurvature product(const std::vector<KahlerCurvature>& factors) {
  if (factors.empty()) throw std::invalid_argument("product: needs at least one factor");
  int n = 0;
  for (const auto& f : factors) n += f.dim();
  KahlerCurvature r(n);
  int off = 0;
  for (const auto& f : factors) {
    const int m = f.dim();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          for (int l = 0; l < m; ++l)
            r.at(off + i, off + j, off + k, off + l) = f.at(i, j, k, l);
    off += m;
  }
  return r;
}

// g -> lambda g rescales unitary-frame components by 1/lambda.
inline KahlerCurvature scale_metric(const KahlerCurvature& r, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale_metric: factor must be positive");
  KahlerCurvature out(r.dim());
  const int n = r.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.at(i, j, k, l) = r.at(i, j, k, l) / lambda;
  return out;
}

namespace detail {
inline void check_unit(std::span<const cdouble> x, const char* who) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  if (std::abs(std::sqrt(s) - 1.0) > 1e-8)
    throw std::invalid_argument(std::string(who) + ": vector is not unit length");
}
}  // namespace detail

// R(X, Xbar, Y, Ybar); real for valid tensors.
inline double eval_bisectional(const KahlerCurvature& r, std::span<const cdouble> x,
                               std::span<const cdouble> y) {
  const int n = r.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("eval_bisectional: vector size mismatch");
  // Contract the (i, jbar) slots with X first, then the (k, lbar) slots.
  cdouble acc(0.0, 0.0);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cdouble b(0.0, 0.0);
      for (int i = 0; i < n; ++i) {
        if (x[i] == cdouble(0.0, 0.0)) continue;
        for (int j = 0; j < n; ++j) b += r.at(i, j, k, l) * x[i] * std::conj(x[j]);
      }
      acc += b * y[k] * std::conj(y[l]);
    }
  return std::real(acc);
}

inline double hsc(const KahlerCurvature& r, std::span<const cdouble> x) {
  detail::check_unit(x, "hsc");
  return eval_bisectional(r, x, x);
}

inline double hbsc(const KahlerCurvature& r, std::span<const cdouble> x,
                   std::span<const cdouble> y) {
  detail::check_unit(x, "hbsc");
  detail::check_unit(y, "hbsc");
  return eval_bisectional(r, x, y);
}

inline CMatrix ricci_matrix(const KahlerCurvature& r) {
  const int n = r.dim();
  CMatrix ric(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cdouble s(0.0, 0.0);
      for (int k = 0; k < n; ++k) s += r.at(i, j, k, k);
      ric(i, j) = s;
    }
  return ric;
}

inline double ricci_min_eigenvalue(const KahlerCurvature& r) {
  return numkit::hermitian_eigen(ricci_matrix(r)).values.front();
}

// Frame change E~_a = sum_i U(i,a) E_i, one index contracted per stage.
inline KahlerCurvature rotate_frame(const KahlerCurvature& r, const CMatrix& u) {
  const int n = r.dim();
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("rotate_frame: frame size mismatch");
  auto contract = [n](const std::vector<cdouble>& src, const CMatrix& m, bool conjugate,
                      int slot) {
    std::vector<cdouble> dst(src.size(), cdouble(0.0, 0.0));
    const int stride[4] = {n * n * n, n * n, n, 1};
    for (int a = 0; a < n; ++a)
      for (int s = 0; s < n; ++s) {
        const cdouble w = conjugate ? std::conj(m(s, a)) : m(s, a);
        if (w == cdouble(0.0, 0.0)) continue;
        // run over the complement of `slot`
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int t = 0; t < n; ++t) {
              int rest[3] = {p, q, t};
              std::size_t from = 0, to = 0;
              int ri = 0;
              for (int pos = 0; pos < 4; ++pos) {
                if (pos == slot) {
                  from += static_cast<std::size_t>(s) * stride[pos];
                  to += static_cast<std::size_t>(a) * stride[pos];
                } else {
                  from += static_cast<std::size_t>(rest[ri]) * stride[pos];
                  to += static_cast<std::size_t>(rest[ri]) * stride[pos];
                  ++ri;
                }
              }
              dst[to] += w * src[from];
            }
      }
    return dst;
  };

  std::vector<cdouble> work = r.raw();
  work = contract(work, u, false, 0);
  work = contract(work, u, true, 1);
  work = contract(work, u, false, 2);
  work = contract(work, u, true, 3);

  KahlerCurvature out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.at(i, j, k, l) =
              work[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  return out;
}

// ---------------------------------------------------------------------------
// Model catalog

struct ModelSpace {
  enum class Kind { SpaceForm, Hyperquadric, Product, Scaled };

  Kind kind = Kind::SpaceForm;
  int n = 1;          // total complex dimension
  double c = 0.0;     // SpaceForm: constant HBSC
  double lambda = 1;  // Scaled: metric factor
  std::vector<ModelSpace> children;

  static ModelSpace space_form(int n, double c) {
    ModelSpace m;
    m.kind = Kind::SpaceForm;
    m.n = n;
    m.c = c;
    return m;
  }

  static ModelSpace hyperquadric(int n) {
    ModelSpace m;
    m.kind = Kind::Hyperquadric;
    m.n = n;
    return m;
  }

  static ModelSpace product(std::vector<ModelSpace> factors) {
    if (factors.empty()) throw std::invalid_argument("ModelSpace::product: no factors");
    ModelSpace m;
    m.kind = Kind::Product;
    m.n = 0;
    for (const auto& f : factors) m.n += f.n;
    m.children = std::move(factors);
    return m;
  }

  static ModelSpace scaled(ModelSpace base, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("ModelSpace::scaled: factor must be positive");
    ModelSpace m;
    m.kind = Kind::Scaled;
    m.n = base.n;
    m.lambda = lambda;
    m.children.push_back(std::move(base));
    return m;
  }
};

inline KahlerCurvature to_curvature(const ModelSpace& m) {
  switch (m.kind) {
    case ModelSpace::Kind::SpaceForm:
      return const_hbsc(m.n, m.c);
    case ModelSpace::Kind::Hyperquadric:
      return hyperquadric(m.n);
    case ModelSpace::Kind::Product: {
      std::vector<KahlerCurvature> fs;
      fs.reserve(m.children.size());
      for (const auto& f : m.children) fs.push_back(to_curvature(f));
      return product(fs);
    }
    case ModelSpace::Kind::Scaled:
      return scale_metric(to_curvature(m.children.front()), m.lambda);
  }
  throw std::logic_error("to_curvature: unreachable");
}

// Collapses Scaled wrappers: scaling a constant-HBSC-c factor by lambda
// yields constant HBSC c/lambda.
inline ModelSpace normalize_model(const ModelSpace& m) {
  switch (m.kind) {
    case ModelSpace::Kind::SpaceForm:
    case ModelSpace::Kind::Hyperquadric:
      return m;
    case ModelSpace::Kind::Product: {
      std::vector<ModelSpace> fs;
      fs.reserve(m.children.size());
      for (const auto& f : m.children) fs.push_back(normalize_model(f));
      return ModelSpace::product(std::move(fs));
    }
    case ModelSpace::Kind::Scaled: {
      ModelSpace base = normalize_model(m.children.front());
      if (base.kind == ModelSpace::Kind::SpaceForm)
        return ModelSpace::space_form(base.n, base.c / m.lambda);
      if (base.kind == ModelSpace::Kind::Product) {
        std::vector<ModelSpace> fs;
        for (auto& f : base.children) fs.push_back(normalize_model(ModelSpace::scaled(f, m.lambda)));
        return ModelSpace::product(std::move(fs));
      }
      ModelSpace out = m;
      out.children = {std::move(base)};
      return out;
    }
  }
  throw std::logic_error("normalize_model: unreachable");
}

// Radial curvature eigenvalues along a unit-speed geodesic, as
// (multiplicity, constant sectional curvature) blocks over the 2n-1 normal
// directions. For space forms the leading block is the J gamma' direction.
struct RadialProfile {
  int n = 1;  // complex dimension
  std::vector<std::pair<int, double>> entries;

  int dim() const { return 2 * n - 1; }

  int multiplicity_sum() const {
    int s = 0;
    for (const auto& [m, k] : entries) s += m;
    return s;
  }
};

inline RadialProfile radial_profile(const ModelSpace& model) {
  const ModelSpace m = normalize_model(model);
  if (m.kind != ModelSpace::Kind::SpaceForm)
    throw std::invalid_argument("radial_profile: closed-form profile needs a space form (pass a "
                                "direction mix for products)");
  RadialProfile p;
  p.n = m.n;
  p.entries.push_back({1, 2.0 * m.c});
  if (m.n > 1) p.entries.push_back({2 * m.n - 2, 0.5 * m.c});
  return p;
}

// Product of complex-1-dimensional constant-curvature factors entered with a
// geodesic direction mix (lambda_1, ..., lambda_m), sum of squares 1. Factor
// i contributes its J-direction with curvature h_i lambda_i^2, h_i the factor
// HSC; the remaining m-1 normal directions are flat.
inline RadialProfile radial_profile(const ModelSpace& model, std::span<const double> mix) {
  const ModelSpace m = normalize_model(model);
  if (m.kind == ModelSpace::Kind::Hyperquadric)
    throw std::invalid_argument("radial_profile: hyperquadric geodesics are unsupported");
  if (m.kind != ModelSpace::Kind::Product)
    throw std::invalid_argument("radial_profile: direction mix only applies to products");
  if (mix.size() != m.children.size())
    throw std::invalid_argument("radial_profile: mix length must match factor count");
  double s2 = 0.0;
  for (double v : mix) s2 += v * v;
  if (std::abs(s2 - 1.0) > 1e-8)
    throw std::invalid_argument("radial_profile: mix must have unit square sum");

  RadialProfile p;
  p.n = m.n;
  for (std::size_t i = 0; i < m.children.size(); ++i) {
    const ModelSpace& f = m.children[i];
    if (f.kind != ModelSpace::Kind::SpaceForm || f.n != 1)
      throw std::invalid_argument("radial_profile: product factors must be 1-dimensional space forms");
    const double h = 2.0 * f.c;  // factor HSC
    p.entries.push_back({1, h * mix[i] * mix[i]});
  }
  if (m.n > 1) p.entries.push_back({static_cast<int>(m.n) - 1, 0.0});
  return p;
}

inline std::vector<double> factor_hscs(const ModelSpace& model) {
  const ModelSpace m = normalize_model(model);
  if (m.kind != ModelSpace::Kind::Product)
    throw std::invalid_argument("factor_hscs: needs a product model");
  std::vector<double> h;
  for (const auto& f : m.children) {
    if (f.kind != ModelSpace::Kind::SpaceForm || f.n != 1)
      throw std::invalid_argument("factor_hscs: product factors must be 1-dimensional space forms");
    h.push_back(2.0 * f.c);
  }
  return h;
}

// Minimum holomorphic sectional curvature over unit (1,0) directions of a
// product of 1-dimensional factors: HSC(X) = sum h_i |X_i|^4 minimized at
// |X_i|^2 proportional to 1/h_i.
inline double product_min_hsc(std::span<const double> h) {
  double inv = 0.0;
  for (double v : h) {
    if (!(v > 0.0)) throw std::invalid_argument("product_min_hsc: factor HSCs must be positive");
    inv += 1.0 / v;
  }
  return 1.0 / inv;
}

}  // namespace kgeo::curvature
