#pragma once

// The symmetrized curvature operator on Sym^2 T^{1,0}: orthonormal basis of
// weighted symmetric pairs, matrix assembly from a curvature tensor,
// k-positivity tests, Ky Fan partial traces, and the frame inequalities the
// comparison theorems rest on.
//
// Basis convention: diagonal elements E_i (x) E_i with weight 1 and, for
// i < k, (E_i (x) E_k + E_k (x) E_i)/sqrt(2); orthonormal under the tensor
// inner product, so the operator matrix is Hermitian and its eigenvalues are
// exactly the lambda_1 <= ... <= lambda_N entering k-positivity.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kgeo/cmatrix.hpp"
#include "kgeo/curvature.hpp"

namespace kgeo::symop {

using curvature::KahlerCurvature;
using numkit::CMatrix;
using numkit::cdouble;

struct PreconditionUnmet : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SymBasis {
  int n = 0;
  int N = 0;
  std::vector<std::pair<int, int>> pairs;  // (i, k) with i <= k

  explicit SymBasis(int n_) : n(n_), N(n_ * (n_ + 1) / 2) {
    pairs.reserve(N);
    for (int i = 0; i < n; ++i)
      for (int k = i; k < n; ++k) pairs.push_back({i, k});
  }

  int index(int i, int k) const {
    if (i > k) std::swap(i, k);
    // pairs are listed row by row: (0,0)..(0,n-1), (1,1)..(1,n-1), ...
    return i * n - i * (i - 1) / 2 + (k - i);
  }

  double weight(int i, int k) const { return i == k ? 1.0 : 1.0 / std::sqrt(2.0); }
};

struct SymOperator {
  int n = 0;
  int N = 0;
  CMatrix mat;
  std::vector<double> spectrum;  // ascending
  CMatrix eigvecs;

  double spectral_norm() const {
    double m = 0.0;
    for (double v : spectrum) m = std::max(m, std::abs(v));
    return m;
  }
};

inline SymOperator build(const KahlerCurvature& rc) {
  curvature::validate_symmetries(rc);
  const int n = rc.dim();
  const SymBasis basis(n);

  SymOperator op;
  op.n = n;
  op.N = basis.N;
  op.mat = CMatrix(basis.N, basis.N);

  // mat(a, b) = sum R_{i jbar k lbar} a^{ik} conj(b^{jl}) over the weighted
  // symmetric expansions of the two basis elements.
  for (int a = 0; a < basis.N; ++a) {
    const auto [i, k] = basis.pairs[a];
    const double wa = basis.weight(i, k);
    for (int b = 0; b < basis.N; ++b) {
      const auto [j, l] = basis.pairs[b];
      const double wb = basis.weight(j, l);
      cdouble v(0.0, 0.0);
      v += rc.at(i, j, k, l);
      if (j != l) v += rc.at(i, l, k, j);
      if (i != k) {
        v += rc.at(k, j, i, l);
        if (j != l) v += rc.at(k, l, i, j);
      }
      op.mat(a, b) = v * wa * wb;
    }
  }
  // exact Hermitization before the eigensolve
  for (int a = 0; a < basis.N; ++a) {
    op.mat(a, a) = cdouble(std::real(op.mat(a, a)), 0.0);
    for (int b = a + 1; b < basis.N; ++b) {
      const cdouble v = 0.5 * (op.mat(a, b) + std::conj(op.mat(b, a)));
      op.mat(a, b) = v;
      op.mat(b, a) = std::conj(v);
    }
  }

  auto eig = numkit::hermitian_eigen(op.mat);
  op.spectrum = std::move(eig.values);
  op.eigvecs = std::move(eig.vectors);
  return op;
}

inline double k_sum(const SymOperator& op, int k) {
  if (k < 1 || k > op.N) throw std::invalid_argument("k_sum: k out of range");
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += op.spectrum[i];
  return s;
}

// Tolerance policy: every inequality check uses 1e-10 * (1 + max |entries|).
inline double default_tol(const SymOperator& op) { return 1e-10 * (1.0 + op.mat.max_abs()); }

inline bool is_k_semipositive(const SymOperator& op, double c, int k) {
  if (k < 1 || k > op.N) throw std::invalid_argument("is_k_semipositive: k out of range");
  return k_sum(op, k) - 2.0 * c * k >= -default_tol(op);
}

inline bool is_k_semipositive(const KahlerCurvature& rc, double c, int k) {
  return is_k_semipositive(build(rc), c, k);
}

// Ky Fan minimum principle: the minimum of sum <A e_s, e_s> over orthonormal
// k-frames equals the sum of the k smallest eigenvalues.
inline double kyfan_min(const CMatrix& a, int k) {
  if (a.rows() != a.cols()) throw std::invalid_argument("kyfan_min: matrix must be square");
  if (k < 1 || k > a.rows()) throw std::invalid_argument("kyfan_min: k out of range");
  const auto eig = numkit::hermitian_eigen(a);
  double s = 0.0;
  for (int i = 0; i < k; ++i) s += eig.values[i];
  return s;
}

// sum <A e_s, e_s> for the first k columns of `frame`.
inline double frame_partial_trace(const CMatrix& a, const CMatrix& frame, int k) {
  const int n = a.rows();
  double s = 0.0;
  for (int col = 0; col < k; ++col) {
    cdouble acc(0.0, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += std::conj(frame(i, col)) * a(i, j) * frame(j, col);
    s += std::real(acc);
  }
  return s;
}

namespace detail {

// Values R(E_n, E_n bar, E_a, E_a bar) for every frame column a, with E_n the
// last column. One O(n^4) pass for the E_n contraction, then O(n^2) per a.
inline std::vector<double> mixed_values(const KahlerCurvature& rc, const CMatrix& frame) {
  const int n = rc.dim();
  if (frame.rows() != n || frame.cols() != n)
    throw std::invalid_argument("mixed_values: frame size mismatch");
  const std::vector<cdouble> x = frame.col(n - 1);
  std::vector<cdouble> b(static_cast<std::size_t>(n) * n, cdouble(0.0, 0.0));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cdouble acc(0.0, 0.0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += rc.at(i, j, k, l) * x[i] * std::conj(x[j]);
      b[static_cast<std::size_t>(k) * n + l] = acc;
    }
  std::vector<double> out(n, 0.0);
  for (int a = 0; a < n; ++a) {
    cdouble acc(0.0, 0.0);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        acc += b[static_cast<std::size_t>(k) * n + l] * frame(k, a) * std::conj(frame(l, a));
    out[a] = std::real(acc);
  }
  return out;
}

}  // namespace detail

struct MixedEstimateResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

// R(E_n,En,En,En) + alpha sum_{i<n} R(E_n,En,E_i,E_i) >= 2c + alpha(n-1)c,
// valid whenever the operator minus 2c id is k-semipositive and
// alpha >= 2(k-1)/(n-1).
inline MixedEstimateResult mixed_estimate_check(const KahlerCurvature& rc, double c, int k,
                                                double alpha, const CMatrix& frame) {
  const int n = rc.dim();
  if (k < 1 || k >= n) throw PreconditionUnmet("mixed_estimate_check: requires 1 <= k < n");
  const double alpha_min = 2.0 * (k - 1) / static_cast<double>(n - 1);
  if (alpha < alpha_min - 1e-12)
    throw PreconditionUnmet("mixed_estimate_check: alpha below 2(k-1)/(n-1)");
  const SymOperator op = build(rc);
  if (!is_k_semipositive(op, c, k))
    throw PreconditionUnmet("mixed_estimate_check: operator minus 2c id is not k-semipositive");

  const auto vals = detail::mixed_values(rc, frame);
  MixedEstimateResult res;
  res.lhs = vals[n - 1];
  for (int i = 0; i < n - 1; ++i) res.lhs += alpha * vals[i];
  res.rhs = 2.0 * c + alpha * (n - 1) * c;
  const double tol = default_tol(op) * (1.0 + alpha * (n - 1));
  res.holds = res.lhs >= res.rhs - tol;
  return res;
}

// k-semipositivity of the operator minus 2c id with k <= (n+1)/2 forces
// Ric >= (n+1) c.
inline bool ricci_from_kpos_check(const KahlerCurvature& rc, double c, int k) {
  const int n = rc.dim();
  if (2 * k > n + 1) throw PreconditionUnmet("ricci_from_kpos_check: requires k <= (n+1)/2");
  const SymOperator op = build(rc);
  if (!is_k_semipositive(op, c, k))
    throw PreconditionUnmet("ricci_from_kpos_check: operator minus 2c id is not k-semipositive");
  const double tol = 1e-9 * (1.0 + op.mat.max_abs()) * n;
  return curvature::ricci_min_eigenvalue(rc) >= (n + 1) * c - tol;
}

struct WeightedFrameResult {
  double lhs = 0.0;
  bool holds = false;
};

// R(E_n,En,En,En) + 2 sum_{i=1}^{k-1} R(E_n,En,E_i,E_i) >= 2kc; the diameter
// theorem runs through this combination.
inline WeightedFrameResult weighted_frame_check(const KahlerCurvature& rc, double c, int k,
                                                const CMatrix& frame) {
  const int n = rc.dim();
  if (k < 1 || k > n) throw PreconditionUnmet("weighted_frame_check: requires 1 <= k <= n");
  const SymOperator op = build(rc);
  if (!is_k_semipositive(op, c, k))
    throw PreconditionUnmet("weighted_frame_check: operator minus 2c id is not k-semipositive");
  const auto vals = detail::mixed_values(rc, frame);
  WeightedFrameResult res;
  res.lhs = vals[n - 1];
  for (int i = 0; i < k - 1; ++i) res.lhs += 2.0 * vals[i];
  const double tol = default_tol(op) * (1.0 + 2.0 * k);
  res.holds = res.lhs >= 2.0 * k * c - tol;
  return res;
}

// Inverse of the basis map: curvature tensors with the Kahler symmetries and
// Hermitian forms on Sym^2 are in bijection, with comp = w_a w_b Q(a, b) on
// canonical index pairs.
inline KahlerCurvature tensor_from_sym_form(const CMatrix& q) {
  int n = 0;
  while (n * (n + 1) / 2 < q.rows()) ++n;
  if (n * (n + 1) / 2 != q.rows() || q.rows() != q.cols())
    throw std::invalid_argument("tensor_from_sym_form: size is not a triangular number");
  if (!q.is_hermitian(1e-12))
    throw std::invalid_argument("tensor_from_sym_form: form must be Hermitian");
  const SymBasis basis(n);
  // exact hermitization first, so mirrored writes below agree bit for bit
  CMatrix qh(basis.N, basis.N);
  for (int a = 0; a < basis.N; ++a) {
    qh(a, a) = cdouble(std::real(q(a, a)), 0.0);
    for (int b = a + 1; b < basis.N; ++b) {
      const cdouble v = 0.5 * (q(a, b) + std::conj(q(b, a)));
      qh(a, b) = v;
      qh(b, a) = std::conj(v);
    }
  }
  KahlerCurvature rc(n);
  for (int a = 0; a < basis.N; ++a) {
    const auto [i, k] = basis.pairs[a];
    for (int b = 0; b < basis.N; ++b) {
      const auto [j, l] = basis.pairs[b];
      const double w = basis.weight(i, k) * basis.weight(j, l);
      rc.set_sym(i, j, k, l, qh(a, b) * w);
    }
  }
  return rc;
}

// Random tensor with the Kahler symmetries: unitary conjugation of a random
// real diagonal on Sym^2, pulled back through the basis map.
inline KahlerCurvature random_kahler_curvature(int n, std::uint64_t seed) {
  const SymBasis basis(n);
  numkit::SeededRng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const CMatrix u = numkit::random_unitary(basis.N, seed);
  std::vector<double> diag(basis.N);
  for (auto& d : diag) d = 2.0 * rng.uniform() - 1.0;

  CMatrix q(basis.N, basis.N);
  for (int a = 0; a < basis.N; ++a)
    for (int b = 0; b < basis.N; ++b) {
      cdouble acc(0.0, 0.0);
      for (int s = 0; s < basis.N; ++s) acc += u(a, s) * diag[s] * std::conj(u(b, s));
      q(a, b) = acc;
    }
  return tensor_from_sym_form(q);
}

// Adds beta * (const HBSC 1 tensor), shifting the operator by 2 beta id, so
// that the operator minus 2c id becomes exactly k-semipositive (boundary).
inline KahlerCurvature shift_to_k_semipositive(const KahlerCurvature& rc, double c, int k,
                                               double margin = 0.0) {
  const SymOperator op = build(rc);
  const double beta = c - k_sum(op, k) / (2.0 * k) + margin;
  const int n = rc.dim();
  KahlerCurvature out(n);
  const KahlerCurvature base = curvature::const_hbsc(n, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k2 = 0; k2 < n; ++k2)
        for (int l = 0; l < n; ++l)
          out.at(i, j, k2, l) = rc.at(i, j, k2, l) + beta * base.at(i, j, k2, l);
  return out;
}

}  // namespace kgeo::symop
