#pragma once

// Small dense complex-matrix kernel: storage, a cyclic-Jacobi Hermitian
// eigensolver and seeded random unitary frames. Sized for operators up to
// a few hundred rows; no attempt at BLAS-level performance.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace kgeo::numkit {

using cdouble = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("CMatrix: negative dimension");
    a_.assign(static_cast<std::size_t>(rows) * cols, cdouble(0.0, 0.0));
  }

  static CMatrix identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cdouble& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const cdouble& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  CMatrix adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  CMatrix operator*(const CMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("CMatrix: shape mismatch in product");
    CMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const cdouble aik = (*this)(i, k);
        if (aik == cdouble(0.0, 0.0)) continue;
        for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
      }
    return m;
  }

  CMatrix operator+(const CMatrix& o) const {
    CMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }

  CMatrix operator-(const CMatrix& o) const {
    CMatrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }

  CMatrix& operator*=(cdouble s) {
    for (auto& x : a_) x *= s;
    return *this;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : a_) s += std::norm(x);
    return std::sqrt(s);
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  bool is_hermitian(double rel_tol) const {
    if (rows_ != cols_) return false;
    const double tol = rel_tol * (1.0 + max_abs());
    for (int i = 0; i < rows_; ++i)
      for (int j = i; j < cols_; ++j)
        if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
  }

  std::vector<cdouble> col(int j) const {
    std::vector<cdouble> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cdouble> a_;
};

inline cdouble hdot(const std::vector<cdouble>& x, const std::vector<cdouble>& y) {
  cdouble s(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(y[i]) * x[i];
  return s;  // <x, y> = sum x_i conj(y_i)
}

inline double vnorm(const std::vector<cdouble>& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

struct EigenResult {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // unitary, column k pairs with values[k]
};

// Cyclic complex Jacobi diagonalization. Off-diagonal mass decays
// quadratically once sweeps settle; matrices here stay below ~100 rows.
inline EigenResult hermitian_eigen(const CMatrix& input) {
  if (input.rows() != input.cols())
    throw std::invalid_argument("hermitian_eigen: matrix must be square");
  const int n = input.rows();
  if (n == 0) return {{}, CMatrix(0, 0)};
  if (!input.is_hermitian(1e-12))
    throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cdouble(std::real(input(i, i)), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cdouble v = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = 1e-15 * scale * n;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cdouble apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= stop * 1e-2) continue;
        const cdouble phase = apq / g;
        const double alpha = std::real(a(p, p));
        const double beta = std::real(a(q, q));
        const double tau = (beta - alpha) / (2.0 * g);
        const double sgn = (tau >= 0.0) ? 1.0 : -1.0;
        const double t = -sgn / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary block G = [[c*phase, -s*phase], [s, c]] in the (p,q) plane.
        for (int i = 0; i < n; ++i) {  // A <- A G, V <- V G
          const cdouble aip = a(i, p), aiq = a(i, q);
          a(i, p) = aip * (c * phase) + aiq * s;
          a(i, q) = aip * (-s * phase) + aiq * c;
          const cdouble vip = v(i, p), viq = v(i, q);
          v(i, p) = vip * (c * phase) + viq * s;
          v(i, q) = vip * (-s * phase) + viq * c;
        }
        const cdouble cph = std::conj(phase);
        for (int j = 0; j < n; ++j) {  // A <- G^* A
          const cdouble apj = a(p, j), aqj = a(q, j);
          a(p, j) = (c * cph) * apj + s * aqj;
          a(q, j) = (-s * cph) * apj + c * aqj;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cdouble(std::real(a(p, p)), 0.0);
        a(q, q) = cdouble(std::real(a(q, q)), 0.0);
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });

  EigenResult res;
  res.values.resize(n);
  res.vectors = CMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    res.values[k] = std::real(a(order[k], order[k]));
    for (int i = 0; i < n; ++i) res.vectors(i, k) = v(i, order[k]);
  }
  return res;
}

// Deterministic uniform/gaussian draws on top of mt19937_64; the standard
// fixes that engine's output sequence, so seeds reproduce across builds.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    spare_ = m * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return m * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Gram-Schmidt of a seeded complex gaussian matrix, each column phase-fixed
// so its largest-modulus entry is real positive.
inline CMatrix random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  SeededRng rng(seed);
  CMatrix u(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u(i, j) = cdouble(rng.gaussian(), rng.gaussian());

  for (int j = 0; j < n; ++j) {
    std::vector<cdouble> vj = u.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        const std::vector<cdouble> qi = u.col(i);
        const cdouble proj = hdot(vj, qi);
        for (int r = 0; r < n; ++r) vj[r] -= proj * qi[r];
      }
    }
    double nrm = vnorm(vj);
    while (nrm < 1e-8) {  // essentially unreachable for gaussian draws
      for (int r = 0; r < n; ++r) vj[r] = cdouble(rng.gaussian(), rng.gaussian());
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < j; ++i) {
          const std::vector<cdouble> qi = u.col(i);
          const cdouble proj = hdot(vj, qi);
          for (int r = 0; r < n; ++r) vj[r] -= proj * qi[r];
        }
      nrm = vnorm(vj);
    }
    int m = 0;
    for (int r = 1; r < n; ++r)
      if (std::abs(vj[r]) > std::abs(vj[m])) m = r;
    const cdouble ph = std::conj(vj[m]) / std::abs(vj[m]);
    for (int r = 0; r < n; ++r) u(r, j) = vj[r] * (ph / nrm);
  }
  return u;
}

}  // namespace kgeo::numkit
