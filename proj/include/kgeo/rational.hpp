#pragma once

// Exact rational arithmetic on top of boost::multiprecision big integers.
// Values stay canonical: positive denominator, gcd(num, den) = 1.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace kgeo::numkit {

using BigInt = boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

class BigRational {
 public:
  BigRational() : v_(0) {}
  BigRational(long long n) : v_(n) {}  // NOLINT: implicit by design
  BigRational(const BigInt& n) : v_(n) {}
  BigRational(const BigInt& n, const BigInt& d) {
    if (d == 0) throw std::invalid_argument("BigRational: zero denominator");
    v_ = d < 0 ? cpp_rational(-n, -d) : cpp_rational(n, d);
  }

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }

  BigRational operator-() const { return BigRational(-v_); }
  BigRational& operator+=(const BigRational& o) { v_ += o.v_; return *this; }
  BigRational& operator-=(const BigRational& o) { v_ -= o.v_; return *this; }
  BigRational& operator*=(const BigRational& o) { v_ *= o.v_; return *this; }
  BigRational& operator/=(const BigRational& o) {
    if (o.v_ == 0) throw std::invalid_argument("BigRational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const BigRational& a, const BigRational& b) { return a.v_ != b.v_; }
  friend bool operator<(const BigRational& a, const BigRational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const BigRational& a, const BigRational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const BigRational& a, const BigRational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const BigRational& a, const BigRational& b) { return a.v_ >= b.v_; }

  int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

  double to_double() const { return v_.convert_to<double>(); }

  std::string str() const {
    if (denominator() == 1) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

 private:
  explicit BigRational(const cpp_rational& v) : v_(v) {}
  cpp_rational v_;
};

inline BigInt int_pow(const BigInt& base, unsigned e) {
  BigInt r = 1, b = base;
  while (e != 0) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1u;
  }
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;  // divides exactly at every step
  }
  return r;
}

}  // namespace kgeo::numkit
