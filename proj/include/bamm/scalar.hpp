#pragma once

// Exact scalars: arbitrary-precision rationals and elements a + b*sqrt(d) of a
// real quadratic field.  A value with b == 0 is stored with d == 1 and mixes
// freely with any field; two irrational values must share the same radicand.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "bamm/errors.hpp"

namespace bamm {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Square-free decomposition p = k^2 * d.
inline std::pair<std::int64_t, std::int64_t> squarefree_split(std::int64_t p) {
  if (p <= 0) throw Error("squarefree_split: radicand must be positive");
  std::int64_t k = 1;
  std::int64_t d = p;
  for (std::int64_t f = 2; f * f <= d; ++f) {
    while (d % (f * f) == 0) {
      d /= f * f;
      k *= f;
    }
  }
  return {k, d};
}

inline double rational_to_double(const Rational& q) { return q.get_d(); }

class Scalar {
 public:
  Scalar() : a_(0), b_(0), d_(1) {}
  Scalar(long v) : a_(v), b_(0), d_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(int v) : a_(v), b_(0), d_(1) {}   // NOLINT(google-explicit-constructor)
  Scalar(Rational a) : a_(std::move(a)), b_(0), d_(1) { a_.canonicalize(); }  // NOLINT
  Scalar(Rational a, Rational b, std::int64_t d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ <= 0) throw FieldMismatch("radicand must be positive");
    if (d_ != 1 && squarefree_split(d_).first != 1) throw FieldMismatch("radicand must be square-free");
    normalize();
  }

  // Exact sqrt(p) for a positive integer p, reduced to k*sqrt(d).
  static Scalar sqrt_of(std::int64_t p) {
    auto [k, d] = squarefree_split(p);
    if (d == 1) return Scalar(Rational(k));
    return Scalar(Rational(0), Rational(k), d);
  }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }
  std::int64_t radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  bool is_zero() const { return a_ == 0 && b_ == 0; }

  double to_double() const {
    if (b_ == 0) return a_.get_d();
    return a_.get_d() + b_.get_d() * std::sqrt(static_cast<double>(d_));
  }

  // Exact sign of a + b sqrt(d).
  int sign() const {
    int sa = sgn(a_);
    int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    Rational a2 = a_ * a_;
    Rational b2d = b_ * b_ * d_;
    int c = ::cmp(a2, b2d);
    if (c == 0) return 0;
    return c > 0 ? sa : sb;
  }

  Scalar conjugate() const { return make(a_, -b_, d_); }

  // a^2 - d b^2, always rational.
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }

  Scalar inverse() const {
    if (is_zero()) throw Error("division by zero scalar");
    Rational nrm = norm();
    return make(a_ / nrm, -b_ / nrm, d_);
  }

  Scalar& operator+=(const Scalar& o) {
    std::int64_t d = joint(o);
    a_ += o.a_;
    b_ += o.b_;
    d_ = d;
    normalize();
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    std::int64_t d = joint(o);
    a_ -= o.a_;
    b_ -= o.b_;
    d_ = d;
    normalize();
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    std::int64_t d = joint(o);
    if (b_ == 0 && o.b_ == 0) {
      a_ *= o.a_;
    } else {
      Rational na = a_ * o.a_ + b_ * o.b_ * d;
      Rational nb = a_ * o.b_ + b_ * o.a_;
      a_ = std::move(na);
      b_ = std::move(nb);
    }
    d_ = d;
    normalize();
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.b_ == 0) {
      if (o.a_ == 0) throw Error("division by zero scalar");
      a_ /= o.a_;
      b_ /= o.a_;
      normalize();
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend Scalar operator-(Scalar x) {
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }

  std::string to_string() const {
    if (b_ == 0) return a_.get_str();
    std::string s = a_ == 0 ? std::string() : a_.get_str();
    std::string rad = "sqrt(" + std::to_string(d_) + ")";
    if (a_ == 0) {
      if (b_ == 1) return rad;
      if (b_ == -1) return "-" + rad;
      return b_.get_str() + "*" + rad;
    }
    if (b_ > 0) return s + "+" + (b_ == 1 ? rad : b_.get_str() + "*" + rad);
    return s + (b_ == -1 ? "-" + rad : b_.get_str() + "*" + rad);
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  static Scalar make(Rational a, Rational b, std::int64_t d) {
    Scalar s;
    s.a_ = std::move(a);
    s.b_ = std::move(b);
    s.d_ = d;
    s.normalize();
    return s;
  }

  std::int64_t joint(const Scalar& o) const {
    if (b_ == 0) return o.d_;
    if (o.b_ == 0) return d_;
    if (d_ != o.d_) {
      throw FieldMismatch("mixed radicands sqrt(" + std::to_string(d_) + ") and sqrt(" +
                          std::to_string(o.d_) + ")");
    }
    return d_;
  }

  void normalize() {
    if (b_ == 0) d_ = 1;
  }

  Rational a_;
  Rational b_;
  std::int64_t d_;
};

inline Scalar pow(Scalar base, unsigned exponent) {
  Scalar acc(1);
  while (exponent > 0) {
    if (exponent & 1U) acc *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return acc;
}

}  // namespace bamm
