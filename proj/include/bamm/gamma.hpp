#pragma once

// Complex gamma function and gamma-product accumulation with an exact path for
// integer and half-integer arguments.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "bamm/errors.hpp"
#include "bamm/scalar.hpp"

namespace bamm {

using cplx = std::complex<double>;

namespace detail {

inline cplx sinpi(cplx z) {
  // Reduce the real part so that sin(pi x) stays accurate near integers.
  const double n = std::round(z.real());
  const cplx r(z.real() - n, z.imag());
  cplx s = std::sin(M_PI * r);
  if (std::fmod(std::abs(n), 2.0) == 1.0) s = -s;
  return s;
}

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

}  // namespace detail

// log Gamma(z) on some branch; only exp() of it is meaningful.
inline cplx log_gamma(cplx z) {
  if (detail::is_nonpositive_integer(z)) throw GammaPole(z.real());
  if (z.real() < 0.5) {
    return std::log(M_PI) - std::log(detail::sinpi(z)) - log_gamma(1.0 - z);
  }
  cplx shift = 0.0;
  while (z.real() < 15.0) {
    shift -= std::log(z);
    z += 1.0;
  }
  static constexpr double bern[] = {1.0 / 6,        -1.0 / 30,     1.0 / 42,  -1.0 / 30,    5.0 / 66,
                                    -691.0 / 2730, 7.0 / 6,       -3617.0 / 510, 43867.0 / 798};
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx series = 0.0;
  cplx p = inv;
  for (int k = 1; k <= 9; ++k) {
    series += bern[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= inv2;
  }
  return shift + (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * M_PI) + series;
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

// Number with an optional exact rational shadow; parameters of the closed forms.
struct Param {
  cplx value;
  std::optional<Rational> exact;

  Param() : value(0.0), exact(Rational(0)) {}
  Param(int v) : value(v), exact(Rational(v)) {}        // NOLINT(google-explicit-constructor)
  Param(long v) : value(static_cast<double>(v)), exact(Rational(v)) {}  // NOLINT
  Param(const Rational& q) : value(q.get_d()), exact(q) {}  // NOLINT
  Param(double v) : value(v) {                              // NOLINT
    if (std::isfinite(v)) {
      Rational q(v);
      q.canonicalize();
      if (mpz_sizeinbase(q.get_den_mpz_t(), 2) <= 21) exact = q;
    }
  }
  Param(cplx v) : value(v) {  // NOLINT
    if (v.imag() == 0.0) *this = Param(v.real());
  }

  bool is_exact() const { return exact.has_value(); }
  bool is_integer() const { return exact && exact->get_den() == 1; }
  bool is_half_integer() const { return exact && exact->get_den() == 2; }

  friend Param operator+(const Param& a, const Param& b) { return combine(a, b, a.value + b.value, '+'); }
  friend Param operator-(const Param& a, const Param& b) { return combine(a, b, a.value - b.value, '-'); }
  friend Param operator*(const Param& a, const Param& b) { return combine(a, b, a.value * b.value, '*'); }
  friend Param operator/(const Param& a, const Param& b) { return combine(a, b, a.value / b.value, '/'); }
  friend Param operator-(const Param& a) {
    Param r = a;
    r.value = -a.value;
    if (r.exact) r.exact = -*a.exact;
    return r;
  }

 private:
  static Param combine(const Param& a, const Param& b, cplx v, char op) {
    Param r;
    r.value = v;
    r.exact.reset();
    if (a.exact && b.exact) {
      switch (op) {
        case '+': r.exact = *a.exact + *b.exact; break;
        case '-': r.exact = *a.exact - *b.exact; break;
        case '*': r.exact = *a.exact * *b.exact; break;
        default:
          if (*b.exact != 0) r.exact = *a.exact / *b.exact;
      }
      if (r.exact) r.value = r.exact->get_d();
    }
    return r;
  }
};

// Gamma(z) for integer or half-integer z > 0 as (q, has_sqrt_pi); throws at poles.
inline std::pair<Rational, bool> exact_gamma(const Rational& z) {
  if (z.get_den() == 1) {
    if (z <= 0) throw GammaPole(z.get_d());
    Rational f = 1;
    for (long k = 2; k < z; ++k) f *= k;
    return {f, false};
  }
  if (z.get_den() != 2) throw Error("exact gamma needs an integer or half-integer argument");
  Rational q = 1;
  Rational x = make_rational(1, 2);
  if (z > 0) {
    while (x < z) {
      q *= x;
      x += 1;
    }
  } else {
    while (x > z) {
      x -= 1;
      q /= x;
    }
  }
  return {q, true};
}

// q * 2^{a} * pi^{b} * e^{i pi t} with a, b, t rational.
struct ExactReal {
  Rational q = 1;
  Rational log2 = 0;
  Rational log_pi = 0;
  Rational phase = 0;

  // The value as an element of Q or Q(sqrt 2), when it is one.
  std::optional<Scalar> scalar() const {
    if (q == 0) return Scalar(0);
    if (log_pi != 0) return std::nullopt;
    Rational t = phase;
    Integer num = t.get_num() % (2 * t.get_den());
    if (num < 0) num += 2 * t.get_den();
    t = Rational(num, t.get_den());
    t.canonicalize();
    int sign;
    if (t == 0) {
      sign = 1;
    } else if (t == 1) {
      sign = -1;
    } else {
      return std::nullopt;
    }
    Rational twice = log2 * 2;
    if (twice.get_den() != 1) return std::nullopt;
    long e2 = twice.get_num().get_si();
    const bool root = (e2 % 2) != 0;
    const long whole = (e2 - (root ? 1 : 0)) / 2;
    Rational f = q * sign;
    Rational p2 = 1;
    for (long i = 0; i < std::abs(whole); ++i) p2 *= 2;
    if (whole >= 0) {
      f *= p2;
    } else {
      f /= p2;
    }
    if (!root) return Scalar(f);
    return Scalar(Rational(0), f, 2);
  }
};

struct ClosedFormValue {
  cplx value;
  std::optional<Scalar> exact;
  std::string source;
};

// Accumulates a product of gamma factors, powers and phases along two routes:
// floating (log-space) and exact (ExactReal), the latter dropped as soon as any
// factor leaves the exact domain.
class GammaProduct {
 public:
  explicit GammaProduct(std::string source) : source_(std::move(source)) {}

  GammaProduct& gamma(const Param& z, int power = 1) {
    if (detail::is_nonpositive_integer(z.value) || (z.is_integer() && *z.exact <= 0)) {
      if (power > 0) throw GammaPole(z.value.real());
      zero_ = true;
      return *this;
    }
    log_ += static_cast<double>(power) * log_gamma(z.value);
    if (exact_ && z.exact && (z.is_integer() || z.is_half_integer())) {
      auto [q, has_pi] = exact_gamma(*z.exact);
      for (int i = 0; i < std::abs(power); ++i) {
        if (power > 0) {
          exact_->q *= q;
        } else {
          exact_->q /= q;
        }
      }
      if (has_pi) exact_->log_pi += make_rational(power, 2);
    } else {
      exact_.reset();
    }
    return *this;
  }

  // Gamma(a)/Gamma(b) where a and b move with a parameter at rates da, db; when
  // both sit on poles the limit (res_a / res_b) * (db / da) is used.
  GammaProduct& gamma_ratio(const Param& a, const Param& b, long da, long db) {
    const bool pa = a.is_integer() && *a.exact <= 0;
    const bool pb = b.is_integer() && *b.exact <= 0;
    if (!(pa && pb)) return gamma(a).gamma(b, -1);
    const long ka = -a.exact->get_num().get_si();
    const long kb = -b.exact->get_num().get_si();
    Rational lim = make_rational(db, da);
    for (long i = 2; i <= kb; ++i) lim *= i;
    for (long i = 2; i <= ka; ++i) lim /= i;
    if ((ka + kb) % 2 != 0) lim = -lim;
    return factor(Param(lim));
  }

  // Multiplies by x^power for a nonzero x.
  GammaProduct& factor(const Param& x, int power = 1) {
    if (x.value == 0.0) {
      if (power > 0) {
        zero_ = true;
        return *this;
      }
      throw Error("division by a vanishing factor in " + source_);
    }
    log_ += static_cast<double>(power) * std::log(x.value);
    if (exact_ && x.exact) {
      for (int i = 0; i < std::abs(power); ++i) {
        if (power > 0) {
          exact_->q *= *x.exact;
        } else {
          exact_->q /= *x.exact;
        }
      }
    } else {
      exact_.reset();
    }
    return *this;
  }

  GammaProduct& sign(int s) {
    if (s < 0) {
      log_ += cplx(0.0, M_PI);
      if (exact_) exact_->q = -exact_->q;
    }
    return *this;
  }

  GammaProduct& pow2(const Param& e) {
    log_ += e.value * std::log(2.0);
    if (exact_ && e.exact) {
      exact_->log2 += *e.exact;
    } else {
      exact_.reset();
    }
    return *this;
  }

  GammaProduct& pow_pi(const Param& e) {
    log_ += e.value * std::log(M_PI);
    if (exact_ && e.exact) {
      exact_->log_pi += *e.exact;
    } else {
      exact_.reset();
    }
    return *this;
  }

  // e^{i pi t}
  GammaProduct& phase(const Param& t) {
    log_ += cplx(0.0, M_PI) * t.value;
    if (exact_ && t.exact) {
      exact_->phase += *t.exact;
    } else {
      exact_.reset();
    }
    return *this;
  }

  // base^e on the principal branch. The exact route handles integer e, and
  // bases that are powers of two.
  GammaProduct& power(const Param& base, const Param& e) {
    if (base.value == 0.0) throw Error("zero base in " + source_);
    log_ += e.value * std::log(base.value);
    if (!exact_) return *this;
    if (!base.exact || !e.exact) {
      exact_.reset();
      return *this;
    }
    if (e.is_integer()) {
      const long k = e.exact->get_num().get_si();
      Rational b = *base.exact;
      for (long i = 0; i < std::abs(k); ++i) {
        if (k > 0) {
          exact_->q *= b;
        } else {
          exact_->q /= b;
        }
      }
      return *this;
    }
    const Rational& b = *base.exact;
    if (b > 0 && b.get_den() == 1) {
      Integer num = b.get_num();
      long k = 0;
      while (num % 2 == 0) {
        num /= 2;
        ++k;
      }
      if (num == 1) {
        exact_->log2 += *e.exact * k;
        return *this;
      }
    }
    exact_.reset();
    return *this;
  }

  // Multiplies by a floating complex factor (drops the exact route).
  GammaProduct& multiply(cplx c) {
    if (c == 0.0) {
      zero_ = true;
      return *this;
    }
    log_ += std::log(c);
    exact_.reset();
    return *this;
  }

  // Multiplies by an exact real scalar.
  GammaProduct& multiply(const ExactReal& x) {
    if (x.q == 0) {
      zero_ = true;
      return *this;
    }
    log_ += std::log(cplx(x.q.get_d())) + x.log2.get_d() * std::log(2.0) + x.log_pi.get_d() * std::log(M_PI) +
            cplx(0.0, M_PI * x.phase.get_d());
    if (exact_) {
      exact_->q *= x.q;
      exact_->log2 += x.log2;
      exact_->log_pi += x.log_pi;
      exact_->phase += x.phase;
    }
    return *this;
  }

  ClosedFormValue result() const {
    ClosedFormValue r;
    r.source = source_;
    if (zero_) {
      r.value = 0.0;
      r.exact = Scalar(0);
      return r;
    }
    r.value = std::exp(log_);
    if (exact_) {
      r.exact = exact_->scalar();
    }
    return r;
  }

  const std::optional<ExactReal>& exact_part() const { return exact_; }

 private:
  std::string source_;
  cplx log_ = 0.0;
  std::optional<ExactReal> exact_ = ExactReal{};
  bool zero_ = false;
};

}  // namespace bamm
