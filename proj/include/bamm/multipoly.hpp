#pragma once

// Sparse multivariate polynomials in two blocks of variables,
// x_1..x_n and lambda_1..lambda_n, over an exact coefficient field.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bamm/errors.hpp"
#include "bamm/scalar.hpp"

namespace bamm {

enum class Block { x, lambda };

using Exponent = std::uint16_t;
using Monomial = std::vector<Exponent>;

template <class K>
inline bool coeff_is_zero(const K& c) {
  return c == K(0);
}
template <>
inline bool coeff_is_zero<Scalar>(const Scalar& c) {
  return c.is_zero();
}

inline std::complex<double> coeff_to_complex(const Scalar& c) { return {c.to_double(), 0.0}; }
inline std::complex<double> coeff_to_complex(const Rational& c) { return {c.get_d(), 0.0}; }

template <class K>
class MultiPoly;

class NonDivisibleError : public Error {
 public:
  using Error::Error;
};

// Division by a linear form left a nonzero remainder.
template <class K>
class NonDivisible : public NonDivisibleError {
 public:
  explicit NonDivisible(MultiPoly<K> remainder)
      : NonDivisibleError("polynomial is not divisible by the linear form (remainder has " +
                          std::to_string(remainder.size()) + " terms)"),
        remainder(std::move(remainder)) {}
  MultiPoly<K> remainder;
};

template <class K>
struct LinearDivision {
  MultiPoly<K> quotient;
  MultiPoly<K> remainder;
  bool exact() const { return remainder.is_zero(); }
};

template <class K>
class MultiPoly {
 public:
  using Terms = std::map<Monomial, K>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t arity) : arity_(arity) {}

  static MultiPoly constant(std::size_t arity, const K& c) {
    MultiPoly p(arity);
    if (!coeff_is_zero(c)) p.terms_.emplace(Monomial(2 * arity, 0), c);
    return p;
  }

  static MultiPoly variable(std::size_t arity, Block block, std::size_t i) {
    MultiPoly p(arity);
    Monomial m(2 * arity, 0);
    m.at(offset(arity, block) + i) = 1;
    p.terms_.emplace(std::move(m), K(1));
    return p;
  }

  // (alpha, v) for v the chosen block.
  static MultiPoly linear_form(std::span<const K> alpha, Block block) {
    MultiPoly p(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (coeff_is_zero(alpha[i])) continue;
      Monomial m(2 * alpha.size(), 0);
      m[offset(alpha.size(), block) + i] = 1;
      p.terms_.emplace(std::move(m), alpha[i]);
    }
    return p;
  }

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }

  // Adds c * monomial, dropping the entry if it cancels.
  void add_term(const Monomial& m, const K& c) {
    if (m.size() != 2 * arity_) throw ArityMismatch("monomial length does not match arity");
    if (coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0) : it->second;
  }

  K constant_term() const { return coefficient(Monomial(2 * arity_, 0)); }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const K& s) {
    if (coeff_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(MultiPoly a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const K& s) { return a *= s; }
  friend MultiPoly operator*(const K& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_arity(b);
    MultiPoly r(a.arity_);
    Monomial m(2 * a.arity_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = static_cast<Exponent>(ma[i] + mb[i]);
        r.add_term(m, ca * cb);
      }
    }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  // d/dv for the variable with flat index var (0..2n-1).
  MultiPoly derivative(std::size_t var) const {
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial dm = m;
      dm[var] -= 1;
      r.add_term(dm, c * K(static_cast<long>(m[var])));
    }
    return r;
  }

  MultiPoly derivative(Block block, std::size_t i) const { return derivative(offset(arity_, block) + i); }

  // sum_i alpha_i d/dv_i over one block.
  MultiPoly dir_derivative(std::span<const K> alpha, Block block) const {
    if (alpha.size() != arity_) throw ArityMismatch("direction length does not match arity");
    MultiPoly r(arity_);
    const std::size_t off = offset(arity_, block);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < arity_; ++i) {
        if (m[off + i] == 0 || coeff_is_zero(alpha[i])) continue;
        Monomial dm = m;
        dm[off + i] -= 1;
        r.add_term(dm, c * alpha[i] * K(static_cast<long>(m[off + i])));
      }
    }
    return r;
  }

  MultiPoly laplacian(Block block) const {
    MultiPoly r(arity_);
    const std::size_t off = offset(arity_, block);
    for (const auto& [m, c] : terms_) {
      for (std::size_t i = 0; i < arity_; ++i) {
        const long e = m[off + i];
        if (e < 2) continue;
        Monomial dm = m;
        dm[off + i] -= 2;
        r.add_term(dm, c * K(e * (e - 1)));
      }
    }
    return r;
  }

  unsigned degree(Block block) const {
    unsigned best = 0;
    const std::size_t off = offset(arity_, block);
    for (const auto& [m, c] : terms_) best = std::max(best, block_degree(m, off));
    return best;
  }

  unsigned total_degree() const {
    unsigned best = 0;
    for (const auto& [m, c] : terms_) {
      unsigned s = 0;
      for (auto e : m) s += e;
      best = std::max(best, s);
    }
    return best;
  }

  // Terms whose degree in the block equals deg.
  MultiPoly homogeneous_part(Block block, unsigned deg) const {
    MultiPoly r(arity_);
    const std::size_t off = offset(arity_, block);
    for (const auto& [m, c] : terms_) {
      if (block_degree(m, off) == deg) r.terms_.emplace(m, c);
    }
    return r;
  }

  // P(x, lambda) -> P(lambda, x).
  MultiPoly swap_blocks() const {
    MultiPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      Monomial sm(m.size());
      for (std::size_t i = 0; i < arity_; ++i) {
        sm[i] = m[arity_ + i];
        sm[arity_ + i] = m[i];
      }
      r.terms_.emplace(std::move(sm), c);
    }
    return r;
  }

  // Value at a complex point of length 2n (x block then lambda block).
  std::complex<double> evaluate(std::span<const std::complex<double>> point) const {
    if (point.size() != 2 * arity_) throw ArityMismatch("evaluation point has wrong length");
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = coeff_to_complex(c);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (Exponent e = 0; e < m[i]; ++e) t *= point[i];
      }
      sum += t;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + coeff_string(it->second) + ")";
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        if (it->first[i] == 0) continue;
        out += (i < arity_ ? "*x" + std::to_string(i + 1) : "*l" + std::to_string(i - arity_ + 1));
        if (it->first[i] > 1) out += "^" + std::to_string(it->first[i]);
      }
    }
    return out;
  }

  static std::size_t offset(std::size_t arity, Block block) { return block == Block::x ? 0 : arity; }

 private:
  static unsigned block_degree(const Monomial& m, std::size_t off) {
    unsigned s = 0;
    const std::size_t n = m.size() / 2;
    for (std::size_t i = 0; i < n; ++i) s += m[off + i];
    return s;
  }

  static std::string coeff_string(const Scalar& c) { return c.to_string(); }
  static std::string coeff_string(const Rational& c) { return c.get_str(); }

  void check_arity(const MultiPoly& o) const {
    if (o.arity_ != arity_) throw ArityMismatch("polynomial arities differ");
  }

  std::size_t arity_ = 0;
  Terms terms_;
};

// p = (alpha, v) * q + r with r free of the pivot variable; r == 0 iff (alpha, v) divides p.
// Synthetic division in the pivot variable (first nonzero alpha_j), treating the
// remaining variables as coefficients.
template <class K>
LinearDivision<K> divide_linear(const MultiPoly<K>& p, std::span<const K> alpha, Block block) {
  const std::size_t n = p.arity();
  if (alpha.size() != n) throw ArityMismatch("divisor length does not match arity");
  std::size_t pivot = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!coeff_is_zero(alpha[i])) {
      pivot = i;
      break;
    }
  }
  if (pivot == n) throw Error("division by the zero linear form");
  const std::size_t var = MultiPoly<K>::offset(n, block) + pivot;

  // rest = (alpha, v) - alpha_pivot * v_pivot
  std::vector<K> rest_alpha(alpha.begin(), alpha.end());
  rest_alpha[pivot] = K(0);
  const MultiPoly<K> rest = MultiPoly<K>::linear_form(std::span<const K>(rest_alpha), block);
  const K inv_lead = K(1) / alpha[pivot];

  // Slices by power of the pivot variable.
  std::vector<MultiPoly<K>> slices;
  for (const auto& [m, c] : p.terms()) {
    const Exponent e = m[var];
    if (slices.size() <= e) slices.resize(e + 1, MultiPoly<K>(n));
    Monomial stripped = m;
    stripped[var] = 0;
    slices[e].add_term(stripped, c);
  }

  LinearDivision<K> out{MultiPoly<K>(n), MultiPoly<K>(n)};
  if (slices.empty()) return out;
  for (std::size_t k = slices.size() - 1; k >= 1; --k) {
    if (slices[k].is_zero()) continue;
    MultiPoly<K> qk = slices[k] * inv_lead;
    slices[k - 1] -= qk * rest;
    for (const auto& [m, c] : qk.terms()) {
      Monomial lifted = m;
      lifted[var] = static_cast<Exponent>(k - 1);
      out.quotient.add_term(lifted, c);
    }
  }
  out.remainder = std::move(slices[0]);
  return out;
}

// Exact quotient p / (alpha, v); throws NonDivisible carrying the remainder otherwise.
template <class K>
MultiPoly<K> exact_div_linear(const MultiPoly<K>& p, std::span<const K> alpha, Block block) {
  auto d = divide_linear(p, alpha, block);
  if (!d.exact()) throw NonDivisible<K>(std::move(d.remainder));
  return std::move(d.quotient);
}

template <class K>
MultiPoly<K> dir_derivative(const MultiPoly<K>& p, std::span<const K> alpha, Block block) {
  return p.dir_derivative(alpha, block);
}

template <class K>
MultiPoly<K> pow(const MultiPoly<K>& p, unsigned e) {
  MultiPoly<K> acc = MultiPoly<K>::constant(p.arity(), K(1));
  for (unsigned i = 0; i < e; ++i) acc *= p;
  return acc;
}

}  // namespace bamm
