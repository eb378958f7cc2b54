#pragma once

// P(x, lambda) e^{(x, lambda)} and the Calogero-Moser operator acting on it.

#include <span>
#include <utility>
#include <vector>

#include "bamm/arrangement.hpp"
#include "bamm/multipoly.hpp"

namespace bamm {

using Poly = MultiPoly<Scalar>;

struct ExpPoly {
  Poly poly;

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.poly == b.poly; }
  friend ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) { return {a.poly + b.poly}; }
  friend ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return {a.poly - b.poly}; }
  friend ExpPoly operator*(const ExpPoly& a, const Scalar& s) { return {a.poly * s}; }
  // Multiplying by a plain polynomial keeps the exponential factor.
  friend ExpPoly operator*(const Poly& p, const ExpPoly& a) { return {p * a.poly}; }
};

// (L - lambda^2)(P e) = (Laplace P + 2 (lambda, grad P)
//   - sum 2 m_alpha (alpha,x)^{-1} (d_alpha P + (alpha,lambda) P)) e.
inline ExpPoly apply_shifted_cm(const ExpPoly& f, const Arrangement& a) {
  const Poly& p = f.poly;
  const std::size_t n = p.arity();
  if (n != a.dimension()) throw ArityMismatch("polynomial arity differs from arrangement dimension");
  Poly out = p.laplacian(Block::x);
  for (std::size_t i = 0; i < n; ++i) {
    out += Poly::variable(n, Block::lambda, i) * p.derivative(Block::x, i) * Scalar(2);
  }
  for (const auto& v : a.vectors()) {
    std::span<const Scalar> alpha(v.coords);
    Poly inner = p.dir_derivative(alpha, Block::x) + Poly::linear_form(alpha, Block::lambda) * p;
    out -= exact_div_linear(inner, alpha, Block::x) * Scalar(2 * v.multiplicity);
  }
  return {std::move(out)};
}

// L p for p a polynomial in the x block only.
inline Poly apply_cm(const Poly& p, const Arrangement& a) {
  if (p.arity() != a.dimension()) throw ArityMismatch("polynomial arity differs from arrangement dimension");
  Poly out = p.laplacian(Block::x);
  for (const auto& v : a.vectors()) {
    std::span<const Scalar> alpha(v.coords);
    out -= exact_div_linear(p.dir_derivative(alpha, Block::x), alpha, Block::x) * Scalar(2 * v.multiplicity);
  }
  return out;
}

}  // namespace bamm
