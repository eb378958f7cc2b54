#pragma once

// Baker-Akhiezer functions via Berest's formula, axiom checks, and the finite
// exponential series e^{tL} on quasi-invariant polynomials.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "bamm/arrangement.hpp"
#include "bamm/exppoly.hpp"
#include "bamm/quadrature.hpp"

namespace bamm {

inline constexpr std::size_t default_term_budget = 5'000'000;

namespace detail {

inline double binom_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Upper bound on the number of monomials met while applying (L - lambda^2)^{|m|}.
inline double berest_term_bound(const Arrangement& a) {
  const int big_m = a.total_multiplicity();
  const int n = static_cast<int>(a.dimension());
  double best = 0.0;
  for (int s = 0; s <= big_m; ++s) {
    best = std::max(best, detail::binom_d(2 * big_m - s + n, n) * detail::binom_d(s + n, n));
  }
  return best;
}

// phi = (2^{|m|} |m|!)^{-1} (L - lambda^2)^{|m|} (A_m(x)^2 e^{(lambda,x)}).
inline ExpPoly construct_berest(const Arrangement& a, std::size_t term_budget = default_term_budget) {
  const double bound = berest_term_bound(a);
  if (bound > static_cast<double>(term_budget)) {
    throw TermBudgetExceeded(static_cast<std::size_t>(std::min(bound, 1e18)), term_budget);
  }
  const int big_m = a.total_multiplicity();
  const Poly am = a.am_polynomial(Block::x);
  ExpPoly f{am * am};
  Rational norm = 1;
  for (int k = 1; k <= big_m; ++k) {
    f = apply_shifted_cm(f, a);
    if (f.poly.size() > term_budget) throw TermBudgetExceeded(f.poly.size(), term_budget);
    norm *= 2 * k;
  }
  return f * Scalar(Rational(1) / norm);
}

inline Scalar value_at_origin(const ExpPoly& phi) { return phi.poly.constant_term(); }

struct AxiomReport {
  bool quasi_invariance = true;
  bool symmetry = true;
  bool highest_term = true;
  bool eigen_equation = true;
  bool phi00_vanishes = false;  // anomaly flag, not an axiom
  std::vector<std::string> failures;

  bool all_pass() const { return quasi_invariance && symmetry && highest_term && eigen_equation; }
};

// (d_alpha + (alpha,lambda))^k P reduced modulo (alpha,x) for every odd k < 2 m_alpha.
inline bool quasi_invariant(const Poly& p, const RootVector& v, std::string* failure = nullptr) {
  std::span<const Scalar> alpha(v.coords);
  const Poly lam = Poly::linear_form(alpha, Block::lambda);
  Poly q = p;
  for (int k = 1; k <= 2 * v.multiplicity - 1; ++k) {
    q = q.dir_derivative(alpha, Block::x) + lam * q;
    if (k % 2 == 1 && !divide_linear(q, alpha, Block::x).exact()) {
      if (failure) *failure = "odd normal derivative of order " + std::to_string(k) + " does not vanish";
      return false;
    }
  }
  return true;
}

inline AxiomReport check_axioms(const ExpPoly& phi, const Arrangement& a) {
  AxiomReport r;
  const Poly& p = phi.poly;
  if (p.arity() != a.dimension()) throw ArityMismatch("phi arity differs from arrangement dimension");

  for (std::size_t i = 0; i < a.vectors().size(); ++i) {
    std::string why;
    if (!quasi_invariant(p, a.vectors()[i], &why)) {
      r.quasi_invariance = false;
      r.failures.push_back("vector " + std::to_string(i) + ": " + why);
    }
  }

  if (!(p == p.swap_blocks())) {
    r.symmetry = false;
    r.failures.push_back("P(x,lambda) != P(lambda,x)");
  }

  const unsigned big_m = static_cast<unsigned>(a.total_multiplicity());
  const Poly top = a.am_polynomial(Block::x) * a.am_polynomial(Block::lambda);
  if (p.degree(Block::x) != big_m || !(p.homogeneous_part(Block::x, big_m) == top)) {
    r.highest_term = false;
    r.failures.push_back("highest x-degree term is not A_m(x) A_m(lambda)");
  }

  try {
    if (!apply_shifted_cm(phi, a).poly.is_zero()) {
      r.eigen_equation = false;
      r.failures.push_back("(L - lambda^2) phi != 0");
    }
  } catch (const NonDivisibleError&) {
    r.eigen_equation = false;
    r.failures.push_back("(L - lambda^2) phi is not polynomial");
  }

  r.phi00_vanishes = value_at_origin(phi).is_zero();
  return r;
}

// sum_k t^k L^k p / k!; finite because L lowers the degree by two.
inline Poly exp_scaled_L(const Poly& p, const Arrangement& a, const Scalar& t) {
  if (p.degree(Block::lambda) != 0) throw ArityMismatch("exp_scaled_L expects a polynomial in x only");
  Poly sum = p;
  Poly term = p;
  for (long k = 1; !term.is_zero(); ++k) {
    term = apply_cm(term, a) * (t / Scalar(k));
    sum += term;
  }
  return sum;
}

inline Poly exp_half_L(const Poly& p, const Arrangement& a) { return exp_scaled_L(p, a, Scalar(make_rational(1, 2))); }

// m-discriminant w_m = prod (alpha, x)^{2 m_alpha + 1}.
inline Poly m_discriminant(const Arrangement& a) {
  Poly w = Poly::constant(a.dimension(), Scalar(1));
  for (const auto& v : a.vectors()) {
    w = w * pow(Poly::linear_form(std::span<const Scalar>(v.coords), Block::x),
                static_cast<unsigned>(2 * v.multiplicity + 1));
  }
  return w;
}

namespace detail {

// True when p(x) does not change along directions orthogonal to the frame (checked at sample points).
inline bool frame_invariant(const CompiledPoly& p, const Eigen::MatrixXd& frame, std::size_t n) {
  if (static_cast<std::size_t>(frame.cols()) == n) return true;
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - frame * frame.transpose();
  for (std::uint64_t s = 0; s < 4; ++s) {
    std::vector<cplx> a(2 * n, 0.0), b(2 * n, 0.0);
    Eigen::VectorXd shift(n);
    for (std::size_t i = 0; i < n; ++i) shift(i) = 2.0 * counter_uniform(7, s, i) - 1.0;
    shift = proj * shift;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = cplx(2.0 * counter_uniform(11, s, i) - 1.0, 2.0 * counter_uniform(13, s, i) - 1.0);
      b[i] = a[i] + shift(i);
    }
    const cplx va = p(a), vb = p(b);
    if (std::abs(va - vb) > 1e-10 * std::max({1.0, std::abs(va), std::abs(vb)})) return false;
  }
  return true;
}

}  // namespace detail

// (p, q) = phi(0,0) * integral of (e^{L/2} p)(-ix) (e^{L/2} q)(ix) / A_m(x)^2 over the shifted contour.
inline Integrand bilinear_integrand(const Poly& p, const Poly& q, const Arrangement& a, const Scalar& phi00) {
  const std::size_t n = a.dimension();
  if (p.arity() != n || q.arity() != n) throw ArityMismatch("bilinear_form: polynomial arity differs from the arrangement");
  const CompiledPoly pl(exp_half_L(p, a));
  const CompiledPoly ql(exp_half_L(q, a));
  Integrand in = inverse_am_squared_integrand(a.numeric());
  in.label = "bilinear form integrand";
  if (in.frame && !(detail::frame_invariant(pl, *in.frame, n) && detail::frame_invariant(ql, *in.frame, n))) {
    in.frame.reset();
  }
  const auto inv_a2 = in.f;
  const cplx c = coeff_to_complex(phi00);
  in.f = [pl, ql, inv_a2, c, n](std::span<const cplx> x) {
    std::vector<cplx> left(2 * n, 0.0), right(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      left[i] = cplx(0.0, -1.0) * x[i];
      right[i] = cplx(0.0, 1.0) * x[i];
    }
    return c * pl(left) * ql(right) * inv_a2(x);
  };
  return in;
}

inline QuadratureEstimate bilinear_form(const Poly& p, const Poly& q, const Arrangement& a, const Scalar& phi00,
                                        const ContourSpec& spec, const QuadConfig& cfg = {}) {
  return shifted_gaussian_integral(bilinear_integrand(p, q, a, phi00), spec, cfg);
}

// Tries pole distances 2.5, 1 and 0.5 in the positive chamber.
inline QuadratureEstimate bilinear_form(const Poly& p, const Poly& q, const Arrangement& a, const Scalar& phi00,
                                        const QuadConfig& cfg = {}) {
  std::vector<ContourSpec> specs;
  for (double pd : {2.5, 1.0, 0.5}) specs.push_back(regular_shift(a, ShiftStrategy::positive_chamber, {}, pd));
  return best_shifted_integral(bilinear_integrand(p, q, a, phi00), specs, cfg);
}

inline QuadratureEstimate bilinear_form(const Poly& p, const Poly& q, const Arrangement& a, const QuadConfig& cfg = {}) {
  const Scalar phi00 = value_at_origin(construct_berest(a));
  return bilinear_form(p, q, a, phi00, cfg);
}

}  // namespace bamm
