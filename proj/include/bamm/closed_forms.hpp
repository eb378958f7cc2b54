#pragma once

// Gamma-product closed forms for Macdonald-Mehta type integrals and the value
// phi(0,0) of Baker-Akhiezer functions.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bamm/arrangement.hpp"
#include "bamm/gamma.hpp"

namespace bamm {

// as_printed reproduces printed formulas that fail the internal consistency
// checks; corrected is the default everywhere.
enum class Variant { corrected, as_printed };

enum class TwoParamFamily { B, F4 };

namespace detail {

inline Integer ipow(long base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(std::abs(base)), e);
  if (base < 0 && e % 2 == 1) r = -r;
  return r;
}

// (1 - e^{2 pi i a x}) / (1 - e^{2 pi i x}), with the limit a at integer x.
inline void multiply_phase_ratio(GammaProduct& g, const Param& x, int a) {
  if (x.is_integer()) {
    g.factor(Param(a));
    return;
  }
  if (x.is_half_integer()) {
    if (a % 2 == 0) {
      g.factor(Param(0));
      return;
    }
    const Integer h = x.exact->get_num();
    const long hm = mpz_fdiv_ui(h.get_mpz_t(), 4);  // h mod 4, h odd
    const int s_den = hm == 1 ? 1 : -1;
    const Integer ah = h * a;
    const long ahm = mpz_fdiv_ui(ah.get_mpz_t(), 4);
    const int s_num = ahm == 1 ? 1 : -1;
    const Integer ph = h * ((a - 1) / 2);
    const int s_phase = mpz_fdiv_ui(ph.get_mpz_t(), 2) == 0 ? 1 : -1;
    g.sign(s_den * s_num * s_phase);
    return;
  }
  const cplx z = x.value;
  const cplx den = sinpi(z);
  if (std::abs(den) < 1e-300) {
    g.factor(Param(a));
    return;
  }
  const cplx r = std::exp(cplx(0.0, M_PI) * z * static_cast<double>(a - 1)) * sinpi(z * static_cast<double>(a)) / den;
  g.multiply(r);
}

}  // namespace detail

// prod Gamma(1 + k d_j) / Gamma(1 + k).
inline ClosedFormValue mm_coxeter(const CoxeterDatum& w, const Param& k) {
  GammaProduct g("Macdonald-Mehta product, " + w.label);
  for (int d : w.degrees) {
    g.gamma(Param(1) + k * Param(d));
    g.gamma(Param(1) + k, -1);
  }
  return g.result();
}

// (1/|W|) prod (1 - e^{2 pi i k d_j}) / (1 - e^{2 pi i k}).
inline ClosedFormValue contour_factor_equal(const CoxeterDatum& w, const Param& k) {
  GammaProduct g("shifted-contour branch factor, " + w.label);
  g.factor(Param(static_cast<long>(w.order)), -1);
  for (int d : w.degrees) detail::multiply_phase_ratio(g, k, d);
  return g.result();
}

// (-1)^{m |R+|} / |W| prod Gamma(m) / Gamma(m d_j).
inline ClosedFormValue contour_gaussian(const CoxeterDatum& w, int m) {
  if (m < 1) throw UsageError("contour_gaussian needs m >= 1");
  GammaProduct g("shifted Gaussian integral of 1/A_m^2, " + w.label);
  g.sign((static_cast<long>(m) * w.positive_roots) % 2 == 0 ? 1 : -1);
  g.factor(Param(static_cast<long>(w.order)), -1);
  for (int d : w.degrees) {
    g.gamma(Param(m));
    g.gamma(Param(m * d), -1);
  }
  return g.result();
}

// G_W(m) G_W(-m), computed from the two closed forms; equals (-1)^{m |R+|}.
inline ClosedFormValue gw_product(const CoxeterDatum& w, int m) {
  const auto plus = mm_coxeter(w, Param(m));
  const auto minus = contour_gaussian(w, m);
  ClosedFormValue r;
  r.source = "G_W(m) G_W(-m), " + w.label;
  r.value = plus.value * minus.value;
  if (plus.exact && minus.exact) r.exact = *plus.exact * *minus.exact;
  return r;
}

inline int gw_sign(const CoxeterDatum& w, int m) { return (static_cast<long>(m) * w.positive_roots) % 2 == 0 ? 1 : -1; }

// (x)_n = x (x+1) ... (x+n-1)
inline Integer pochhammer(long x, long n) {
  Integer r = 1;
  for (long i = 0; i < n; ++i) r *= x + i;
  return r;
}

// (w_m, w_m) = (-1)^{m |R+|} prod (m+2)_{(m+1)(d_j-1)} (m+1)_{m(d_j-1)}.
inline ClosedFormValue wm_norm(const CoxeterDatum& w, int m) {
  if (m < 0) throw UsageError("wm_norm needs m >= 0");
  Integer prod = 1;
  for (int d : w.degrees) prod *= pochhammer(m + 2, static_cast<long>(m + 1) * (d - 1)) * pochhammer(m + 1, static_cast<long>(m) * (d - 1));
  if (gw_sign(w, m) < 0) prod = -prod;
  ClosedFormValue r;
  r.source = "norm of the m-discriminant, " + w.label;
  r.exact = Scalar(Rational(prod));
  r.value = prod.get_d();
  return r;
}

// Two-orbit Macdonald-Mehta integrals with short-root parameter k1 and long-root k2;
// short roots unnormalized (e_j for B_n; e_j and (1/2)(e_1 +- ...) for F4).
inline ClosedFormValue mm_two_param(TwoParamFamily fam, int n, const Param& k1, const Param& k2) {
  const Param one(1);
  if (fam == TwoParamFamily::B) {
    GammaProduct g("two-parameter Macdonald-Mehta, B" + std::to_string(n));
    g.pow2(-(Param(n) * k1));
    for (int j = 1; j <= n; ++j) {
      const Param jm1(j - 1);
      g.gamma(one + Param(2) * k1 + Param(2) * k2 * jm1);
      g.gamma(one + k1 + k2 * jm1, -1);
      g.gamma(one + Param(j) * k2);
      g.gamma(one + k2, -1);
    }
    return g.result();
  }
  GammaProduct g("two-parameter Macdonald-Mehta, F4");
  const Param s = k1 + k2;
  g.pow2(-(Param(12) * k1));
  g.gamma(Param(4) * s + one).gamma(Param(6) * s + one);
  g.gamma(s + one, -1).gamma(Param(3) * s + one, -1);
  for (const Param& kj : {k1, k2}) {
    g.gamma(Param(2) * kj + one).gamma(Param(3) * kj + one).gamma(Param(2) * kj + Param(2) * s + one);
    g.gamma(kj + one, -2).gamma(kj + s + one, -1);
  }
  return g.result();
}

// P(k1,k2) / |W| for B_n and F4.
inline ClosedFormValue contour_factor_two_param(TwoParamFamily fam, int n, const Param& k1, const Param& k2) {
  if (fam == TwoParamFamily::B) {
    GammaProduct g("two-parameter branch factor, B" + std::to_string(n));
    Integer order = detail::ipow(2, n);
    for (int i = 2; i <= n; ++i) order *= i;
    g.factor(Param(Rational(order)), -1);
    for (int j = 1; j <= n; ++j) {
      detail::multiply_phase_ratio(g, k1 + Param(j - 1) * k2, 2);
      detail::multiply_phase_ratio(g, k2, j);
    }
    return g.result();
  }
  GammaProduct g("two-parameter branch factor, F4");
  const Param s = k1 + k2;
  g.factor(Param(1152), -1);
  detail::multiply_phase_ratio(g, s, 4);
  detail::multiply_phase_ratio(g, Param(3) * s, 2);
  for (const Param& kj : {k1, k2}) {
    detail::multiply_phase_ratio(g, kj, 2);
    detail::multiply_phase_ratio(g, kj, 3);
    detail::multiply_phase_ratio(g, kj + s, 2);
  }
  return g.result();
}

// Shifted Gaussian integral of 1/(Delta_s^{2 m1} Delta_l^{2 m2}) for B_n and F4.
inline ClosedFormValue contour_gaussian_two_param(TwoParamFamily fam, int n, int m1, int m2) {
  if (m1 < 1 || m2 < 1) throw UsageError("two-parameter integrals need m1, m2 >= 1");
  if (fam == TwoParamFamily::B) {
    GammaProduct g("two-parameter shifted Gaussian integral, B" + std::to_string(n));
    g.sign((static_cast<long>(n) * m1) % 2 == 0 ? 1 : -1);
    g.pow2(Param(n * m1 - n));
    for (int i = 2; i <= n; ++i) g.factor(Param(i), -1);
    for (int j = 1; j <= n; ++j) {
      g.gamma(Param(m1 + (j - 1) * m2)).gamma(Param(2 * m1 + 2 * (j - 1) * m2), -1);
      g.gamma(Param(m2)).gamma(Param(j * m2), -1);
    }
    return g.result();
  }
  GammaProduct g("two-parameter shifted Gaussian integral, F4");
  const int s = m1 + m2;
  g.pow2(Param(12 * m1 - 7)).factor(Param(9), -1);
  g.gamma(Param(s)).gamma(Param(3 * s)).gamma(Param(4 * s), -1).gamma(Param(6 * s), -1);
  for (int mj : {m1, m2}) {
    g.gamma(Param(mj), 2).gamma(Param(mj + s));
    g.gamma(Param(2 * mj), -1).gamma(Param(3 * mj), -1).gamma(Param(2 * mj + 2 * s), -1);
  }
  return g.result();
}

// Frequencies k_0..k_m of the Darboux chain cos(k_j phi) for the configuration
// A^q_{(m, mt, 1^l)}: k_j = q j up to min(m - mt, m - 1), then
// q (m - mt + 2j) for j = 1..mt-1, and k_m = q (m + mt + l).
inline std::vector<long> dihedral_frequencies(int m, int mt, int l, int q) {
  if (m < 1 || q < 1 || mt < 0 || mt > m || l < 0 || l % 2 != 0) {
    throw UsageError("need m >= mt >= 0, m, q >= 1 and l even");
  }
  std::vector<long> k;
  for (int j = 0; j <= std::min(m - mt, m - 1); ++j) k.push_back(static_cast<long>(q) * j);
  for (int j = 1; j <= mt - 1; ++j) k.push_back(static_cast<long>(q) * (m - mt + 2 * j));
  k.push_back(static_cast<long>(q) * (m + mt + l));
  if (static_cast<int>(k.size()) != m + 1) throw UsageError("inconsistent frequency listing");
  return k;
}

// phi(0,0) = (-1)^{q(m+mt)} 2 Gamma(qN + 1) prod_{j<m} (k_m + k_j)/(k_m - k_j), N = m + mt + l.
inline ClosedFormValue phi00_dihedral_wronskian(int m, int mt, int l, int q) {
  const auto k = dihedral_frequencies(m, mt, l, q);
  const long big_n = static_cast<long>(q) * (m + mt + l);
  GammaProduct g("phi(0,0) of the dihedral Wronskian configuration");
  g.sign((static_cast<long>(q) * (m + mt)) % 2 == 0 ? 1 : -1);
  g.factor(Param(2)).gamma(Param(big_n + 1));
  for (int j = 0; j < m; ++j) g.factor(Param(Rational(k[m] + k[j], k[m] - k[j])));
  return g.result();
}

// M = (-1)^{q(m+mt)} (2^{qN-1} Gamma(qN+1) prod (k_m^2 - k_j^2))^{-1}.
inline ClosedFormValue mm_2d(int m, int mt, int l, int q) {
  const auto k = dihedral_frequencies(m, mt, l, q);
  const long big_n = static_cast<long>(q) * (m + mt + l);
  GammaProduct g("generalised Macdonald-Mehta integral, 2D");
  g.sign((static_cast<long>(q) * (m + mt)) % 2 == 0 ? 1 : -1);
  g.pow2(Param(1 - big_n)).gamma(Param(big_n + 1), -1);
  for (int j = 0; j < m; ++j) g.factor(Param(k[m] * k[m] - k[j] * k[j]), -1);
  return g.result();
}

// Dotsenko-Fateev integral J.
inline ClosedFormValue dotsenko_fateev(int n, int m, const Param& alpha, const Param& beta, const Param& rho,
                                       Variant variant = Variant::corrected) {
  GammaProduct g("Dotsenko-Fateev integral");
  const Param one(1);
  const Param inv_rho = one / rho;
  g.power(rho, Param(2 * n * m));
  for (int k = 1; k <= m; ++k) detail::multiply_phase_ratio(g, -rho, k);
  for (int k = 1; k <= n; ++k) detail::multiply_phase_ratio(g, -inv_rho, k);
  for (int j = 2; j <= n; ++j) g.gamma_ratio(Param(j) * inv_rho, inv_rho, j, 1);
  for (int j = 1; j <= m; ++j) {
    if (j == 1 && n == 0) continue;
    g.gamma_ratio(Param(j) * rho - Param(n), rho, j, 1);
  }
  for (int j = 0; j < n; ++j) {
    g.gamma(one - alpha * inv_rho + Param(j) * inv_rho);
    g.gamma(one - beta * inv_rho + Param(j) * inv_rho);
    g.gamma(Param(2 - 2 * m) - (alpha + beta + Param(n - 1 + j)) * inv_rho, -1);
  }
  const Param ab = variant == Variant::corrected ? alpha + beta : Param(2) * alpha;
  for (int j = 0; j < m; ++j) {
    g.gamma(Param(1 - n) + alpha + Param(j) * rho);
    g.gamma(Param(1 - n) + beta + Param(j) * rho);
    g.gamma(Param(2 - n) + ab + Param(m - 1 + j) * rho, -1);
  }
  return g.result();
}

// Deformed A(n,m) integral with t-variables n and tau-variables m.
// Corrected phase: (-1)^{nm} e^{-pi i (m(m-1) rho / 2 + n(n-1) / (2 rho))}.
inline ClosedFormValue m_deformed_a(int n, int m, const Param& rho, Variant variant = Variant::corrected) {
  GammaProduct g("deformed A(n,m) Macdonald-Mehta integral");
  const Param one(1);
  const Param inv_rho = one / rho;
  if (variant == Variant::corrected) {
    g.sign((n * m) % 2 == 0 ? 1 : -1);
    g.phase(-(Param(m * (m - 1)) * rho / Param(2) + Param(n * (n - 1)) * inv_rho / Param(2)));
  } else {
    g.sign(m % 2 == 0 ? 1 : -1);
    g.phase(-(Param(m * (m - 1)) * rho + Param(n * (n - 1)) * inv_rho / Param(2)));
  }
  for (int j = 1; j <= m; ++j) {
    for (int i = 1; i <= n; ++i) g.factor(Param(i) - Param(j) * rho, -1);
  }
  for (int i = 1; i <= n; ++i) g.gamma(one - inv_rho).gamma(one - Param(i) * inv_rho, -1);
  for (int j = 1; j <= m; ++j) g.gamma(one - rho).gamma(one - Param(j) * rho, -1);
  return g.result();
}

// phi(0,0) for A_m(p): (-1)^{m + p m(m-1)/2} prod Gamma(p j + 2) / Gamma(p + 1).
inline ClosedFormValue phi00_deformed_a(int m, int p) {
  GammaProduct g("phi(0,0) of A_m(p)");
  g.sign((m + static_cast<long>(p) * m * (m - 1) / 2) % 2 == 0 ? 1 : -1);
  for (int j = 1; j <= m; ++j) g.gamma(Param(p * j + 2)).gamma(Param(p + 1), -1);
  return g.result();
}

// Gaussian limit M_1 of the Dotsenko-Fateev integral (one-sided exponential weights).
inline ClosedFormValue m1_deformed_b(int n, int m, const Param& alpha, const Param& rho) {
  GammaProduct g("Dotsenko-Fateev limit M_1");
  const Param one(1);
  const Param inv_rho = one / rho;
  g.power(rho, Param(2 * n * m));
  g.power(Param(-2) * rho, Param(n) * (Param(1 - 2 * m) - (alpha - Param(n) + one) * inv_rho));
  g.pow2(Param(m) * (one + alpha + Param(m - 1) * rho));
  for (int k = 1; k <= m; ++k) detail::multiply_phase_ratio(g, -rho, k);
  for (int k = 1; k <= n; ++k) detail::multiply_phase_ratio(g, -inv_rho, k);
  for (int j = 2; j <= n; ++j) g.gamma_ratio(Param(j) * inv_rho, inv_rho, j, 1);
  for (int j = 1; j <= m; ++j) {
    if (j == 1 && n == 0) continue;
    g.gamma_ratio(Param(j) * rho - Param(n), rho, j, 1);
  }
  for (int j = 0; j < n; ++j) g.gamma(one - (alpha - Param(j)) * inv_rho);
  for (int j = 0; j < m; ++j) g.gamma(Param(1 - n) + alpha + Param(j) * rho);
  return g.result();
}

// Deformed BC(n,m) integral. The corrected value is the printed one times 2^{-2(m+n)}.
inline ClosedFormValue m_deformed_bc(int n, int m, const Param& alpha, const Param& rho,
                                     Variant variant = Variant::corrected) {
  GammaProduct g("deformed BC(n,m) Macdonald-Mehta integral");
  const Param one(1);
  const Param inv_rho = one / rho;
  const Param half(make_rational(1, 2));
  g.pow2(Param(m + n) * half).pow_pi(Param(m + n) * half);
  Param e2 = Param(-2 * m * n) - Param(n) * alpha * inv_rho + Param(n * (n - 1)) * inv_rho + Param(m) * alpha +
             Param(m * (m - 1)) * rho;
  if (variant == Variant::as_printed) e2 = e2 + Param(2 * (m + n));
  g.pow2(e2);
  g.phase(Param(m + n) * half + Param(m) * alpha - Param(n) * alpha * inv_rho);
  for (int k = 1; k <= m; ++k) {
    g.gamma(one - rho).gamma(one - Param(k) * rho, -1);
    for (int j = 1; j <= n; ++j) g.factor(Param(k) * rho - Param(j), -1);
  }
  for (int k = 1; k <= n; ++k) g.gamma(one - inv_rho).gamma(one - Param(k) * inv_rho, -1);
  for (int j = 0; j < n; ++j) g.gamma((alpha - Param(j)) * inv_rho, -1);
  for (int j = 0; j < m; ++j) g.gamma(-alpha - Param(j) * rho, -1);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < n; ++k) g.factor(alpha + Param(j) * rho - Param(k), -1);
  }
  return g.result();
}

// phi(0,0) for C_{m+1}(r,s). The corrected value is the printed one times 2^{2(m+1)}.
inline ClosedFormValue phi00_deformed_c(int m, int r, int s, Variant variant = Variant::corrected) {
  if ((2 * r + 1) % (2 * s + 1) != 0) throw IntegralityViolation("(2r+1)/(2s+1) is not an integer");
  const int p = (2 * r + 1) / (2 * s + 1);
  GammaProduct g("phi(0,0) of C_{m+1}(r,s)");
  const Param half(make_rational(1, 2));
  g.sign((static_cast<long>(m) * r + s) % 2 == 0 ? 1 : -1);
  Param e2 = Param(s) - Param(make_rational(3, 2)) + Param(m * p) * (Param(s) - half + Param(m));
  if (variant == Variant::corrected) e2 = e2 + Param(2 * (m + 1));
  g.pow2(e2);
  g.pow2(-Param(m + 1) * half).pow_pi(-Param(m + 1) * half);
  g.gamma(Param(s) + half);
  for (int j = 0; j < m; ++j) {
    g.gamma(Param(j * p + r) + Param(make_rational(3, 2)));
    g.gamma(Param(j * p + p + 2)).gamma(Param(p + 1), -1);
  }
  return g.result();
}

}  // namespace bamm
