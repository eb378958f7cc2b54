#pragma once

// Trigonometric Wronskians for the planar configurations A^q_{(m, mt, 1^l)}:
// exact Q = Wr[chi_0..chi_m] / Wr[chi_0..chi_{m-1}], its factorisation into
// A (sin q phi)^m (cos q phi)^mt prod sin(q phi - phi_j), and the arrangement.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "bamm/arrangement.hpp"
#include "bamm/closed_forms.hpp"
#include "bamm/quadrature.hpp"

namespace bamm {

// Element of Q(i).
struct GaussRational {
  Rational re = 0;
  Rational im = 0;

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  friend GaussRational operator+(const GaussRational& a, const GaussRational& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRational operator-(const GaussRational& a, const GaussRational& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
    const Rational n = b.norm();
    const GaussRational t = a * b.conj();
    return {t.re / n, t.im / n};
  }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
};

// Laurent polynomial in z = e^{i phi} over Q(i).
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(long k, GaussRational c) {
    Laurent l;
    l.add(k, c);
    return l;
  }
  static Laurent constant(const Rational& c) { return monomial(0, {c, 0}); }
  // cos(k phi) = (z^k + z^{-k}) / 2, sin(k phi) = (z^k - z^{-k}) / (2i)
  static Laurent cos_k(long k) {
    Laurent l;
    l.add(k, {make_rational(1, 2), 0});
    l.add(-k, {make_rational(1, 2), 0});
    return l;
  }
  static Laurent sin_k(long k) {
    Laurent l;
    l.add(k, {0, make_rational(-1, 2)});
    l.add(-k, {0, make_rational(1, 2)});
    return l;
  }

  const std::map<long, GaussRational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long min_degree() const { return c_.begin()->first; }
  long max_degree() const { return c_.rbegin()->first; }
  GaussRational coefficient(long k) const {
    auto it = c_.find(k);
    return it == c_.end() ? GaussRational{} : it->second;
  }

  void add(long k, const GaussRational& v) {
    auto& slot = c_[k];
    slot = slot + v;
    if (slot.is_zero()) c_.erase(k);
  }

  friend Laurent operator+(Laurent a, const Laurent& b) {
    for (const auto& [k, v] : b.c_) a.add(k, v);
    return a;
  }
  friend Laurent operator-(Laurent a, const Laurent& b) {
    for (const auto& [k, v] : b.c_) a.add(k, GaussRational{} - v);
    return a;
  }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ka, va] : a.c_) {
      for (const auto& [kb, vb] : b.c_) r.add(ka + kb, va * vb);
    }
    return r;
  }
  friend Laurent operator*(Laurent a, const GaussRational& s) {
    if (s.is_zero()) return {};
    for (auto& [k, v] : a.c_) v = v * s;
    return a;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }

  // d/dphi: z^k -> i k z^k
  Laurent derivative() const {
    Laurent r;
    for (const auto& [k, v] : c_) r.add(k, v * GaussRational{0, Rational(k)});
    return r;
  }

  std::complex<double> evaluate(double phi) const {
    std::complex<double> s = 0.0;
    for (const auto& [k, v] : c_) s += v.to_complex() * std::polar(1.0, static_cast<double>(k) * phi);
    return s;
  }

  // Exact quotient a / b; throws FactorizationMismatch when b does not divide a.
  friend Laurent exact_quotient(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw FactorizationMismatch("division by the zero Laurent polynomial");
    if (a.is_zero()) return {};
    Laurent rem = a;
    Laurent q;
    const long bmax = b.max_degree();
    const GaussRational lead = b.coefficient(bmax);
    const long bspan = bmax - b.min_degree();
    while (!rem.is_zero() && rem.max_degree() - rem.min_degree() >= bspan) {
      const long k = rem.max_degree() - bmax;
      const GaussRational c = rem.coefficient(rem.max_degree()) / lead;
      q.add(k, c);
      rem = rem - monomial(k, c) * b;
    }
    if (!rem.is_zero()) throw FactorizationMismatch("Laurent division leaves a remainder");
    return q;
  }

 private:
  std::map<long, GaussRational> c_;
};

// Real trigonometric polynomial: frequency k >= 0 -> (cos coefficient, sin coefficient).
class TrigPoly {
 public:
  TrigPoly() = default;

  static TrigPoly from_laurent(const Laurent& l) {
    TrigPoly t;
    for (const auto& [k, v] : l.coeffs()) {
      if (k < 0) continue;
      if (k == 0) {
        if (v.im != 0) throw Error("Laurent polynomial is not real");
        t.set(0, v.re, 0);
        continue;
      }
      const GaussRational neg = l.coefficient(-k);
      const GaussRational a = v + neg;              // cos coefficient
      const GaussRational b = (v - neg) * GaussRational{0, 1};  // sin coefficient
      if (a.im != 0 || b.im != 0) throw Error("Laurent polynomial is not real");
      t.set(k, a.re, b.re);
    }
    for (const auto& [k, v] : l.coeffs()) {
      if (k < 0 && l.coefficient(-k).is_zero()) {
        const GaussRational a = v;
        const GaussRational b = GaussRational{} - v * GaussRational{0, 1};
        if (a.im != 0 || b.im != 0) throw Error("Laurent polynomial is not real");
        t.set(-k, a.re, b.re);
      }
    }
    return t;
  }

  Laurent to_laurent() const {
    Laurent l;
    for (const auto& [k, cs] : c_) {
      if (k == 0) {
        l.add(0, {cs.first, 0});
        continue;
      }
      l = l + Laurent::cos_k(k) * GaussRational{cs.first, 0} + Laurent::sin_k(k) * GaussRational{cs.second, 0};
    }
    return l;
  }

  const std::map<long, std::pair<Rational, Rational>>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  TrigPoly derivative() const { return from_laurent(to_laurent().derivative()); }
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) { return from_laurent(a.to_laurent() * b.to_laurent()); }
  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) { return from_laurent(a.to_laurent() + b.to_laurent()); }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.c_ == b.c_; }

  double evaluate(double phi) const {
    double s = 0.0;
    for (const auto& [k, cs] : c_) s += cs.first.get_d() * std::cos(k * phi) + cs.second.get_d() * std::sin(k * phi);
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [k, cs] : c_) {
      if (cs.first != 0) s += (s.empty() ? "" : " + ") + std::string("(") + cs.first.get_str() + ")cos(" + std::to_string(k) + "phi)";
      if (cs.second != 0) s += (s.empty() ? "" : " + ") + std::string("(") + cs.second.get_str() + ")sin(" + std::to_string(k) + "phi)";
    }
    return s.empty() ? "0" : s;
  }

 private:
  void set(long k, const Rational& a, const Rational& b) {
    if (a == 0 && b == 0) {
      c_.erase(k);
    } else {
      c_[k] = {a, b};
    }
  }
  std::map<long, std::pair<Rational, Rational>> c_;
};

enum class TrigKind { cos, sin };

namespace detail {

inline Laurent determinant(std::vector<std::vector<Laurent>> m) {
  const std::size_t n = m.size();
  if (n == 0) return Laurent::constant(1);
  if (n == 1) return m[0][0];
  Laurent det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Laurent>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Laurent> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) row.push_back(m[r][c]);
      }
      minor.push_back(std::move(row));
    }
    Laurent term = m[0][j] * determinant(std::move(minor));
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

inline Laurent wronskian_laurent(const std::vector<long>& freqs, TrigKind kind) {
  const std::size_t n = freqs.size();
  std::vector<std::vector<Laurent>> m(n, std::vector<Laurent>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Laurent f = kind == TrigKind::cos ? Laurent::cos_k(freqs[j]) : Laurent::sin_k(freqs[j]);
    if (kind == TrigKind::cos && freqs[j] == 0) f = Laurent::constant(1);
    for (std::size_t r = 0; r < n; ++r) {
      m[r][j] = f;
      f = f.derivative();
    }
  }
  return determinant(std::move(m));
}

}  // namespace detail

// Wr[f_0, ..., f_m] with f_j = cos(k_j phi) or sin(k_j phi).
inline TrigPoly wronskian(const std::vector<long>& freqs, TrigKind kind) {
  std::vector<long> sorted = freqs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw UsageError("repeated frequencies: the Wronskian vanishes identically");
  }
  for (long k : freqs) {
    if (k < 0) throw UsageError("frequencies must be nonnegative");
    if (kind == TrigKind::sin && k == 0) throw UsageError("sin(0 phi) vanishes: the Wronskian is zero");
  }
  return TrigPoly::from_laurent(detail::wronskian_laurent(freqs, kind));
}

struct WronskianFactorization {
  int m = 0, mt = 0, l = 0, q = 0;
  std::vector<long> frequencies;
  Laurent q_laurent;             // Q in z = e^{i phi}
  TrigPoly q_trig;               // Q as a real trigonometric polynomial
  Rational a_abs_squared;        // |A|^2, exact
  Rational expected_abs;         // 2^{m+mt+l-1} prod (k_m - k_j)
  bool abs_matches = false;
  int a_sign = 1;
  std::vector<double> angles;    // phi_j in (0, pi)
  double angle_sum_error = 0.0;  // |sum phi_j - pi l / 2|
  double residual = 0.0;         // max relative reconstruction error over sample angles
  bool repeated_angles = false;

  double a_value() const { return a_sign * expected_abs.get_d(); }
  int total() const { return m + mt + l; }

  // A (sin q phi)^m (cos q phi)^mt prod sin(q phi - phi_j)
  double reconstruct(double phi, double a) const {
    double v = a * std::pow(std::sin(q * phi), m) * std::pow(std::cos(q * phi), mt);
    for (double t : angles) v *= std::sin(q * phi - t);
    return v;
  }
};

inline WronskianFactorization factorize_q(int m, int mt, int l, int q) {
  WronskianFactorization fz;
  fz.m = m;
  fz.mt = mt;
  fz.l = l;
  fz.q = q;
  fz.frequencies = dihedral_frequencies(m, mt, l, q);
  const auto& k = fz.frequencies;
  const std::vector<long> head(k.begin(), k.end() - 1);
  const Laurent wm = detail::wronskian_laurent(k, TrigKind::cos);
  const Laurent wm1 = detail::wronskian_laurent(head, TrigKind::cos);
  fz.q_laurent = exact_quotient(wm, wm1);
  fz.q_trig = TrigPoly::from_laurent(fz.q_laurent);

  Laurent s = Laurent::constant(1);
  for (int i = 0; i < m; ++i) s = s * Laurent::sin_k(q);
  for (int i = 0; i < mt; ++i) s = s * Laurent::cos_k(q);
  const Laurent rest = exact_quotient(fz.q_laurent, s);

  // rest = A prod sin(q phi - phi_j); times z^{lq} it is a polynomial of degree l in u = z^{2q}.
  std::vector<std::complex<double>> poly(static_cast<std::size_t>(l) + 1);
  for (const auto& [deg, c] : rest.coeffs()) {
    const long shifted = deg + static_cast<long>(l) * q;
    if (shifted < 0 || shifted % (2L * q) != 0 || shifted / (2L * q) > l) {
      throw FactorizationMismatch("Q / ((sin q phi)^m (cos q phi)^mt) has an unexpected frequency");
    }
    poly[static_cast<std::size_t>(shifted / (2L * q))] = c.to_complex();
  }
  const GaussRational lead = rest.coefficient(static_cast<long>(l) * q);
  Rational four_l = 1;
  for (int i = 0; i < l; ++i) four_l *= 4;
  fz.a_abs_squared = four_l * lead.norm();

  Rational expected = 1;
  for (int i = 0; i < m + mt + l - 1; ++i) expected *= 2;
  for (int j = 0; j < m; ++j) expected *= Rational(k[static_cast<std::size_t>(m)] - k[static_cast<std::size_t>(j)]);
  fz.expected_abs = expected;
  fz.abs_matches = fz.a_abs_squared == expected * expected;

  if (l > 0) {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(l, l);
    const std::complex<double> lc = poly[static_cast<std::size_t>(l)];
    for (int i = 0; i < l; ++i) {
      comp(i, l - 1) = -poly[static_cast<std::size_t>(i)] / lc;
      if (i > 0) comp(i, i - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(comp);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < l; ++i) roots.push_back(ces.eigenvalues()(i));
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (std::abs(std::abs(roots[i]) - 1.0) > 1e-9) throw FactorizationMismatch("angle polynomial has a root off the unit circle");
      for (std::size_t j = i + 1; j < roots.size(); ++j) {
        if (std::abs(roots[i] - roots[j]) < 1e-9) fz.repeated_angles = true;
      }
      double t = std::arg(roots[i]) / 2.0;
      if (t <= 0.0) t += M_PI;
      fz.angles.push_back(t);
    }
    std::sort(fz.angles.begin(), fz.angles.end());
  }
  const double sum = std::accumulate(fz.angles.begin(), fz.angles.end(), 0.0);
  fz.angle_sum_error = std::abs(sum - M_PI * l / 2.0);

  const double ref = M_PI / (4.0 * q * fz.total());
  const double qref = fz.q_laurent.evaluate(ref).real();
  fz.a_sign = qref / fz.reconstruct(ref, expected.get_d()) > 0 ? 1 : -1;

  const double amp = std::sqrt(fz.a_abs_squared.get_d());
  double max_q = 0.0, max_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double phi = 2.0 * M_PI * (i + 0.5 + 0.1234567 * std::sin(i + 1.0)) / 50.0;
    const double exact_q = fz.q_laurent.evaluate(phi).real();
    max_q = std::max(max_q, std::abs(exact_q));
    max_err = std::max(max_err, std::abs(exact_q - fz.reconstruct(phi, fz.a_sign * amp)));
  }
  fz.residual = max_q > 0 ? max_err / max_q : max_err;
  if (fz.residual > 1e-8) throw FactorizationMismatch("reconstruction residual " + std::to_string(fz.residual));
  return fz;
}

// Vectors sqrt(2)(-sin phi_{j,s}, cos phi_{j,s}), phi_{j,s} = (phi_j + pi s)/q, with
// phi_0 = 0 (multiplicity m), phi_{l+1} = pi/2 (multiplicity mt) and the l angles (multiplicity 1).
inline NumericArrangement emit_arrangement(int m, int mt, int l, int q, const std::vector<double>& angles) {
  if (static_cast<int>(angles.size()) != l) throw UsageError("expected l angles");
  std::vector<std::pair<double, int>> base = {{0.0, m}};
  for (double a : angles) base.push_back({a, 1});
  base.push_back({M_PI / 2.0, mt});
  std::vector<NumericVector> vs;
  for (std::size_t j = 0; j < base.size(); ++j) {
    const auto [phi, mult] = base[j];
    if (mult == 0) continue;
    for (int s = 0; s < q; ++s) {
      const double t = (phi + M_PI * s) / q;
      vs.push_back({{-std::sqrt(2.0) * std::sin(t), std::sqrt(2.0) * std::cos(t)}, mult, static_cast<int>(j)});
    }
  }
  return NumericArrangement(2, std::move(vs));
}

// 1 / (Q(phi)^2 r^{2 q N}) continued analytically to complex x, where
// Q(phi) r^{qN} = sum c_k (x1 + i x2)^{(qN+k)/2} (x1 - i x2)^{(qN-k)/2}.
inline Integrand wronskian_mm_integrand(const WronskianFactorization& fz, const NumericArrangement& lines) {
  const long deg = static_cast<long>(fz.q) * fz.total();
  std::vector<std::pair<long, std::complex<double>>> terms;
  for (const auto& [k, c] : fz.q_laurent.coeffs()) {
    if ((deg + k) % 2 != 0 || std::abs(k) > deg) throw FactorizationMismatch("Q has frequencies beyond q(m + mt + l)");
    terms.push_back({k, c.to_complex()});
  }
  Integrand in;
  in.dim = 2;
  in.label = "planar Wronskian Macdonald-Mehta integrand";
  for (const auto& v : lines.vectors()) in.singular.push_back(v.coords);
  in.f = [terms, deg](std::span<const cplx> x) {
    const cplx w = x[0] + cplx(0.0, 1.0) * x[1];
    const cplx wb = x[0] - cplx(0.0, 1.0) * x[1];
    cplx h = 0.0;
    for (const auto& [k, c] : terms) h += c * detail::int_pow(w, (deg + k) / 2) * detail::int_pow(wb, (deg - k) / 2);
    return 1.0 / (h * h);
  };
  return in;
}

// Quadrature of the planar integral over positive-chamber contours with |xi| capped at 4, 6 and 3.
inline QuadratureEstimate wronskian_mm_quadrature(const WronskianFactorization& fz, const QuadConfig& cfg = {}) {
  const NumericArrangement lines = emit_arrangement(fz.m, fz.mt, fz.l, fz.q, fz.angles);
  std::vector<ContourSpec> specs;
  for (double cap : {4.0, 6.0, 3.0}) specs.push_back(bounded_shift(lines, ShiftStrategy::positive_chamber, 2.5, cap));
  return best_shifted_integral(wronskian_mm_integrand(fz, lines), specs, cfg);
}

// (A^2 2^{(q-2)(m+mt+l)} phi(0,0))^{-1} with |A| and phi(0,0) exact.
inline Rational mm_2d_from_factorization(const WronskianFactorization& fz) {
  const auto phi = phi00_dihedral_wronskian(fz.m, fz.mt, fz.l, fz.q);
  if (!phi.exact || !phi.exact->is_rational()) throw Error("phi(0,0) has no exact rational value");
  Rational v = fz.a_abs_squared * phi.exact->rational_part();
  const int e = (fz.q - 2) * fz.total();
  for (int i = 0; i < std::abs(e); ++i) v = e > 0 ? Rational(v * 2) : Rational(v / 2);
  return 1 / v;
}

}  // namespace bamm
