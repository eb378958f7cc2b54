#pragma once

// End-to-end acceptance suite: each criterion compares independent routes
// (symbolic, closed form, quadrature) and records one row per comparison.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "bamm/baker_akhiezer.hpp"
#include "bamm/closed_forms.hpp"
#include "bamm/json_io.hpp"
#include "bamm/quadrature.hpp"
#include "bamm/wronskian2d.hpp"

namespace bamm {

enum class Suite { fast, full };

struct AcceptanceOptions {
  Suite suite = Suite::fast;
  std::uint64_t seed = 0;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<ReportRow> rows;
  bool pass() const {
    if (rows.empty()) return false;
    for (const auto& r : rows) {
      if (!r.pass) return false;
    }
    return true;
  }
};

namespace detail {

inline ReportRow numeric_row(std::string id, std::string ref, cplx a, cplx b, double err, double tol_rel,
                             double tol_abs = 0.0) {
  ReportRow r;
  r.case_id = std::move(id);
  r.reference = std::move(ref);
  r.route_a = a;
  r.route_b = b;
  r.error_est = err;
  r.rel_err = relative_error(a, b);
  r.tol = tol_rel;
  r.pass = std::abs(a - b) <= std::max(tol_rel * std::max(std::abs(a), std::abs(b)), tol_abs);
  return r;
}

inline ReportRow exact_row(std::string id, std::string ref, const Scalar& a, const Scalar& b) {
  ReportRow r;
  r.case_id = std::move(id);
  r.reference = std::move(ref);
  r.route_a = a.to_double();
  r.route_b = b.to_double();
  r.rel_err = relative_error(r.route_a, r.route_b);
  r.pass = a == b;
  r.note = "exact: " + a.to_string() + " vs " + b.to_string();
  return r;
}

inline ReportRow flag_row(std::string id, std::string ref, bool ok, std::string note) {
  ReportRow r;
  r.case_id = std::move(id);
  r.reference = std::move(ref);
  r.pass = ok;
  r.note = std::move(note);
  return r;
}

inline ReportRow exception_row(const std::string& id, const std::exception& e) {
  return flag_row(id, "exception", false, e.what());
}

inline std::string mtag(int m) { return "m" + std::to_string(m); }

inline Scalar exact_of(const ClosedFormValue& v) {
  if (!v.exact) throw Error("closed form has no exact value: " + v.source);
  return *v.exact;
}

struct IntegralCase {
  std::string id;
  Integrand integrand;
  ContourSpec first;
  ContourSpec second;
  QuadConfig cfg;
};

inline QuadConfig base_config(const AcceptanceOptions& o) {
  QuadConfig c;
  c.seed = o.seed;
  return c;
}

struct Cor22Case {
  std::string id;
  Arrangement arrangement;
  std::vector<std::pair<std::string, Scalar>> exact_phi00;
};

inline std::vector<Cor22Case> cor22_cases(const AcceptanceOptions& o) {
  std::vector<Cor22Case> cs;
  const int max_a1 = 3, max_a2 = 2;
  for (int m = 1; m <= max_a1; ++m) {
    auto s = build_coxeter(Group::A, 1, Normalization::norm2, {m});
    cs.push_back({"A1-" + mtag(m), *s.exact, {{"inverse contour Gaussian", exact_of(contour_gaussian(s.datum, m)).inverse()}}});
  }
  for (int m = 1; m <= max_a2; ++m) {
    auto s = build_coxeter(Group::A, 2, Normalization::norm2, {m});
    cs.push_back({"A2-" + mtag(m), *s.exact, {{"inverse contour Gaussian", exact_of(contour_gaussian(s.datum, m)).inverse()}}});
  }
  {
    auto s = build_coxeter(Group::B, 2);
    cs.push_back({"B2-m1", *s.exact, {{"inverse contour Gaussian", exact_of(contour_gaussian(s.datum, 1)).inverse()}}});
  }
  {
    auto s = build_coxeter(Group::I, 4);
    cs.push_back({"I2(4)-m1", *s.exact,
                  {{"inverse contour Gaussian", exact_of(contour_gaussian(s.datum, 1)).inverse()},
                   {"dihedral Wronskian phi(0,0)", exact_of(phi00_dihedral_wronskian(1, 1, 0, 2))}}});
  }
  for (int p = 1; p <= 3; ++p) {
    auto [a, d] = build_deformed_a(1, p);
    cs.push_back({"A1(" + std::to_string(p) + ")", a, {{"deformed A phi(0,0)", exact_of(phi00_deformed_a(1, p))}}});
  }
  {
    auto [a, d] = build_deformed_c(1, 1, 0);
    cs.push_back({"C2(1,0)", a, {{"deformed C phi(0,0)", exact_of(phi00_deformed_c(1, 1, 0))}}});
  }
  if (o.suite == Suite::full) {
    auto s = build_coxeter(Group::A, 3);
    cs.push_back({"A3-m1", *s.exact, {{"inverse contour Gaussian", exact_of(contour_gaussian(s.datum, 1)).inverse()}}});
    auto g = build_coxeter(Group::I, 2, Normalization::norm2, {2});
    cs.push_back({"I2(2)-m2", *g.exact, {{"dihedral Wronskian phi(0,0)", exact_of(phi00_dihedral_wronskian(2, 2, 0, 1))}}});
  }
  return cs;
}

}  // namespace detail

class AcceptanceSuite {
 public:
  explicit AcceptanceSuite(AcceptanceOptions o = {}) : opts_(o) {}

  // Rank-one Berest construction and axioms.
  CriterionResult criterion1() const {
    CriterionResult c{1, "Berest construction, rank one", {}};
    try {
      auto s1 = build_coxeter(Group::A, 1, Normalization::norm2, {1});
      const auto phi1 = construct_berest(*s1.exact);
      Poly expected = Poly::variable(1, Block::x, 0) * Poly::variable(1, Block::lambda, 0) * Scalar(2) -
                      Poly::constant(1, Scalar(2));
      c.rows.push_back(detail::flag_row("1/A1-m1-explicit", "Berest formula", phi1.poly == expected,
                                        "P = " + phi1.poly.to_string()));
      const std::array<long, 3> phi00 = {-2, 12, -120};
      for (int m = 1; m <= 3; ++m) {
        auto s = build_coxeter(Group::A, 1, Normalization::norm2, {m});
        const auto phi = construct_berest(*s.exact);
        const auto ax = check_axioms(phi, *s.exact);
        std::string why;
        for (const auto& f : ax.failures) why += f + "; ";
        c.rows.push_back(detail::flag_row("1/A1-" + detail::mtag(m) + "-axioms", "Baker-Akhiezer axioms", ax.all_pass(),
                                          why.empty() ? "all four axioms hold" : why));
        c.rows.push_back(detail::exact_row("1/A1-" + detail::mtag(m) + "-phi00", "phi(0,0)", value_at_origin(phi),
                                           Scalar(phi00[static_cast<std::size_t>(m - 1)])));
        c.rows.push_back(detail::exact_row("1/A1-" + detail::mtag(m) + "-phi00-closed-form", "inverse contour Gaussian",
                                           value_at_origin(phi), detail::exact_of(contour_gaussian(s.datum, m)).inverse()));
      }
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("1/error", e));
    }
    return c;
  }

  // phi(0,0) symbolic vs reciprocal shifted integral vs closed form.
  CriterionResult criterion2() {
    CriterionResult c{2, "three-route agreement for phi(0,0)", {}};
    for (const auto& cs : detail::cor22_cases(opts_)) {
      const std::string id = "2/" + cs.id;
      try {
        const Scalar phi00 = value_at_origin(construct_berest(cs.arrangement));
        for (const auto& [ref, v] : cs.exact_phi00) c.rows.push_back(detail::exact_row(id + "-exact", ref, phi00, v));
        const NumericArrangement na = cs.arrangement.numeric();
        QuadConfig cfg = detail::base_config(opts_);
        const auto in = inverse_am_squared_integrand(na);
        const auto est = best_shifted_integral(in, chamber_shifts(na, ShiftStrategy::positive_chamber, {2.5, 2.0, 1.5}), cfg);
        c.rows.push_back(detail::numeric_row(id + "-quadrature", "reciprocal of the shifted Gaussian integral",
                                             1.0 / phi00.to_double(), est.value, est.error_est, 1e-8));
        std::vector<double> opposite = est.xi;
        for (auto& x : opposite) x = -x;
        integrals_.push_back({id, in, regular_shift(na, ShiftStrategy::given, est.xi),
                              regular_shift(na, ShiftStrategy::given, opposite), cfg});
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row(id, e));
      }
    }
    return c;
  }

  // Integral identity for the Baker-Akhiezer function.
  CriterionResult criterion3() {
    CriterionResult c{3, "integral identity", {}};
    QuadConfig cfg = detail::base_config(opts_);
    cfg.tol_abs = 1e-10;
    auto run = [&](const std::string& id, const Arrangement& a, const ExpPoly& phi, std::vector<cplx> l,
                   std::vector<cplx> m, double tol_rel) {
      try {
        QuadConfig rc = cfg;
        rc.tol_rel = std::max(cfg.tol_rel, tol_rel / 10);
        const auto in = identity_integrand(phi, a, l, m);
        const auto s1 = regular_shift(a, ShiftStrategy::positive_chamber);
        const auto s2 = regular_shift(a, ShiftStrategy::negative_chamber);
        const auto est = shifted_gaussian_integral(in, s1, rc);
        const cplx rhs = identity_rhs(phi, l, m);
        c.rows.push_back(detail::numeric_row(id, "Gaussian identity", rhs, est.value, est.error_est, tol_rel, 1e-10));
        integrals_.push_back({id, in, s1, s2, rc});
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row(id, e));
      }
    };
    try {
      auto s = build_coxeter(Group::A, 1);
      const auto phi = construct_berest(*s.exact);
      const std::vector<std::pair<double, double>> pairs = {{0, 0}, {1, 1}, {1, 2}, {0.5, -1}, {2, 0.3}};
      for (const auto& [l, m] : pairs) {
        run("3/A1-(" + format15(l) + "," + format15(m) + ")", *s.exact, phi, {l}, {m}, 1e-8);
      }
      auto s2 = build_coxeter(Group::A, 2);
      const auto phi2 = construct_berest(*s2.exact);
      run("3/A2-pair1", *s2.exact, phi2, {0.5, -0.5, 0}, {0.2, 0.3, -0.5}, 1e-6);
      run("3/A2-pair2", *s2.exact, phi2, {1, 0, -1}, {0, 1, -1}, 1e-6);
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("3/error", e));
    }
    return c;
  }

  // Every integral of criteria 2 and 3 on the opposite chamber.
  CriterionResult criterion4() const {
    CriterionResult c{4, "independence of the shift", {}};
    for (const auto& ic : integrals_) {
      try {
        const auto r = contour_independence_check(ic.integrand, ic.first, ic.second, ic.cfg);
        ReportRow row = detail::numeric_row("4/" + ic.id, "second chamber", r.first.value, r.second.value,
                                            r.tolerance, 0.0, r.tolerance);
        c.rows.push_back(row);
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row("4/" + ic.id, e));
      }
    }
    if (integrals_.empty()) c.rows.push_back(detail::flag_row("4/none", "second chamber", false, "no integrals recorded"));
    return c;
  }

  // Branch factor: shifted integral over absolute integral.
  CriterionResult criterion5() const {
    CriterionResult c{5, "branch factor of the shifted Macdonald-Mehta integral", {}};
    QuadConfig cfg = detail::base_config(opts_);
    for (int rank : {1, 2}) {
      auto s = build_coxeter(Group::A, rank);
      for (const auto& [k, num] : std::vector<std::pair<double, int>>{{0.25, 1}, {0.5, 2}, {0.75, 3}}) {
        const std::string id = "5/A" + std::to_string(rank) + "-k" + std::to_string(num) + "/4";
        try {
          QuadConfig kc = cfg;
          kc.tol_rel = 1e-8;
          if (num == 2) kc.tol_abs = 1e-10;
          const auto est = best_shifted_integral(mm_branch_integrand(s.numeric, k),
                                                 chamber_shifts(s.numeric, ShiftStrategy::positive_chamber), kc);
          const double absolute = absolute_mm_integral(s.numeric, k);
          const cplx factor = contour_factor_equal(s.datum, Param(make_rational(num, 4))).value;
          if (num == 2) {
            ReportRow r = detail::numeric_row(id, "odd integrand vanishes", 0.0, est.value, est.error_est, 0.0, 1e-9);
            c.rows.push_back(r);
          } else {
            c.rows.push_back(detail::numeric_row(id, "contour factor", factor, est.value / absolute, est.error_est / absolute, 1e-7));
          }
        } catch (const std::exception& e) {
          c.rows.push_back(detail::exception_row(id, e));
        }
      }
    }
    return c;
  }

  // Two-parameter normalisation bridges.
  CriterionResult criterion6() const {
    CriterionResult c{6, "two-parameter bridges", {}};
    try {
      const Scalar quarter(make_rational(1, 4));
      const Scalar cg2 = detail::exact_of(contour_gaussian_two_param(TwoParamFamily::B, 2, 1, 1));
      c.rows.push_back(detail::exact_row("6/B2-two-param", "two-parameter contour Gaussian", cg2, Scalar(make_rational(1, 12))));
      auto b2 = build_coxeter(Group::B, 2);
      const Scalar cg = detail::exact_of(contour_gaussian(b2.datum, 1));
      c.rows.push_back(detail::exact_row("6/B2-bridge", "normalisation bridge", cg2 * quarter, cg));
      c.rows.push_back(detail::exact_row("6/B2-value", "contour Gaussian", cg, Scalar(make_rational(1, 48))));
      QuadConfig cfg = detail::base_config(opts_);
      const auto est = shifted_gaussian_integral(inverse_am_squared_integrand(b2.numeric),
                                                 regular_shift(b2.numeric, ShiftStrategy::positive_chamber), cfg);
      c.rows.push_back(detail::numeric_row("6/B2-quadrature", "shifted integral", cg.to_double(), est.value, est.error_est, 1e-7));
      auto b2o = build_coxeter(Group::B, 2, Normalization::orbitwise, {1, 1});
      const auto est2 = shifted_gaussian_integral(inverse_am_squared_integrand(b2o.numeric),
                                                  regular_shift(b2o.numeric, ShiftStrategy::positive_chamber), cfg);
      c.rows.push_back(detail::numeric_row("6/B2-orbitwise-quadrature", "shifted integral, short roots e_j",
                                           cg2.to_double(), est2.value, est2.error_est, 1e-7));
      auto f4 = build_coxeter(Group::F, 4);
      for (int m = 1; m <= 2; ++m) {
        Scalar scale(1);
        for (int i = 0; i < 12 * m; ++i) scale = scale * Scalar(make_rational(1, 2));
        const Scalar f4cg2 = detail::exact_of(contour_gaussian_two_param(TwoParamFamily::F4, 4, m, m));
        c.rows.push_back(detail::exact_row("6/F4-contour-bridge-" + detail::mtag(m), "normalisation bridge",
                                           f4cg2 * scale, detail::exact_of(contour_gaussian(f4.datum, m))));
        const Scalar f4mm2 = detail::exact_of(mm_two_param(TwoParamFamily::F4, 4, Param(m), Param(m)));
        c.rows.push_back(detail::exact_row("6/F4-mm-bridge-" + detail::mtag(m), "normalisation bridge", f4mm2,
                                           detail::exact_of(mm_coxeter(f4.datum, Param(m))) * scale));
      }
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("6/error", e));
    }
    return c;
  }

  // Bilinear form on quasi-invariants.
  CriterionResult criterion7() const {
    CriterionResult c{7, "bilinear form", {}};
    QuadConfig cfg = detail::base_config(opts_);
    for (const std::string label : {"A1", "I2(2)"}) {
      try {
        auto [g, r] = parse_group(label);
        auto s = build_coxeter(g, r);
        const auto& a = *s.exact;
        const Scalar phi00 = value_at_origin(construct_berest(a));
        const Poly one = Poly::constant(a.dimension(), Scalar(1));
        const auto e1 = bilinear_form(one, one, a, phi00, cfg);
        c.rows.push_back(detail::numeric_row("7/" + label + "-(1,1)", "unit norm", 1.0, e1.value, e1.error_est, 0.0, 1e-9));
        const Poly w = m_discriminant(a);
        const auto e2 = bilinear_form(w, w, a, phi00, cfg);
        c.rows.push_back(detail::numeric_row("7/" + label + "-(w,w)", "norm of the m-discriminant",
                                             wm_norm(s.datum, 1).value, e2.value, e2.error_est, 1e-7));
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row("7/" + label, e));
      }
    }
    return c;
  }

  // Planar Wronskian configurations.
  CriterionResult criterion8() const {
    CriterionResult c{8, "planar Wronskian configurations", {}};
    std::vector<std::array<int, 4>> tuples = {{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 1, 0, 2}, {2, 1, 0, 1}, {1, 1, 2, 1}};
    if (opts_.suite == Suite::full) {
      tuples.push_back({2, 0, 2, 1});
      tuples.push_back({3, 1, 2, 1});
      tuples.push_back({1, 0, 2, 2});
    }
    QuadConfig cfg = detail::base_config(opts_);
    for (const auto& t : tuples) {
      const std::string id = "8/(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + "," +
                             std::to_string(t[3]) + ")";
      try {
        const auto fz = factorize_q(t[0], t[1], t[2], t[3]);
        c.rows.push_back(detail::numeric_row(id + "-residual", "reconstruction", 0.0, fz.residual, 0.0, 0.0, 1e-10));
        c.rows.push_back(detail::exact_row(id + "-|A|^2", "leading coefficient", Scalar(fz.a_abs_squared),
                                           Scalar(Rational(fz.expected_abs * fz.expected_abs))));
        c.rows.push_back(detail::numeric_row(id + "-angle-sum", "sum of angles", 0.0, fz.angle_sum_error, 0.0, 0.0, 1e-10));
        bool inside = !fz.repeated_angles;
        for (double a : fz.angles) inside = inside && a > 0 && a < M_PI && std::abs(a - M_PI / 2) > 1e-10;
        c.rows.push_back(detail::flag_row(id + "-angles", "angles in (0, pi), simple, not pi/2", inside, ""));
        const Scalar cf = detail::exact_of(mm_2d(t[0], t[1], t[2], t[3]));
        c.rows.push_back(detail::exact_row(id + "-mm-identity", "M = (A^2 2^{(q-2)N} phi(0,0))^{-1}", cf,
                                           Scalar(mm_2d_from_factorization(fz))));
        const auto est = wronskian_mm_quadrature(fz, cfg);
        c.rows.push_back(detail::numeric_row(id + "-quadrature", "planar quadrature", cf.to_double(), est.value, est.error_est, 1e-6));
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row(id, e));
      }
    }
    return c;
  }

  // Dotsenko-Fateev and deformed Macdonald-Mehta integrals.
  CriterionResult criterion9() const {
    CriterionResult c{9, "deformed integrals", {}};
    const std::vector<std::array<double, 3>> points = {
        {1.0, 1.0, -1.0}, {0.5, 1.5, -2.0}, {0.3, 0.7, -1.5}, {2.0, 0.25, -3.0}, {1.2, 2.2, -0.7}};
    for (const auto& [al, be, rho] : points) {
      const std::string tag = "(" + format15(al) + "," + format15(be) + "," + format15(rho) + ")";
      try {
        const double beta01 = boost::math::beta(al + 1.0, be + 1.0);
        c.rows.push_back(detail::numeric_row("9/DF-(0,1)" + tag, "Beta integral", beta01,
                                             dotsenko_fateev(0, 1, Param(al), Param(be), Param(rho)).value, 0.0, 1e-12));
        const double beta10 = boost::math::beta(1.0 - al / rho, 1.0 - be / rho);
        c.rows.push_back(detail::numeric_row("9/DF-(1,0)" + tag, "Beta integral", beta10,
                                             dotsenko_fateev(1, 0, Param(al), Param(be), Param(rho)).value, 0.0, 1e-12));
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row("9/DF" + tag, e));
      }
    }
    QuadConfig cfg = detail::base_config(opts_);
    auto deformed_a = [&](int n, int m, int rho, double tol) {
      const std::string id = "9/MA(" + std::to_string(n) + "," + std::to_string(m) + "," + std::to_string(rho) + ")";
      try {
        const auto cf = m_deformed_a(n, m, Param(rho));
        const auto in = deformed_integrand(DeformedKind::A, n, m, rho);
        const auto est = shifted_gaussian_integral(in, deformed_shift(in, DeformedKind::A, n, m), cfg);
        c.rows.push_back(detail::numeric_row(id + "-quadrature", "deformed A integral", cf.value, est.value, est.error_est, tol));
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row(id, e));
      }
    };
    try {
      c.rows.push_back(detail::exact_row("9/MA(1,1,-1)-exact", "deformed A closed form",
                                         detail::exact_of(m_deformed_a(1, 1, Param(-1))), Scalar(make_rational(-1, 2))));
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("9/MA(1,1,-1)-exact", e));
    }
    deformed_a(1, 1, -1, 1e-8);
    deformed_a(1, 1, -2, 1e-7);
    deformed_a(1, 1, -3, 1e-7);
    deformed_a(2, 1, -1, 1e-5);
    try {
      auto [c2, d] = build_deformed_c(1, 1, 0);
      const Scalar phi00 = value_at_origin(construct_berest(c2));
      const auto bc = m_deformed_bc(1, 1, Param(make_rational(-3, 2)), Param(-3));
      c.rows.push_back(detail::numeric_row("9/MBC(1,1,-3/2,-3)-vs-C2(1,0)", "reciprocal Berest value",
                                           1.0 / phi00.to_double(), bc.value, 0.0, 1e-6));
      const auto in = deformed_integrand(DeformedKind::BC, 1, 1, -3.0, -1.5);
      const auto est = shifted_gaussian_integral(in, deformed_shift(in, DeformedKind::BC, 1, 1, 2.0), cfg);
      c.rows.push_back(detail::numeric_row("9/MBC(1,1,-3/2,-3)-quadrature", "deformed BC integral", bc.value, est.value,
                                           est.error_est, 1e-6));
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("9/MBC", e));
    }
    try {
      auto a2 = build_coxeter(Group::A, 2);
      const Scalar v = detail::exact_of(phi00_deformed_a(2, 1));
      c.rows.push_back(detail::exact_row("9/phiA(2,1)", "deformed A phi(0,0)", v, Scalar(-12)));
      c.rows.push_back(detail::exact_row("9/phiA(2,1)-vs-A2", "inverse contour Gaussian", v,
                                         detail::exact_of(contour_gaussian(a2.datum, 1)).inverse()));
    } catch (const std::exception& e) {
      c.rows.push_back(detail::exception_row("9/phiA", e));
    }
    return c;
  }

  // D(2,1,lambda): convergence and permutation symmetry.
  CriterionResult criterion10() const {
    CriterionResult c{10, "D(2,1,lambda) exploratory integral", {}};
    QuadConfig cfg = detail::base_config(opts_);
    cfg.tol_rel = 1e-3;
    std::vector<std::array<double, 3>> perms = {{1, 1, 2}, {1, 2, 1}, {2, 1, 1}};
    std::vector<QuadratureEstimate> ests;
    for (const auto& l : perms) {
      const std::string id = "10/(" + format15(l[0]) + "," + format15(l[1]) + "," + format15(l[2]) + ")";
      try {
        const auto est = shifted_gaussian_integral(d21_integrand(l[0], l[1], l[2]), d21_shift(l[0], l[1], l[2], 1.5), cfg);
        bool shrinks = est.history.size() >= 3;
        for (std::size_t i = 2; i < est.history.size(); ++i) {
          shrinks = shrinks && est.history[i].error_est < est.history[i - 1].error_est;
        }
        std::string trail;
        for (std::size_t i = 1; i < est.history.size(); ++i) trail += (i > 1 ? " > " : "") + format15(round15(est.history[i].error_est));
        c.rows.push_back(detail::flag_row(id + "-converges", "error estimates shrink", shrinks, trail));
        ests.push_back(est);
      } catch (const std::exception& e) {
        c.rows.push_back(detail::exception_row(id, e));
      }
    }
    for (std::size_t i = 1; i < ests.size(); ++i) {
      const double tol = ests[0].error_est + ests[i].error_est;
      c.rows.push_back(detail::numeric_row("10/permutation-" + std::to_string(i), "permutation symmetry", ests[0].value,
                                           ests[i].value, tol, 0.0, tol));
    }
    return c;
  }

  // Criteria 1 through 10.
  std::vector<CriterionResult> run_numeric() {
    integrals_.clear();
    std::vector<CriterionResult> out;
    out.push_back(criterion1());
    out.push_back(criterion2());
    out.push_back(criterion3());
    out.push_back(criterion4());
    out.push_back(criterion5());
    out.push_back(criterion6());
    out.push_back(criterion7());
    out.push_back(criterion8());
    out.push_back(criterion9());
    out.push_back(criterion10());
    return out;
  }

  json config_json() const {
    return {{"suite", opts_.suite == Suite::fast ? "fast" : "full"}, {"seed", opts_.seed},
            {"quadrature", quad_config_to_json(detail::base_config(opts_))}};
  }

  json report(const std::vector<CriterionResult>& results) const {
    std::vector<ReportRow> rows;
    for (const auto& r : results) rows.insert(rows.end(), r.rows.begin(), r.rows.end());
    return report_to_json(config_json(), rows);
  }

  // Runs criteria 1-10 twice and compares the report bodies byte for byte.
  std::vector<CriterionResult> run_all() {
    auto first = run_numeric();
    const std::string a = report(first).dump(2);
    auto second = run_numeric();
    const std::string b = report(second).dump(2);
    CriterionResult c{11, "determinism", {}};
    c.rows.push_back(detail::flag_row("11/byte-identical", "repeat run", a == b,
                                      a == b ? "identical (" + std::to_string(a.size()) + " bytes)" : "reports differ"));
    first.push_back(std::move(c));
    return first;
  }

 private:
  AcceptanceOptions opts_;
  std::vector<detail::IntegralCase> integrals_;
};

}  // namespace bamm
