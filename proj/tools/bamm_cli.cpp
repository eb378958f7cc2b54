#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bamm/acceptance.hpp"
#include "bamm/baker_akhiezer.hpp"
#include "bamm/closed_forms.hpp"
#include "bamm/json_io.hpp"
#include "bamm/quadrature.hpp"
#include "bamm/wronskian2d.hpp"

namespace {

using namespace bamm;

enum Exit { ok = 0, verification_failed = 1, usage = 2, non_convergent = 3 };

struct Options {
  std::string group = "A1";
  int m = 1, m1 = 1, m2 = 1, p = 1, r = 1, s = 0, n = 1, q = 1, l = 0, mtilde = 0;
  std::string k = "1", k1, k2;
  std::string alpha = "1", beta = "1", rho = "-1";
  std::string xi, lambda, mu;
  std::string quad = "auto";
  int order = 0;
  std::uint64_t samples = 10'000'000;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int refinements = 2;
  std::string report;
  std::string emit = "json";
  std::string suite = "fast";
  std::string arrangement;
  std::size_t budget = default_term_budget;
  bool strict = false;
  std::string family = "coxeter";
};

// Parses "1/3", "-1.5" or "2" into a parameter, keeping rationals exact.
Param parse_param(const std::string& s) {
  if (s.find('/') != std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw UsageError("cannot parse rational '" + s + "'");
    q.canonicalize();
    return Param(q);
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw UsageError("cannot parse number '" + s + "'");
    return Param(v);
  } catch (const std::logic_error&) {
    throw UsageError("cannot parse number '" + s + "'");
  }
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_param(item).value.real());
  }
  return out;
}

QuadConfig quad_config(const Options& o, double default_tol = 1e-9) {
  QuadConfig c;
  if (o.quad == "auto") {
    c.method = QuadMethod::automatic;
  } else if (o.quad == "tensor-hermite" || o.quad == "tensor") {
    c.method = QuadMethod::tensor_hermite;
  } else if (o.quad == "monte-carlo" || o.quad == "mc") {
    c.method = QuadMethod::monte_carlo;
  } else {
    throw UsageError("unknown quadrature '" + o.quad + "'");
  }
  c.order = o.order;
  c.samples = o.samples;
  c.seed = o.seed;
  c.max_refinements = o.refinements;
  c.tol_rel = o.tol > 0 ? o.tol : default_tol;
  return c;
}

void write_output(const Options& o, const std::string& text) {
  if (o.report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.report);
  if (!f) throw UsageError("cannot write '" + o.report + "'");
  f << text;
}

std::string render_rows(const Options& o, const json& config, const std::vector<ReportRow>& rows) {
  if (o.emit == "csv") return rows_to_csv(rows);
  return report_to_json(config, rows).dump(2) + "\n";
}

CoxeterSystem coxeter_from(const Options& o, std::vector<int> mults) {
  auto [g, rank] = parse_group(o.group);
  return build_coxeter(g, rank, Normalization::norm2, std::move(mults));
}

Arrangement arrangement_from(const Options& o) {
  if (!o.arrangement.empty()) {
    std::ifstream f(o.arrangement);
    if (!f) throw UsageError("cannot read '" + o.arrangement + "'");
    return arrangement_from_json(json::parse(f));
  }
  if (o.family == "deformed-a") return build_deformed_a(o.m, o.p).first;
  if (o.family == "deformed-c") return build_deformed_c(o.m, o.r, o.s).first;
  auto sys = coxeter_from(o, {o.m});
  if (!sys.exact) throw UnsupportedGroup(sys.datum.label + " has no exact coordinates in a single quadratic field");
  return *sys.exact;
}

ContourSpec contour_from(const Options& o, const NumericArrangement& na, ShiftStrategy fallback) {
  if (o.xi.empty()) return regular_shift(na, fallback);
  const auto xi = parse_vector(o.xi);
  return regular_shift(na, ShiftStrategy::given, xi);
}

int cmd_closed_form(const std::string& kind, const Options& o) {
  const Variant variant = o.strict ? Variant::as_printed : Variant::corrected;
  ClosedFormValue v;
  if (kind == "coxeter") {
    v = contour_gaussian(coxeter_from(o, {1}).datum, o.m);
  } else if (kind == "mm") {
    v = mm_coxeter(coxeter_from(o, {1}).datum, parse_param(o.k));
  } else if (kind == "factor") {
    v = contour_factor_equal(coxeter_from(o, {1}).datum, parse_param(o.k));
  } else if (kind == "gw") {
    v = gw_product(coxeter_from(o, {1}).datum, o.m);
  } else if (kind == "wm-norm") {
    v = wm_norm(coxeter_from(o, {1}).datum, o.m);
  } else if (kind == "two-param" || kind == "mm-two-param" || kind == "factor-two-param") {
    auto [g, rank] = parse_group(o.group);
    if (g != Group::B && g != Group::F) throw UsageError("two-parameter forms exist for B_n and F4");
    const TwoParamFamily fam = g == Group::B ? TwoParamFamily::B : TwoParamFamily::F4;
    if (kind == "two-param") {
      v = contour_gaussian_two_param(fam, rank, o.m1, o.m2);
    } else {
      const Param a = parse_param(o.k1.empty() ? std::to_string(o.m1) : o.k1);
      const Param b = parse_param(o.k2.empty() ? std::to_string(o.m2) : o.k2);
      v = kind == "mm-two-param" ? mm_two_param(fam, rank, a, b) : contour_factor_two_param(fam, rank, a, b);
    }
  } else if (kind == "dihedral-phi00") {
    v = phi00_dihedral_wronskian(o.m, o.mtilde, o.l, o.q);
  } else if (kind == "mm2d") {
    v = mm_2d(o.m, o.mtilde, o.l, o.q);
  } else if (kind == "df") {
    v = dotsenko_fateev(o.n, o.m, parse_param(o.alpha), parse_param(o.beta), parse_param(o.rho), variant);
  } else if (kind == "deformed-a") {
    v = m_deformed_a(o.n, o.m, parse_param(o.rho), variant);
  } else if (kind == "phi-a") {
    v = phi00_deformed_a(o.m, o.p);
  } else if (kind == "m1") {
    v = m1_deformed_b(o.n, o.m, parse_param(o.alpha), parse_param(o.rho));
  } else if (kind == "bc") {
    v = m_deformed_bc(o.n, o.m, parse_param(o.alpha), parse_param(o.rho), variant);
  } else if (kind == "phi-c") {
    v = phi00_deformed_c(o.m, o.r, o.s, variant);
  } else {
    throw UsageError("unknown closed form '" + kind + "'");
  }
  if (o.emit == "csv") {
    write_output(o, "source,re,im,exact\n" + csv_field(v.source) + "," + format15(v.value.real()) + "," +
                        format15(v.value.imag()) + "," + (v.exact ? v.exact->to_string() : std::string()) + "\n");
  } else {
    json j = {{"source", v.source}, {"value", complex_to_json(v.value)}};
    j["exact"] = v.exact ? json(v.exact->to_string()) : json(nullptr);
    write_output(o, j.dump(2) + "\n");
  }
  return ok;
}

ReportRow compare(const std::string& id, const std::string& ref, cplx a, const QuadratureEstimate& b, double tol,
                  double tol_abs = 0.0) {
  ReportRow r;
  r.case_id = id;
  r.reference = ref;
  r.route_a = a;
  r.route_b = b.value;
  r.error_est = b.error_est;
  r.rel_err = relative_error(a, b.value);
  r.tol = tol;
  r.pass = std::abs(a - b.value) <= std::max(tol * std::max(std::abs(a), std::abs(b.value)), tol_abs);
  r.note = b.method;
  return r;
}

int cmd_verify(const std::string& kind, const Options& o) {
  std::vector<ReportRow> rows;
  json config = {{"case", kind}, {"group", o.group}};
  if (kind == "identity") {
    const Arrangement a = arrangement_from(o);
    const auto phi = construct_berest(a, o.budget);
    auto lv = parse_vector(o.lambda), mv = parse_vector(o.mu);
    std::vector<cplx> l(lv.begin(), lv.end()), m(mv.begin(), mv.end());
    QuadConfig cfg = quad_config(o);
    cfg.tol_abs = 1e-10;
    const auto est = shifted_gaussian_integral(identity_integrand(phi, a, l, m), contour_from(o, a.numeric(), ShiftStrategy::positive_chamber), cfg);
    rows.push_back(compare("identity", "Gaussian identity", identity_rhs(phi, l, m), est, o.tol > 0 ? o.tol : 1e-8, 1e-10));
  } else if (kind == "contour-gaussian" || kind == "xi-independence") {
    const Arrangement a = arrangement_from(o);
    const Scalar phi00 = value_at_origin(construct_berest(a, o.budget));
    const auto na = a.numeric();
    const auto in = inverse_am_squared_integrand(na);
    const QuadConfig cfg = quad_config(o);
    if (kind == "contour-gaussian") {
      const auto est = shifted_gaussian_integral(in, contour_from(o, na, ShiftStrategy::positive_chamber), cfg);
      rows.push_back(compare("reciprocal-phi00", "shifted integral", 1.0 / phi00.to_double(), est, o.tol > 0 ? o.tol : 1e-8));
      if (o.arrangement.empty() && o.family == "coxeter") {
        const auto cf = contour_gaussian(coxeter_from(o, {o.m}).datum, o.m);
        ReportRow r;
        r.case_id = "closed-form";
        r.reference = cf.source;
        r.route_a = phi00.to_double();
        r.route_b = cf.exact ? cf.exact->inverse().to_double() : 1.0 / cf.value;
        r.rel_err = relative_error(r.route_a, r.route_b);
        r.pass = cf.exact && cf.exact->inverse() == phi00;
        r.note = "exact " + phi00.to_string();
        rows.push_back(r);
      }
    } else {
      const auto rep = contour_independence_check(in, regular_shift(na, ShiftStrategy::positive_chamber),
                                                  regular_shift(na, ShiftStrategy::negative_chamber), cfg);
      ReportRow r = compare("xi-independence", "positive vs negative chamber", rep.first.value, rep.second, 0.0, rep.tolerance);
      r.error_est = rep.tolerance;
      rows.push_back(r);
    }
  } else if (kind == "branch-factor") {
    auto sys = coxeter_from(o, {1});
    const Param k = parse_param(o.k);
    const double kv = k.value.real();
    QuadConfig cfg = quad_config(o);
    cfg.tol_abs = 1e-10;
    const auto est = best_shifted_integral(mm_branch_integrand(sys.numeric, kv),
                                           chamber_shifts(sys.numeric, ShiftStrategy::positive_chamber), cfg);
    const double ab = absolute_mm_integral(sys.numeric, kv);
    QuadratureEstimate ratio = est;
    ratio.value /= ab;
    ratio.error_est /= ab;
    rows.push_back(compare("branch-factor", "contour factor", contour_factor_equal(sys.datum, k).value, ratio, o.tol > 0 ? o.tol : 1e-7, 1e-9));
  } else if (kind == "bilinear") {
    const Arrangement a = arrangement_from(o);
    const Scalar phi00 = value_at_origin(construct_berest(a, o.budget));
    const QuadConfig cfg = quad_config(o);
    const Poly one = Poly::constant(a.dimension(), Scalar(1));
    rows.push_back(compare("(1,1)", "unit norm", 1.0, bilinear_form(one, one, a, phi00, cfg), 0.0, 1e-9));
    const Poly w = m_discriminant(a);
    if (o.arrangement.empty() && o.family == "coxeter") {
      rows.push_back(compare("(w,w)", "norm of the m-discriminant", wm_norm(coxeter_from(o, {o.m}).datum, o.m).value,
                             bilinear_form(w, w, a, phi00, cfg), o.tol > 0 ? o.tol : 1e-7));
    }
  } else if (kind == "wronskian") {
    const auto fz = factorize_q(o.m, o.mtilde, o.l, o.q);
    config["tuple"] = {o.m, o.mtilde, o.l, o.q};
    config["Q"] = fz.q_trig.to_string();
    config["A"] = (fz.a_sign < 0 ? "-" : "") + fz.expected_abs.get_str();
    config["angles"] = fz.angles;
    config["arrangement"] = numeric_arrangement_to_json(emit_arrangement(o.m, o.mtilde, o.l, o.q, fz.angles));
    ReportRow a;
    a.case_id = "|A|";
    a.reference = "leading coefficient";
    a.route_a = std::sqrt(fz.a_abs_squared.get_d());
    a.route_b = fz.expected_abs.get_d();
    a.pass = fz.abs_matches && fz.residual <= 1e-10 && fz.angle_sum_error <= 1e-10;
    a.note = "residual " + format15(fz.residual) + ", angle sum error " + format15(fz.angle_sum_error);
    rows.push_back(a);
    const auto cf = mm_2d(o.m, o.mtilde, o.l, o.q);
    QuadConfig cfg = quad_config(o, 1e-8);
    cfg.tol_abs = 0.0;
    rows.push_back(compare("mm2d", cf.source, cf.value, wronskian_mm_quadrature(fz, cfg), o.tol > 0 ? o.tol : 1e-6));
  } else if (kind == "deformed-a" || kind == "deformed-bc") {
    const bool is_a = kind == "deformed-a";
    const Param rho = parse_param(o.rho), alpha = parse_param(o.alpha);
    const auto cf = is_a ? m_deformed_a(o.n, o.m, rho) : m_deformed_bc(o.n, o.m, alpha, rho);
    const DeformedKind dk = is_a ? DeformedKind::A : DeformedKind::BC;
    const auto in = deformed_integrand(dk, o.n, o.m, rho.value.real(), alpha.value.real());
    ContourSpec spec;
    if (o.xi.empty()) {
      spec = deformed_shift(in, dk, o.n, o.m, is_a ? 2.5 : 2.0);
    } else {
      spec.xi = parse_vector(o.xi);
      spec.branch = Branch::principal_log;
      if (!is_a && !is_ordered_shift(spec, o.n, o.m)) throw UsageError("BC shifts need xi_n > ... > xi_1 > eta_m > ... > eta_1 > 0");
    }
    rows.push_back(compare(kind, cf.source, cf.value, shifted_gaussian_integral(in, spec, quad_config(o)), o.tol > 0 ? o.tol : 1e-6));
  } else if (kind == "d21") {
    auto lv = parse_vector(o.lambda.empty() ? "1,1,2" : o.lambda);
    if (lv.size() != 3) throw UsageError("--lambda needs three values");
    QuadConfig cfg = quad_config(o, 1e-3);
    const auto est = shifted_gaussian_integral(d21_integrand(lv[0], lv[1], lv[2]), d21_shift(lv[0], lv[1], lv[2], 1.5), cfg);
    ReportRow r = compare("d21", "no closed form", est.value, est, 0.0, INFINITY);
    std::string trail;
    for (const auto& h : est.history) trail += format15(h.error_est) + " ";
    r.note = est.method + "; error estimates " + trail;
    rows.push_back(r);
  } else {
    throw UsageError("unknown verification case '" + kind + "'");
  }
  config["quadrature"] = quad_config_to_json(quad_config(o));
  write_output(o, render_rows(o, config, rows));
  for (const auto& r : rows) {
    if (!r.pass) return verification_failed;
  }
  return ok;
}

int cmd_construct(const Options& o) {
  const Arrangement a = arrangement_from(o);
  const auto phi = construct_berest(a, o.budget);
  write_output(o, exppoly_to_json(phi, a).dump(2) + "\n");
  return ok;
}

int cmd_acceptance(const Options& o) {
  if (o.suite != "fast" && o.suite != "full") throw UsageError("--suite is fast or full");
  AcceptanceSuite suite({o.suite == "fast" ? Suite::fast : Suite::full, o.seed});
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = suite.run_all();
  bool all = true;
  for (const auto& c : results) {
    std::cerr << (c.pass() ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "\n";
    all = all && c.pass();
  }
  std::cerr << "elapsed " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  std::vector<ReportRow> rows;
  for (const auto& c : results) rows.insert(rows.end(), c.rows.begin(), c.rows.end());
  write_output(o, render_rows(o, suite.config_json(), rows));
  return all ? ok : verification_failed;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--group", o.group, "Coxeter group label, e.g. A2, B3, I2(5)");
  app->add_option("--m", o.m, "multiplicity m");
  app->add_option("--m1", o.m1, "short-root multiplicity");
  app->add_option("--m2", o.m2, "long-root multiplicity");
  app->add_option("--k", o.k, "parameter k (rational like 1/4 allowed)");
  app->add_option("--k1", o.k1, "short-root parameter");
  app->add_option("--k2", o.k2, "long-root parameter");
  app->add_option("--p", o.p, "deformation integer p");
  app->add_option("--r", o.r, "deformation integer r");
  app->add_option("--s", o.s, "deformation integer s");
  app->add_option("--n", o.n, "number of t variables");
  app->add_option("--alpha", o.alpha, "alpha");
  app->add_option("--beta", o.beta, "beta");
  app->add_option("--rho", o.rho, "rho");
  app->add_option("--q", o.q, "dihedral q");
  app->add_option("--l", o.l, "number of simple angles l");
  app->add_option("--mtilde", o.mtilde, "second multiplicity m~");
  app->add_option("--xi", o.xi, "contour shift, comma separated");
  app->add_option("--lambda", o.lambda, "spectral vector lambda, comma separated");
  app->add_option("--mu", o.mu, "spectral vector mu, comma separated");
  app->add_option("--quad", o.quad, "auto | tensor-hermite | monte-carlo");
  app->add_option("--order", o.order, "Gauss-Hermite order per axis");
  app->add_option("--samples", o.samples, "Monte Carlo samples");
  app->add_option("--refinements", o.refinements, "grid doublings beyond the base order");
  app->add_option("--seed", o.seed, "Monte Carlo seed");
  app->add_option("--tol", o.tol, "relative tolerance");
  app->add_option("--report", o.report, "write output to this file");
  app->add_option("--emit", o.emit, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--arrangement", o.arrangement, "arrangement JSON file");
  app->add_option("--family", o.family, "coxeter | deformed-a | deformed-c")
      ->check(CLI::IsMember({"coxeter", "deformed-a", "deformed-c"}));
  app->add_option("--budget", o.budget, "term budget for the symbolic construction");
  app->add_flag("--strict", o.strict, "use the formulas exactly as printed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Baker-Akhiezer functions and Macdonald-Mehta integrals"};
  app.require_subcommand(1);
  Options o;
  std::string kind;

  auto* cf = app.add_subcommand("closed-form", "evaluate a closed form");
  cf->add_option("kind", kind,
                 "coxeter | mm | factor | gw | wm-norm | two-param | mm-two-param | factor-two-param | dihedral-phi00 | "
                 "mm2d | df | deformed-a | phi-a | m1 | bc | phi-c")
      ->required();
  add_common(cf, o);
  auto* verify = app.add_subcommand("verify", "compare independent routes");
  verify->add_option("case", kind,
                     "identity | contour-gaussian | xi-independence | branch-factor | bilinear | wronskian | deformed-a | "
                     "deformed-bc | d21")
      ->required();
  add_common(verify, o);
  auto* construct = app.add_subcommand("construct", "build phi(x, lambda) and print it as JSON");
  add_common(construct, o);
  auto* acceptance = app.add_subcommand("acceptance", "run the acceptance suite");
  add_common(acceptance, o);
  acceptance->add_option("--suite", o.suite, "fast | full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (*cf) return cmd_closed_form(kind, o);
    if (*verify) return cmd_verify(kind, o);
    if (*construct) return cmd_construct(o);
    if (*acceptance) return cmd_acceptance(o);
  } catch (const NonConvergent& e) {
    std::cerr << "non-convergent: " << e.what() << " (error estimate " << e.error_est << ")\n";
    return non_convergent;
  } catch (const GammaPole& e) {
    std::cerr << "gamma pole: " << e.what() << "\n";
    return usage;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const ArityMismatch& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const InvalidArrangement& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const UnsupportedGroup& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const NotRegular& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return verification_failed;
  }
  return usage;
}
