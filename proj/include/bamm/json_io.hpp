#pragma once

// JSON encodings of arrangements, Baker-Akhiezer functions and verification reports.

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "bamm/arrangement.hpp"
#include "bamm/exppoly.hpp"
#include "bamm/quadrature.hpp"

namespace bamm {

using json = nlohmann::ordered_json;

inline constexpr int report_version = 1;

namespace detail {

inline json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw UsageError("expected an integer or a decimal string");
}

}  // namespace detail

// 15 significant digits.
inline double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::stod(buf);
}

inline std::string format15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline json rational_to_json(const Rational& q) {
  return json::array({detail::integer_to_json(q.get_num()), detail::integer_to_json(q.get_den())});
}

inline Rational rational_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw UsageError("expected [num, den]");
  Rational q(detail::integer_from_json(j[0]), detail::integer_from_json(j[1]));
  q.canonicalize();
  return q;
}

// a + b sqrt(d) as [a_num, a_den, b_num, b_den]
inline json scalar_to_json(const Scalar& s) {
  const auto a = rational_to_json(s.rational_part());
  const auto b = rational_to_json(s.radical_part());
  return json::array({a[0], a[1], b[0], b[1]});
}

inline Scalar scalar_from_json(const json& j, std::int64_t d) {
  if (!j.is_array() || j.size() != 4) throw UsageError("expected [a_num, a_den, b_num, b_den]");
  const Rational a = rational_from_json(json::array({j[0], j[1]}));
  const Rational b = rational_from_json(json::array({j[2], j[3]}));
  if (b == 0) return Scalar(a);
  return Scalar(a, b, d);
}

inline json complex_to_json(cplx z) { return {{"re", round15(z.real())}, {"im", round15(z.imag())}}; }

inline json arrangement_to_json(const Arrangement& a) {
  json vs = json::array();
  for (const auto& v : a.vectors()) {
    json coords = json::array();
    for (const auto& c : v.coords) coords.push_back(scalar_to_json(c));
    vs.push_back({{"coords", coords}, {"multiplicity", v.multiplicity}});
  }
  return {{"dimension", a.dimension()}, {"field", {{"d", a.radicand()}}}, {"vectors", vs}};
}

inline Arrangement arrangement_from_json(const json& j) {
  try {
    const auto dim = j.at("dimension").get<std::size_t>();
    const auto d = j.contains("field") ? j.at("field").at("d").get<std::int64_t>() : std::int64_t{1};
    std::vector<RootVector> vs;
    int orbit = 0;
    for (const auto& v : j.at("vectors")) {
      RootVector rv;
      for (const auto& c : v.at("coords")) rv.coords.push_back(scalar_from_json(c, d));
      rv.multiplicity = v.value("multiplicity", 1);
      rv.orbit = v.value("orbit", orbit++);
      vs.push_back(std::move(rv));
    }
    return Arrangement(dim, std::move(vs));
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed arrangement JSON: ") + e.what());
  }
}

inline json numeric_arrangement_to_json(const NumericArrangement& a) {
  json vs = json::array();
  for (const auto& v : a.vectors()) {
    json coords = json::array();
    for (double c : v.coords) coords.push_back(round15(c));
    vs.push_back({{"coords", coords}, {"multiplicity", v.multiplicity}});
  }
  return {{"dimension", a.dimension()}, {"vectors", vs}};
}

// Terms in the canonical monomial order of the polynomial.
inline json exppoly_to_json(const ExpPoly& phi, const Arrangement& a) {
  const std::size_t n = a.dimension();
  json terms = json::array();
  for (const auto& [m, c] : phi.poly.terms()) {
    std::vector<unsigned> xe(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<unsigned> le(m.begin() + static_cast<std::ptrdiff_t>(n), m.end());
    terms.push_back({{"x_exponents", xe}, {"lambda_exponents", le}, {"coeff", scalar_to_json(c)}});
  }
  return {{"arrangement", arrangement_to_json(a)},
          {"form", "P(x, lambda) exp((lambda, x))"},
          {"phi00", scalar_to_json(phi.poly.constant_term())},
          {"terms", terms}};
}

struct ReportRow {
  std::string case_id;
  std::string reference;
  cplx route_a;
  cplx route_b;
  double error_est = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

inline double relative_error(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline json row_to_json(const ReportRow& r) {
  json j = {{"case", r.case_id},
            {"paper_ref", r.reference},
            {"route_a", complex_to_json(r.route_a)},
            {"route_b", {{"re", round15(r.route_b.real())}, {"im", round15(r.route_b.imag())}, {"error_est", round15(r.error_est)}}},
            {"rel_err", round15(r.rel_err)},
            {"tol", r.tol},
            {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json quad_config_to_json(const QuadConfig& c) {
  const char* method = c.method == QuadMethod::automatic ? "auto" : c.method == QuadMethod::tensor_hermite ? "tensor-hermite" : "monte-carlo";
  return {{"method", method},       {"order", c.order},       {"samples", c.samples},
          {"seed", c.seed},         {"max_refinements", c.max_refinements},
          {"tol_rel", c.tol_rel},   {"tol_abs", c.tol_abs},   {"pole_distance", c.pole_distance}};
}

inline json report_to_json(const json& config, const std::vector<ReportRow>& rows) {
  json rs = json::array();
  for (const auto& r : rows) rs.push_back(row_to_json(r));
  return {{"version", report_version}, {"config", config}, {"rows", rs}};
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

inline std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  std::string out = "case,paper_ref,route_a_re,route_a_im,route_b_re,route_b_im,error_est,rel_err,tol,pass\n";
  for (const auto& r : rows) {
    out += csv_field(r.case_id) + "," + csv_field(r.reference) + "," + format15(r.route_a.real()) + "," +
           format15(r.route_a.imag()) + "," + format15(r.route_b.real()) + "," + format15(r.route_b.imag()) + "," +
           format15(r.error_est) + "," + format15(r.rel_err) + "," + format15(r.tol) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace bamm
