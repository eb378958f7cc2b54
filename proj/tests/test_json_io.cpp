#include <gtest/gtest.h>

#include "bamm/baker_akhiezer.hpp"
#include "bamm/json_io.hpp"

using namespace bamm;

TEST(Json, RationalAndScalarRoundTrip) {
  Rational big(Integer("123456789012345678901234567891"), Integer(7));
  big.canonicalize();
  EXPECT_EQ(rational_from_json(rational_to_json(big)), big);
  EXPECT_TRUE(rational_to_json(big)[0].is_string());
  const Scalar s(make_rational(3, 4), make_rational(-5, 2), 3);
  EXPECT_EQ(scalar_from_json(scalar_to_json(s), 3), s);
  EXPECT_THROW(rational_from_json(json::array({1})), UsageError);
}

TEST(Json, RankOneBakerAkhiezerGolden) {
  const auto a = *build_coxeter(Group::A, 1).exact;
  const auto j = exppoly_to_json(construct_berest(a), a);
  const auto golden = json::parse(R"j({
    "arrangement": {"dimension": 1, "field": {"d": 2},
                    "vectors": [{"coords": [[0, 1, 1, 1]], "multiplicity": 1}]},
    "form": "P(x, lambda) exp((lambda, x))",
    "phi00": [-2, 1, 0, 1],
    "terms": [{"x_exponents": [0], "lambda_exponents": [0], "coeff": [-2, 1, 0, 1]},
              {"x_exponents": [1], "lambda_exponents": [1], "coeff": [2, 1, 0, 1]}]
  })j");
  EXPECT_EQ(j, golden) << j.dump(2);
}

TEST(Json, ArrangementRoundTrip) {
  const auto a = *build_coxeter(Group::B, 3).exact;
  const auto b = arrangement_from_json(arrangement_to_json(a));
  EXPECT_EQ(arrangement_to_json(b), arrangement_to_json(a));
  EXPECT_THROW(arrangement_from_json(json::parse(R"({"vectors": []})")), UsageError);
}

TEST(Json, ReportLayout) {
  ReportRow r{"c1", "ref", cplx(0.1 + 0.2, 0.0), cplx(0.3, 0.0), 1e-17, relative_error(0.1 + 0.2, 0.3), 1e-12, true, ""};
  const auto j = report_to_json(quad_config_to_json(QuadConfig{}), {r});
  EXPECT_EQ(j["version"], report_version);
  EXPECT_EQ(j["rows"][0]["route_a"]["re"].get<double>(), 0.3);
  EXPECT_EQ(j["config"]["method"], "auto");
  EXPECT_FALSE(j["rows"][0].contains("note"));
}

TEST(Json, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
  ReportRow r{"a,b", "ref", cplx(1, 0), cplx(1, 0), 0, 0, 1e-9, true, ""};
  const auto csv = rows_to_csv({r});
  EXPECT_NE(csv.find("\"a,b\",ref,1,0,1,0,0,0,1e-09,true"), std::string::npos) << csv;
}
