// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "lmlab/document.hpp"
#include "lmlab/errors.hpp"

using namespace lmlab;

namespace {

const Fixture& fixture(const std::string& name) {
  for (const auto& f : bundled_fixtures())
    if (f.file_name == name) return f;
  FAIL("missing fixture " << name);
  throw std::logic_error("unreachable");
}

std::string with_checks(const std::string& checks, const std::string& scalars = R"j({"m": "1/(x*y)"})j") {
  return R"({"version": 1,
    "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
    "structure": {"kind": "volume"},
    "fields": {"A": ["x", "y"]},
    "scalars": )" + scalars + R"(,
    "checks": )" + checks + "}";
}

}  // namespace

TEST_CASE("load the jacobi example") {
  ProblemDocument doc = parse_document(fixture("jacobi_example.json").json);
  CHECK(doc.chart.dim() == 2);
  CHECK(doc.fields.size() == 1);
  CHECK(doc.scalars.size() == 1);
  CHECK(doc.checks.size() == 2);
  CHECK(doc.structure == StructureKind::Volume);
  CHECK(doc.sampler.seed == 42);
  CHECK(doc.tolerance == 1e-9);
  Report r = run_checks(doc);
  CHECK(r.passed);
  CHECK(r.warnings.empty());
}

TEST_CASE("reference errors name the symbol") {
  std::string text = with_checks(R"([{"kind": "last_multiplier", "field": "A", "multiplier": "m2"}])");
  CHECK_THROWS_AS(parse_document(text), ReferenceError);
  try {
    parse_document(text);
  } catch (const ReferenceError& e) {
    CHECK(std::string(e.what()).find("m2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_document(with_checks(R"([{"kind": "last_multiplier", "field": "B", "multiplier": "m"}])")),
                  ReferenceError);
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(parse_document("{not json"), ParseError);
  CHECK_THROWS_AS(parse_document(with_checks("[]", R"({"m": "1/(x*"})")), ParseError);
  CHECK_THROWS_AS(parse_document(with_checks("[]", R"({"m": "z + 1"})")), ParseError);
  CHECK_THROWS_AS(parse_document(with_checks(R"([{"kind": "nope"}])")), ValidationError);
  CHECK_THROWS_AS(parse_document(with_checks(R"([{"kind": "poisson_jacobi"}])")), ValidationError);
  CHECK_THROWS_AS(parse_document(with_checks(R"([{"kind": "harmonic_square", "function": "m"}])")), ValidationError);
  CHECK_THROWS_AS(parse_document(with_checks(R"([{"kind": "last_multiplier", "field": "A"}])")), ValidationError);
  std::string v2 = with_checks("[]");
  v2.replace(v2.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK_THROWS_AS(parse_document(v2), ValidationError);
  CHECK_THROWS_AS(load_document("/nonexistent/doc.json"), ValidationError);
}

TEST_CASE("rotsym shorthand materializes the metric") {
  ProblemDocument doc = parse_document(fixture("rotsym.json").json);
  REQUIRE(doc.metric.has_value());
  std::vector<double> p{1.2, 0.4};
  CHECK(evaluate(doc.metric->g(0, 0), p) == doctest::Approx(1.0));
  CHECK(evaluate(doc.metric->g(1, 1), p) == doctest::Approx(std::pow(std::cosh(1.2), 2)));
  CHECK(evaluate(doc.metric->g(0, 1), p) == 0.0);
  CHECK(evaluate(doc.metric->sqrt_det(), p) == doctest::Approx(std::cosh(1.2)));
}

TEST_CASE("empty check list passes with a warning") {
  Report r = run_checks(parse_document(with_checks("[]")));
  CHECK(r.passed);
  CHECK(r.checks.empty());
  CHECK(r.warnings.size() == 1);
}

TEST_CASE("failing multiplier reports a witness") {
  Report r = run_checks(parse_document(with_checks(R"([{"kind": "last_multiplier", "field": "A", "multiplier": "m"}])",
                                                   R"({"m": "x"})")));
  CHECK_FALSE(r.passed);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "last_multiplier#1");
  CHECK_FALSE(r.checks[0].error.has_value());
  // A(m) + m div A = x + 2x = 3x, largest at the box corner x = 2.
  const auto& w = r.checks[0].verdict.witness;
  REQUIRE(w.size() == 2);
  CHECK(r.checks[0].verdict.max_abs_residual == doctest::Approx(3 * w[0]));
  CHECK(report_json(r).find("\"witness\"") != std::string::npos);
  CHECK(report_text(r).find("FAIL") != std::string::npos);
}

TEST_CASE("check errors are captured") {
  std::string text = with_checks(
      R"([{"kind": "flow_drift", "field": "A", "multiplier": "m", "x0": [1, 1], "dt": 0.1, "T": 10},
          {"kind": "last_multiplier", "field": "A", "multiplier": "m"}])");
  Report r = run_checks(parse_document(text));
  REQUIRE(r.checks.size() == 2);
  CHECK(r.checks[0].error.has_value());
  CHECK_FALSE(r.checks[0].passed);
  CHECK(r.checks[1].passed);
  CHECK_FALSE(r.passed);
}

TEST_CASE("reports are deterministic") {
  for (const auto& f : bundled_fixtures()) {
    ProblemDocument doc = parse_document(f.json);
    RunOptions serial;
    serial.threads = 1;
    std::string a = report_json(run_checks(doc, serial));
    std::string b = report_json(run_checks(doc));
    CHECK_MESSAGE(a == b, f.file_name);
  }
  ProblemDocument doc = parse_document(fixture("poisson_plane.json").json);
  RunOptions seeded;
  seeded.seed = 7;
  CHECK(report_json(run_checks(doc, seeded)) == report_json(run_checks(doc, seeded)));
}

TEST_CASE("tolerance override") {
  ProblemDocument doc = parse_document(fixture("jacobi_example.json").json);
  RunOptions loose;
  loose.tolerance = 1e-3;
  Report r = run_checks(doc, loose);
  for (const auto& c : r.checks) CHECK(c.verdict.tolerance == 1e-3);
}

TEST_CASE("every bundled fixture passes") {
  CHECK(bundled_fixtures().size() >= 10);
  for (const auto& f : bundled_fixtures()) {
    Report r = run_checks(parse_document(f.json));
    CHECK_MESSAGE(r.passed, f.file_name << "\n" << report_text(r));
    for (const auto& c : r.checks) CHECK_MESSAGE(!c.error.has_value(), f.file_name << ": " << c.name);
  }
}
