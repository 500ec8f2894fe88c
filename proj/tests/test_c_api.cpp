// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "lmlab/lmlab.h"

namespace {

const char* kCoords[] = {"x", "y"};
const double kLo[] = {0.5, 0.5};
const double kHi[] = {2.0, 2.0};

std::string expr_text(const lmlab_expr* e) {
  size_t n = 0;
  REQUIRE(lmlab_expr_to_string(e, nullptr, 0, &n) == LMLAB_OK);
  std::string s(n + 1, '\0');
  REQUIRE(lmlab_expr_to_string(e, s.data(), s.size(), &n) == LMLAB_OK);
  s.resize(n);
  return s;
}

std::string report_json(const lmlab_report* r) {
  size_t n = 0;
  REQUIRE(lmlab_report_json(r, nullptr, 0, &n) == LMLAB_OK);
  std::string s(n + 1, '\0');
  REQUIRE(lmlab_report_json(r, s.data(), s.size(), &n) == LMLAB_OK);
  s.resize(n);
  return s;
}

const char* kDocument = R"j({"version": 1,
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "volume"},
  "fields": {"A": ["x", "y"]},
  "scalars": {"m": "1/(x*y)", "bad": "x"},
  "checks": [{"kind": "last_multiplier", "field": "A", "multiplier": "m"}]})j";

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(lmlab_version()) == "1.0.0");
  CHECK(std::string(lmlab_status_name(LMLAB_OK)) == "ok");
  CHECK(std::string(lmlab_status_name(LMLAB_ERROR_REFERENCE)) == "reference_error");
}

TEST_CASE("expressions") {
  lmlab_chart* chart = nullptr;
  REQUIRE(lmlab_chart_new(kCoords, kLo, kHi, 2, &chart) == LMLAB_OK);
  CHECK(lmlab_chart_dim(chart) == 2);

  lmlab_expr* e = nullptr;
  REQUIRE(lmlab_expr_parse(chart, "x^2*y + sin(y)", &e) == LMLAB_OK);
  double p[] = {1.5, 0.7};
  double v = 0;
  REQUIRE(lmlab_expr_eval(e, p, 2, &v) == LMLAB_OK);
  CHECK(v == doctest::Approx(1.5 * 1.5 * 0.7 + std::sin(0.7)));
  CHECK(lmlab_expr_eval(e, p, 3, &v) == LMLAB_ERROR_INVALID_ARGUMENT);

  lmlab_expr* dx = nullptr;
  REQUIRE(lmlab_expr_diff(e, 0, &dx) == LMLAB_OK);
  REQUIRE(lmlab_expr_eval(dx, p, 2, &v) == LMLAB_OK);
  CHECK(v == doctest::Approx(2 * 1.5 * 0.7));
  CHECK(lmlab_expr_diff(e, 2, &dx) == LMLAB_ERROR_INVALID_ARGUMENT);
  CHECK_FALSE(expr_text(dx).empty());

  char tiny[2];
  size_t n = 0;
  CHECK(lmlab_expr_to_string(e, tiny, sizeof tiny, &n) == LMLAB_ERROR_BUFFER_TOO_SMALL);
  CHECK(n > 2);

  lmlab_expr* bad = nullptr;
  CHECK(lmlab_expr_parse(chart, "x +* y", &bad) == LMLAB_ERROR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(lmlab_last_error()).find("position") != std::string::npos);
  CHECK(lmlab_expr_parse(chart, "z", &bad) == LMLAB_ERROR_PARSE);

  lmlab_expr* singular = nullptr;
  REQUIRE(lmlab_expr_parse(chart, "ln(x - 1)", &singular) == LMLAB_OK);
  double q[] = {0.5, 1.0};
  CHECK(lmlab_expr_eval(singular, q, 2, &v) == LMLAB_ERROR_DOMAIN);
  REQUIRE(lmlab_expr_eval(e, p, 2, &v) == LMLAB_OK);
  CHECK(std::string(lmlab_last_error()).empty());

  lmlab_expr_free(singular);
  lmlab_expr_free(dx);
  lmlab_expr_free(e);
  lmlab_chart_free(chart);

  const char* dup[] = {"x", "x"};
  CHECK(lmlab_chart_new(dup, kLo, kHi, 2, &chart) == LMLAB_ERROR_VALIDATION);
  CHECK(lmlab_chart_new(nullptr, kLo, kHi, 2, &chart) == LMLAB_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("documents and reports") {
  lmlab_document* doc = nullptr;
  REQUIRE(lmlab_document_load_string(kDocument, &doc) == LMLAB_OK);
  CHECK(lmlab_document_check_count(doc) == 1);

  lmlab_report* r = nullptr;
  REQUIRE(lmlab_document_run(doc, nullptr, &r) == LMLAB_OK);
  CHECK(lmlab_report_passed(r) == 1);
  CHECK(lmlab_report_check_count(r) == 1);
  std::string json = report_json(r);
  CHECK(json.find("\"passed\": true") != std::string::npos);

  lmlab_run_options opts{1, 42, 0, 0.0, 1};
  lmlab_report* r2 = nullptr;
  REQUIRE(lmlab_document_run(doc, &opts, &r2) == LMLAB_OK);
  CHECK(report_json(r2) == json);
  opts.has_tolerance = 1;
  opts.tolerance = -1.0;
  lmlab_report* r3 = nullptr;
  CHECK(lmlab_document_run(doc, &opts, &r3) == LMLAB_ERROR_INVALID_ARGUMENT);

  lmlab_drift transport{}, jacobian{};
  double x0[] = {1.0, 1.0};
  REQUIRE(lmlab_document_flow(doc, "A", "m", x0, 2, 0.01, 1.0, &transport, &jacobian) == LMLAB_OK);
  CHECK(transport.max_abs_drift <= 1e-9);
  CHECK(jacobian.max_abs_drift <= 1e-8);
  CHECK(transport.steps == 100);
  REQUIRE(lmlab_document_flow(doc, "A", "bad", x0, 2, 0.01, 1.0, &transport, nullptr) == LMLAB_OK);
  CHECK(transport.max_abs_drift > 1e-2);
  CHECK(lmlab_document_flow(doc, "A", "m2", x0, 2, 0.01, 1.0, &transport, nullptr) == LMLAB_ERROR_REFERENCE);
  CHECK(lmlab_document_flow(doc, "A", "m", x0, 2, 0.1, 10.0, &transport, nullptr) == LMLAB_ERROR_FLOW);

  lmlab_report_free(r2);
  lmlab_report_free(r);
  lmlab_document_free(doc);

  lmlab_document* broken = nullptr;
  CHECK(lmlab_document_load_string("{", &broken) == LMLAB_ERROR_PARSE);
  CHECK(lmlab_document_load_file("/nonexistent.json", &broken) == LMLAB_ERROR_VALIDATION);
  CHECK(broken == nullptr);
}

TEST_CASE("fixtures") {
  int n = lmlab_fixture_count();
  CHECK(n >= 10);
  CHECK(lmlab_fixture_name(n) == nullptr);
  CHECK(lmlab_fixture_json(-1) == nullptr);
  for (int i = 0; i < n; ++i) {
    lmlab_document* doc = nullptr;
    REQUIRE(lmlab_document_load_string(lmlab_fixture_json(i), &doc) == LMLAB_OK);
    lmlab_report* r = nullptr;
    REQUIRE(lmlab_document_run(doc, nullptr, &r) == LMLAB_OK);
    CHECK_MESSAGE(lmlab_report_passed(r) == 1, lmlab_fixture_name(i));
    lmlab_report_free(r);
    lmlab_document_free(doc);
  }
}

TEST_CASE("last error is per thread") {
  lmlab_document* doc = nullptr;
  CHECK(lmlab_document_load_string("{", &doc) == LMLAB_ERROR_PARSE);
  std::string other;
  std::thread([&] { other = lmlab_last_error(); }).join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(lmlab_last_error()).empty());
}
