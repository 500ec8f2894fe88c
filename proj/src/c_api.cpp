// SPDX-License-Identifier: Apache-2.0
#include "lmlab/lmlab.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "lmlab/document.hpp"
#include "lmlab/errors.hpp"
#include "lmlab/flow.hpp"

struct lmlab_chart {
  lmlab::Chart chart;
};

struct lmlab_expr {
  lmlab::Chart chart;
  lmlab::Expr expr;
};

struct lmlab_document {
  lmlab::ProblemDocument doc;
};

struct lmlab_report {
  lmlab::Report report;
  std::string json;
  std::string text;
};

namespace {

thread_local std::string last_error;

lmlab_status fail(lmlab_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class F>
lmlab_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const lmlab::ReferenceError& e) {
    return fail(LMLAB_ERROR_REFERENCE, e.what());
  } catch (const lmlab::ValidationError& e) {
    return fail(LMLAB_ERROR_VALIDATION, e.what());
  } catch (const lmlab::ParseError& e) {
    return fail(LMLAB_ERROR_PARSE, e.what());
  } catch (const lmlab::DomainError& e) {
    return fail(LMLAB_ERROR_DOMAIN, e.what());
  } catch (const lmlab::ChartMismatchError& e) {
    return fail(LMLAB_ERROR_CHART_MISMATCH, e.what());
  } catch (const lmlab::SamplingError& e) {
    return fail(LMLAB_ERROR_SAMPLING, e.what());
  } catch (const lmlab::PreconditionError& e) {
    return fail(LMLAB_ERROR_PRECONDITION, e.what());
  } catch (const lmlab::FlowError& e) {
    return fail(LMLAB_ERROR_FLOW, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LMLAB_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(LMLAB_ERROR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LMLAB_ERROR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LMLAB_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(LMLAB_ERROR_INTERNAL, "unknown exception");
  }
}

lmlab_status copy_out(const std::string& s, char* buf, std::size_t size, std::size_t* needed) {
  if (needed) *needed = s.size();
  if (!buf && size == 0) return LMLAB_OK;
  if (!buf || size < s.size() + 1)
    return fail(LMLAB_ERROR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return LMLAB_OK;
}

lmlab_drift to_c(const lmlab::DriftReport& r) {
  return lmlab_drift{r.invariant_initial, r.max_abs_drift, r.drift_at_end, r.steps};
}

}  // namespace

extern "C" {

const char* lmlab_version(void) { return "1.0.0"; }

const char* lmlab_status_name(lmlab_status status) {
  switch (status) {
    case LMLAB_OK: return "ok";
    case LMLAB_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case LMLAB_ERROR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case LMLAB_ERROR_PARSE: return "parse_error";
    case LMLAB_ERROR_REFERENCE: return "reference_error";
    case LMLAB_ERROR_VALIDATION: return "validation_error";
    case LMLAB_ERROR_DOMAIN: return "domain_error";
    case LMLAB_ERROR_CHART_MISMATCH: return "chart_mismatch";
    case LMLAB_ERROR_SAMPLING: return "sampling_error";
    case LMLAB_ERROR_PRECONDITION: return "precondition_error";
    case LMLAB_ERROR_FLOW: return "flow_error";
    case LMLAB_ERROR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* lmlab_last_error(void) { return last_error.c_str(); }

lmlab_status lmlab_chart_new(const char* const* coords, const double* lo, const double* hi, int dim,
                             lmlab_chart** out) {
  if (!coords || !lo || !hi || !out || dim <= 0) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null or empty chart");
  return guarded([&] {
    std::vector<std::string> names;
    std::vector<lmlab::Interval> box;
    for (int i = 0; i < dim; ++i) {
      if (!coords[i]) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null coordinate name");
      names.emplace_back(coords[i]);
      box.push_back({lo[i], hi[i]});
    }
    *out = new lmlab_chart{lmlab::Chart(std::move(names), std::move(box))};
    return LMLAB_OK;
  });
}

int lmlab_chart_dim(const lmlab_chart* chart) { return chart ? chart->chart.dim() : 0; }

void lmlab_chart_free(lmlab_chart* chart) { delete chart; }

lmlab_status lmlab_expr_parse(const lmlab_chart* chart, const char* source, lmlab_expr** out) {
  if (!chart || !source || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lmlab_expr{chart->chart, lmlab::parse_scalar(source, chart->chart)};
    return LMLAB_OK;
  });
}

lmlab_status lmlab_expr_eval(const lmlab_expr* expr, const double* point, int dim, double* out) {
  if (!expr || !point || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  if (dim != expr->chart.dim()) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "point dimension does not match the chart");
  return guarded([&] {
    *out = lmlab::evaluate(expr->expr, std::span<const double>(point, static_cast<std::size_t>(dim)));
    return LMLAB_OK;
  });
}

lmlab_status lmlab_expr_diff(const lmlab_expr* expr, int index, lmlab_expr** out) {
  if (!expr || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  if (index < 0 || index >= expr->chart.dim()) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "coordinate index out of range");
  return guarded([&] {
    *out = new lmlab_expr{expr->chart, lmlab::simplify(lmlab::partial_derivative(expr->expr, index))};
    return LMLAB_OK;
  });
}

lmlab_status lmlab_expr_simplify(const lmlab_expr* expr, lmlab_expr** out) {
  if (!expr || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lmlab_expr{expr->chart, lmlab::simplify(expr->expr)};
    return LMLAB_OK;
  });
}

lmlab_status lmlab_expr_to_string(const lmlab_expr* expr, char* buf, size_t size, size_t* needed) {
  if (!expr) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { return copy_out(lmlab::to_string(expr->expr), buf, size, needed); });
}

void lmlab_expr_free(lmlab_expr* expr) { delete expr; }

lmlab_status lmlab_document_load_file(const char* path, lmlab_document** out) {
  if (!path || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lmlab_document{lmlab::load_document(path)};
    return LMLAB_OK;
  });
}

lmlab_status lmlab_document_load_string(const char* json, lmlab_document** out) {
  if (!json || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new lmlab_document{lmlab::parse_document(json)};
    return LMLAB_OK;
  });
}

int lmlab_document_check_count(const lmlab_document* doc) {
  return doc ? static_cast<int>(doc->doc.checks.size()) : 0;
}

lmlab_status lmlab_document_run(const lmlab_document* doc, const lmlab_run_options* options, lmlab_report** out) {
  if (!doc || !out) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    lmlab::RunOptions opts;
    if (options) {
      if (options->has_seed) opts.seed = options->seed;
      if (options->has_tolerance) {
        if (!(options->tolerance > 0.0)) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "tolerance must be positive");
        opts.tolerance = options->tolerance;
      }
      opts.threads = options->threads;
    }
    auto* r = new lmlab_report{lmlab::run_checks(doc->doc, opts), {}, {}};
    r->json = lmlab::report_json(r->report);
    r->text = lmlab::report_text(r->report);
    *out = r;
    return LMLAB_OK;
  });
}

lmlab_status lmlab_document_flow(const lmlab_document* doc, const char* field, const char* multiplier,
                                 const double* x0, int dim, double dt, double t_end, lmlab_drift* transport,
                                 lmlab_drift* jacobian) {
  if (!doc || !field || !multiplier || !x0) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  const auto& d = doc->doc;
  if (dim != d.chart.dim()) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "x0 dimension does not match the chart");
  return guarded([&] {
    auto f = d.fields.find(field);
    if (f == d.fields.end()) throw lmlab::ReferenceError(field);
    auto m = d.scalars.find(multiplier);
    if (m == d.scalars.end()) throw lmlab::ReferenceError(multiplier);
    std::vector<double> start(x0, x0 + dim);
    if (transport) *transport = to_c(lmlab::transport_drift(f->second, m->second, d.volume, start, dt, t_end));
    if (jacobian) *jacobian = to_c(lmlab::jacobian_invariant_drift(f->second, m->second, d.volume, start, dt, t_end));
    return LMLAB_OK;
  });
}

void lmlab_document_free(lmlab_document* doc) { delete doc; }

int lmlab_report_passed(const lmlab_report* report) { return report && report->report.passed ? 1 : 0; }

int lmlab_report_check_count(const lmlab_report* report) {
  return report ? static_cast<int>(report->report.checks.size()) : 0;
}

lmlab_status lmlab_report_json(const lmlab_report* report, char* buf, size_t size, size_t* needed) {
  if (!report) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  last_error.clear();
  return copy_out(report->json, buf, size, needed);
}

lmlab_status lmlab_report_text(const lmlab_report* report, char* buf, size_t size, size_t* needed) {
  if (!report) return fail(LMLAB_ERROR_INVALID_ARGUMENT, "null argument");
  last_error.clear();
  return copy_out(report->text, buf, size, needed);
}

void lmlab_report_free(lmlab_report* report) { delete report; }

int lmlab_fixture_count(void) { return static_cast<int>(lmlab::bundled_fixtures().size()); }

const char* lmlab_fixture_name(int index) {
  const auto& all = lmlab::bundled_fixtures();
  if (index < 0 || index >= static_cast<int>(all.size())) return nullptr;
  return all[static_cast<std::size_t>(index)].file_name.c_str();
}

const char* lmlab_fixture_json(int index) {
  const auto& all = lmlab::bundled_fixtures();
  if (index < 0 || index >= static_cast<int>(all.size())) return nullptr;
  return all[static_cast<std::size_t>(index)].json.c_str();
}

}  // extern "C"
