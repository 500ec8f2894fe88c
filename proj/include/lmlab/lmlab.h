/* SPDX-License-Identifier: Apache-2.0 */
#ifndef LMLAB_H
#define LMLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LMLAB_BUILDING)
#    define LMLAB_API __declspec(dllexport)
#  else
#    define LMLAB_API __declspec(dllimport)
#  endif
#else
#  define LMLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lmlab_status {
  LMLAB_OK = 0,
  LMLAB_ERROR_INVALID_ARGUMENT = 1,
  LMLAB_ERROR_BUFFER_TOO_SMALL = 2,
  LMLAB_ERROR_PARSE = 3,
  LMLAB_ERROR_REFERENCE = 4,
  LMLAB_ERROR_VALIDATION = 5,
  LMLAB_ERROR_DOMAIN = 6,
  LMLAB_ERROR_CHART_MISMATCH = 7,
  LMLAB_ERROR_SAMPLING = 8,
  LMLAB_ERROR_PRECONDITION = 9,
  LMLAB_ERROR_FLOW = 10,
  LMLAB_ERROR_INTERNAL = 11
} lmlab_status;

typedef struct lmlab_chart lmlab_chart;
typedef struct lmlab_expr lmlab_expr;
typedef struct lmlab_document lmlab_document;
typedef struct lmlab_report lmlab_report;

typedef struct lmlab_run_options {
  int has_seed;
  uint64_t seed;
  /* When set, replaces the document tolerance and every per-check tolerance. */
  int has_tolerance;
  double tolerance;
  /* 0 picks the hardware concurrency. */
  unsigned threads;
} lmlab_run_options;

typedef struct lmlab_drift {
  double invariant_initial;
  double max_abs_drift;
  double drift_at_end;
  int steps;
} lmlab_drift;

LMLAB_API const char* lmlab_version(void);
LMLAB_API const char* lmlab_status_name(lmlab_status status);
/* Message of the last failing call on this thread; empty after a success. */
LMLAB_API const char* lmlab_last_error(void);

/* Functions producing text write at most `size` bytes including the
   terminator and store the full length (without terminator) in `needed`.
   buf = NULL with size = 0 only queries the length. */

LMLAB_API lmlab_status lmlab_chart_new(const char* const* coords, const double* lo, const double* hi, int dim,
                                       lmlab_chart** out);
LMLAB_API int lmlab_chart_dim(const lmlab_chart* chart);
LMLAB_API void lmlab_chart_free(lmlab_chart* chart);

LMLAB_API lmlab_status lmlab_expr_parse(const lmlab_chart* chart, const char* source, lmlab_expr** out);
LMLAB_API lmlab_status lmlab_expr_eval(const lmlab_expr* expr, const double* point, int dim, double* out);
LMLAB_API lmlab_status lmlab_expr_diff(const lmlab_expr* expr, int index, lmlab_expr** out);
LMLAB_API lmlab_status lmlab_expr_simplify(const lmlab_expr* expr, lmlab_expr** out);
LMLAB_API lmlab_status lmlab_expr_to_string(const lmlab_expr* expr, char* buf, size_t size, size_t* needed);
LMLAB_API void lmlab_expr_free(lmlab_expr* expr);

LMLAB_API lmlab_status lmlab_document_load_file(const char* path, lmlab_document** out);
LMLAB_API lmlab_status lmlab_document_load_string(const char* json, lmlab_document** out);
LMLAB_API int lmlab_document_check_count(const lmlab_document* doc);
/* options may be NULL. */
LMLAB_API lmlab_status lmlab_document_run(const lmlab_document* doc, const lmlab_run_options* options,
                                          lmlab_report** out);
/* Integrates the named field from x0 and reports the transport and the
   Jacobian invariant drift of the named multiplier. Either output may be NULL. */
LMLAB_API lmlab_status lmlab_document_flow(const lmlab_document* doc, const char* field, const char* multiplier,
                                           const double* x0, int dim, double dt, double t_end,
                                           lmlab_drift* transport, lmlab_drift* jacobian);
LMLAB_API void lmlab_document_free(lmlab_document* doc);

LMLAB_API int lmlab_report_passed(const lmlab_report* report);
LMLAB_API int lmlab_report_check_count(const lmlab_report* report);
LMLAB_API lmlab_status lmlab_report_json(const lmlab_report* report, char* buf, size_t size, size_t* needed);
LMLAB_API lmlab_status lmlab_report_text(const lmlab_report* report, char* buf, size_t size, size_t* needed);
LMLAB_API void lmlab_report_free(lmlab_report* report);

LMLAB_API int lmlab_fixture_count(void);
/* NULL when index is out of range. */
LMLAB_API const char* lmlab_fixture_name(int index);
LMLAB_API const char* lmlab_fixture_json(int index);

#ifdef __cplusplus
}
#endif

#endif
