// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lmlab/chart.hpp"
#include "lmlab/fields.hpp"
#include "lmlab/forms.hpp"
#include "lmlab/poisson.hpp"
#include "lmlab/riemann.hpp"
#include "lmlab/sampling.hpp"

namespace lmlab {

enum class StructureKind { Volume, Euclidean, Metric, Rotsym, Poisson };

const char* structure_name(StructureKind kind);

/// One entry of the document's check list with every reference resolved.
struct CheckRequest {
  std::string name;
  std::string kind;
  std::optional<VectorField> field;
  std::optional<DifferentialForm> form;
  /// Role name ("multiplier", "function", ...) to resolved expression.
  std::map<std::string, Expr> scalars;
  std::map<std::string, double> numbers;
  std::vector<double> x0;
  std::optional<double> tolerance;
};

/// A fully validated problem document (schema version 1).
struct ProblemDocument {
  Chart chart;
  StructureKind structure = StructureKind::Volume;
  VolumeForm volume;
  std::optional<Metric> metric;
  std::optional<Bivector> bivector;
  std::map<std::string, Expr> scalars;
  std::map<std::string, VectorField> fields;
  std::map<std::string, DifferentialForm> forms;
  Sampler sampler;
  double tolerance = kDefaultTolerance;
  std::vector<CheckRequest> checks;
};

/// Check kinds understood by run_checks, in documentation order.
const std::vector<std::string>& check_kinds();

/// Parses and validates a document. Throws ParseError (malformed JSON or
/// expression, message names the offending entry), ReferenceError (undefined
/// name) or ValidationError (schema or structure/check mismatch).
ProblemDocument parse_document(const std::string& json_text);
/// Reads `path` and parses it; an unreadable file is a ValidationError.
ProblemDocument load_document(const std::string& path);

struct CheckResult {
  std::string name;
  std::string kind;
  bool passed = false;
  /// Set when the check raised instead of producing a verdict.
  std::optional<std::string> error;
  CheckVerdict verdict;
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;
  bool passed = true;
};

struct RunOptions {
  std::optional<std::uint64_t> seed;
  /// Replaces the document tolerance and every per-check tolerance.
  std::optional<double> tolerance;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Runs the checks (possibly concurrently) and reports them in document
/// order. Check i samples with the document sampler derived by salt i.
/// Failures inside a check are captured in its result.
Report run_checks(const ProblemDocument& doc, const RunOptions& options = {});

/// Structured report; byte-identical for identical document and seed.
std::string report_json(const Report& report);
/// Human-readable report including timings.
std::string report_text(const Report& report);

struct Fixture {
  std::string file_name;
  std::string json;
};

/// The bundled example documents; every one of them passes.
const std::vector<Fixture>& bundled_fixtures();

}  // namespace lmlab
