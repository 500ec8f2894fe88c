// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lmlab/chart.hpp"
#include "lmlab/expr.hpp"

namespace lmlab {

inline constexpr double kDefaultTolerance = 1e-9;

/// Deterministic point source on a chart box: point k depends only on
/// (seed, k), so evaluation order never changes results.
struct Sampler {
  std::uint64_t seed = 42;
  int count = 64;
  double guard_tol = 1e-6;

  std::vector<double> point(const Chart& chart, int k) const;
  std::vector<std::vector<double>> points(const Chart& chart) const;
  /// Sampler with the same count/guard and a seed mixed with `salt`.
  Sampler derived(std::uint64_t salt) const;
};

/// Result of a sampled identity check. `passed` holds exactly when every
/// used sample satisfies |residual| <= tol * (1 + local scale), i.e. when
/// `max_scaled_residual <= tolerance`.
struct CheckVerdict {
  bool passed = false;
  double tolerance = kDefaultTolerance;
  double max_abs_residual = 0.0;
  double mean_abs_residual = 0.0;
  double max_scaled_residual = 0.0;
  std::vector<double> witness;
  int samples_used = 0;
  int samples_skipped = 0;
  /// m vanished identically; the multiplier condition holds but is useless.
  bool trivial_multiplier = false;
  /// A stated hypothesis failed, so the conclusion was not examined.
  bool hypothesis_failed = false;
  std::vector<std::string> notes;
};

/// Tests that `e` vanishes on the chart box. Samples where a denominator
/// falls below the guard are skipped; more than half skipped throws
/// SamplingError. The witness is the first sample attaining the maximum.
CheckVerdict zero_on_domain(const Expr& e, const Chart& chart, const Sampler& s, double tol);

/// Same for several expressions at once (e.g. all coefficients of a form);
/// a sample is skipped when any expression is singular there.
CheckVerdict zero_on_domain(const std::vector<Expr>& es, const Chart& chart, const Sampler& s, double tol);

/// Pointwise agreement |a - b| <= rel_tol * (1 + scale(a) + scale(b)).
CheckVerdict agree_on_domain(const Expr& a, const Expr& b, const Chart& chart, const Sampler& s, double rel_tol);

/// Folds `extra` into `primary`: passed becomes the conjunction, `note`
/// prefixes the sub-verdict summary when it fails. Residual statistics and
/// witness stay those of `primary`.
void merge_subcheck(CheckVerdict& primary, const CheckVerdict& extra, const std::string& note);

/// Number of samples where |e| < guard (or e is singular).
int count_vanishing(const Expr& e, const Chart& chart, const Sampler& s);

/// True when e evaluates to exactly 0 at every non-singular sample.
bool vanishes_identically(const Expr& e, const Chart& chart, const Sampler& s);

/// Throws PreconditionError unless e > 0 at every sample (singular samples
/// count as violations).
void require_positive(const Expr& e, const Chart& chart, const Sampler& s, const std::string& what);

std::string summarize(const CheckVerdict& v);

}  // namespace lmlab
