// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "lmlab/fields.hpp"

namespace lmlab {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> points;
  /// Row-major n x n variational matrices J(t); empty unless requested.
  std::vector<std::vector<double>> jacobians;
};

struct DriftReport {
  double invariant_initial = 0.0;
  double max_abs_drift = 0.0;
  double drift_at_end = 0.0;
  int steps = 0;
};

/// Fixed-step classical RK4 for x' = A(x) with N = round(T/dt) steps of
/// size T/N. With `jacobian` the variational equation J' = DA(x) J, J(0) = I
/// is integrated in the same stages. Throws FlowError on bad arguments, on
/// leaving the chart box enlarged by 50% per side, or at a singularity.
Trajectory integrate(const VectorField& a, const std::vector<double>& x0, double dt, double t_end,
                     bool jacobian = false);

/// Drift of I(t) = m(x(t)) exp(int_0^t div_V A), the integral carried as an
/// extra state component of the same RK4 scheme.
DriftReport transport_drift(const VectorField& a, const Expr& m, const VolumeForm& v, const std::vector<double>& x0,
                            double dt, double t_end);

/// Drift of m(x(t)) det J(t) for the coordinate volume form.
DriftReport jacobian_invariant_drift(const VectorField& a, const Expr& m, const std::vector<double>& x0, double dt,
                                     double t_end);

/// Same with a volume form sigma dx: the invariant is m sigma det J.
DriftReport jacobian_invariant_drift(const VectorField& a, const Expr& m, const VolumeForm& v,
                                     const std::vector<double>& x0, double dt, double t_end);

}  // namespace lmlab
