// SPDX-License-Identifier: Apache-2.0
#include "lmlab/flow.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "lmlab/errors.hpp"

namespace lmlab {
namespace {

using State = std::vector<double>;

int step_count(double dt, double t_end) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw FlowError("dt must be positive");
  if (!(t_end >= dt) || !std::isfinite(t_end)) throw FlowError("T must be at least dt");
  return static_cast<int>(std::llround(t_end / dt));
}

std::string format_point(const std::vector<double>& p) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

double eval_at(const Expr& e, const std::vector<double>& x, const char* what) {
  try {
    return evaluate(e, x);
  } catch (const DomainError& err) {
    throw FlowError(std::string(what) + " is singular at " + format_point(x) + ": " + err.what());
  }
}

/// Vector field on the augmented state; the first n entries are the point.
using Rhs = std::function<State(const State&)>;

struct Integration {
  std::vector<double> times;
  std::vector<State> states;
};

Integration rk4(const Rhs& f, State y, int n, int steps, double t_end, const Chart& box) {
  double h = t_end / steps;
  Integration out;
  out.times.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.times.push_back(0.0);
  out.states.push_back(y);
  auto shifted = [](const State& base, const State& k, double c) {
    State r(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) r[i] = base[i] + c * k[i];
    return r;
  };
  for (int step = 1; step <= steps; ++step) {
    State k1 = f(y);
    State k2 = f(shifted(y, k1, h / 2));
    State k3 = f(shifted(y, k2, h / 2));
    State k4 = f(shifted(y, k3, h));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    std::vector<double> x(y.begin(), y.begin() + n);
    for (double c : y) {
      if (!std::isfinite(c)) throw FlowError("integration diverged at t = " + std::to_string(step * h));
    }
    if (!box.contains(x)) {
      throw FlowError("trajectory left the enlarged domain box at t = " + std::to_string(step * h) + ", x = " +
                      format_point(x));
    }
    out.times.push_back(step * h);
    out.states.push_back(y);
  }
  return out;
}

void check_start(const VectorField& a, const std::vector<double>& x0) {
  if (static_cast<int>(x0.size()) != a.dim()) {
    throw FlowError("initial point has " + std::to_string(x0.size()) + " coordinates, expected " +
                    std::to_string(a.dim()));
  }
  if (!a.chart().contains(x0)) throw FlowError("initial point " + format_point(x0) + " is outside the domain box");
}

std::vector<Expr> jacobian_matrix(const VectorField& a) {
  int n = a.dim();
  std::vector<Expr> da;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) da.push_back(simplify(partial_derivative(a[i], j)));
  }
  return da;
}

double determinant(std::vector<double> m, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::fabs(m[static_cast<std::size_t>(r * n + c)]) > std::fabs(m[static_cast<std::size_t>(pivot * n + c)])) {
        pivot = r;
      }
    }
    if (m[static_cast<std::size_t>(pivot * n + c)] == 0.0) return 0.0;
    if (pivot != c) {
      for (int k = 0; k < n; ++k) std::swap(m[static_cast<std::size_t>(c * n + k)], m[static_cast<std::size_t>(pivot * n + k)]);
      det = -det;
    }
    double d = m[static_cast<std::size_t>(c * n + c)];
    det *= d;
    for (int r = c + 1; r < n; ++r) {
      double factor = m[static_cast<std::size_t>(r * n + c)] / d;
      for (int k = c; k < n; ++k) m[static_cast<std::size_t>(r * n + k)] -= factor * m[static_cast<std::size_t>(c * n + k)];
    }
  }
  return det;
}

double guarded_multiplier(const Expr& m, const std::vector<double>& x, double t) {
  double v = eval_at(m, x, "multiplier");
  if (std::fabs(v) < 1e-12) {
    throw FlowError("multiplier vanishes along the trajectory at t = " + std::to_string(t) + ", x = " + format_point(x));
  }
  return v;
}

DriftReport drift_of(const std::vector<double>& values, int steps) {
  DriftReport r;
  r.invariant_initial = values.front();
  r.steps = steps;
  for (double v : values) r.max_abs_drift = std::max(r.max_abs_drift, std::fabs(v - r.invariant_initial));
  r.drift_at_end = std::fabs(values.back() - r.invariant_initial);
  return r;
}

}  // namespace

Trajectory integrate(const VectorField& a, const std::vector<double>& x0, double dt, double t_end, bool jacobian) {
  int steps = step_count(dt, t_end);
  check_start(a, x0);
  int n = a.dim();
  std::vector<Expr> da = jacobian ? jacobian_matrix(a) : std::vector<Expr>{};
  Rhs f = [&](const State& y) {
    std::vector<double> x(y.begin(), y.begin() + n);
    State r(y.size());
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = eval_at(a[i], x, "vector field");
    if (jacobian) {
      std::vector<double> d(da.size());
      for (std::size_t k = 0; k < da.size(); ++k) d[k] = eval_at(da[k], x, "vector field derivative");
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int k = 0; k < n; ++k) {
            acc += d[static_cast<std::size_t>(i * n + k)] * y[static_cast<std::size_t>(n + k * n + j)];
          }
          r[static_cast<std::size_t>(n + i * n + j)] = acc;
        }
      }
    }
    return r;
  };
  State y0(x0);
  if (jacobian) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) y0.push_back(i == j ? 1.0 : 0.0);
    }
  }
  Integration run = rk4(f, y0, n, steps, t_end, a.chart().enlarged(0.5));
  Trajectory out;
  out.times = std::move(run.times);
  for (const auto& y : run.states) {
    out.points.emplace_back(y.begin(), y.begin() + n);
    if (jacobian) out.jacobians.emplace_back(y.begin() + n, y.end());
  }
  return out;
}

DriftReport transport_drift(const VectorField& a, const Expr& m, const VolumeForm& v, const std::vector<double>& x0,
                            double dt, double t_end) {
  require_same_chart(a.chart(), v.chart());
  require_on_chart(m, a.chart());
  int steps = step_count(dt, t_end);
  check_start(a, x0);
  int n = a.dim();
  Expr div = divergence(a, v);
  Rhs f = [&](const State& y) {
    std::vector<double> x(y.begin(), y.begin() + n);
    State r(y.size());
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = eval_at(a[i], x, "vector field");
    r[static_cast<std::size_t>(n)] = eval_at(div, x, "divergence");
    return r;
  };
  State y0(x0);
  y0.push_back(0.0);
  Integration run = rk4(f, y0, n, steps, t_end, a.chart().enlarged(0.5));
  std::vector<double> values;
  for (std::size_t k = 0; k < run.states.size(); ++k) {
    const State& y = run.states[k];
    std::vector<double> x(y.begin(), y.begin() + n);
    values.push_back(guarded_multiplier(m, x, run.times[k]) * std::exp(y[static_cast<std::size_t>(n)]));
  }
  return drift_of(values, steps);
}

DriftReport jacobian_invariant_drift(const VectorField& a, const Expr& m, const std::vector<double>& x0, double dt,
                                     double t_end) {
  return jacobian_invariant_drift(a, m, VolumeForm::coordinate(a.chart()), x0, dt, t_end);
}

DriftReport jacobian_invariant_drift(const VectorField& a, const Expr& m, const VolumeForm& v,
                                     const std::vector<double>& x0, double dt, double t_end) {
  require_same_chart(a.chart(), v.chart());
  require_on_chart(m, a.chart());
  Trajectory tr = integrate(a, x0, dt, t_end, true);
  int n = a.dim();
  Expr weighted = v.is_coordinate() ? m : simplify(m * v.density());
  std::vector<double> values;
  for (std::size_t k = 0; k < tr.points.size(); ++k) {
    guarded_multiplier(m, tr.points[k], tr.times[k]);
    values.push_back(eval_at(weighted, tr.points[k], "multiplier") * determinant(tr.jacobians[k], n));
  }
  return drift_of(values, static_cast<int>(tr.times.size()) - 1);
}

}  // namespace lmlab
