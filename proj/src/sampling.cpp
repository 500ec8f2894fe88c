// SPDX-License-Identifier: Apache-2.0
#include "lmlab/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <random>

#include "lmlab/errors.hpp"

namespace lmlab {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

struct Evaluated {
  bool singular = false;
  double value = 0.0;
  double scale = 0.0;
};

struct Scaled {
  double value;
  double scale;
};

// Value of e together with the largest term of its fully distributed
// expansion: sums take the largest child term, products multiply the
// per-factor maxima. Singular points yield nullopt.
std::optional<Scaled> scaled_value(const Expr& e, const std::vector<double>& p, double guard) {
  switch (e.op()) {
    case Op::Sum: {
      Scaled out{0.0, 0.0};
      for (const auto& a : e.args()) {
        auto c = scaled_value(a, p, guard);
        if (!c) return std::nullopt;
        out.value += c->value;
        out.scale = std::max(out.scale, c->scale);
      }
      return out;
    }
    case Op::Sub: {
      auto a = scaled_value(e.arg(0), p, guard);
      auto b = a ? scaled_value(e.arg(1), p, guard) : std::nullopt;
      if (!b) return std::nullopt;
      return Scaled{a->value - b->value, std::max(a->scale, b->scale)};
    }
    case Op::Neg: {
      auto a = scaled_value(e.arg(0), p, guard);
      if (!a) return std::nullopt;
      return Scaled{-a->value, a->scale};
    }
    case Op::Product: {
      Scaled out{1.0, 1.0};
      for (const auto& a : e.args()) {
        auto c = scaled_value(a, p, guard);
        if (!c) return std::nullopt;
        out.value *= c->value;
        out.scale *= c->scale;
      }
      out.scale = std::max(out.scale, std::fabs(out.value));
      return out;
    }
    case Op::Div: {
      auto a = scaled_value(e.arg(0), p, guard);
      auto b = a ? evaluate_guarded(e.arg(1), p, guard) : std::nullopt;
      if (!b || std::fabs(*b) < guard) return std::nullopt;
      double v = a->value / *b;
      return Scaled{v, std::max(a->scale / std::fabs(*b), std::fabs(v))};
    }
    case Op::Pow:
      if (e.exponent() > 0) {
        auto a = scaled_value(e.arg(0), p, guard);
        if (!a) return std::nullopt;
        double v = std::pow(a->value, e.exponent());
        return Scaled{v, std::max(std::pow(a->scale, e.exponent()), std::fabs(v))};
      }
      [[fallthrough]];
    default: {
      auto v = evaluate_guarded(e, p, guard);
      if (!v) return std::nullopt;
      return Scaled{*v, std::fabs(*v)};
    }
  }
}

Evaluated evaluate_with_scale(const Expr& e, const std::vector<double>& p, double guard) {
  Evaluated out;
  auto v = evaluate_guarded(e, p, guard);
  auto sc = v ? scaled_value(e, p, guard) : std::nullopt;
  if (!sc) {
    out.singular = true;
    return out;
  }
  out.value = *v;
  out.scale = sc->scale;
  return out;
}

void require_enough_samples(const CheckVerdict& v, const Sampler& s) {
  if (2 * v.samples_skipped > s.count) {
    throw SamplingError(std::to_string(v.samples_skipped) + " of " + std::to_string(s.count) +
                        " samples were singular; choose a domain box away from the singular set");
  }
}

}  // namespace

std::vector<double> Sampler::point(const Chart& chart, int k) const {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k))));
  std::vector<double> p;
  p.reserve(chart.domain().size());
  for (const auto& iv : chart.domain()) p.push_back(iv.lo + iv.width() * unit_interval(rng()));
  return p;
}

std::vector<std::vector<double>> Sampler::points(const Chart& chart) const {
  std::vector<std::vector<double>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(point(chart, k));
  return out;
}

Sampler Sampler::derived(std::uint64_t salt) const {
  Sampler s = *this;
  s.seed = splitmix64(seed + 0x632BE59BD9B4E019ULL * (salt + 1));
  return s;
}

CheckVerdict zero_on_domain(const Expr& e, const Chart& chart, const Sampler& s, double tol) {
  return zero_on_domain(std::vector<Expr>{e}, chart, s, tol);
}

CheckVerdict zero_on_domain(const std::vector<Expr>& es, const Chart& chart, const Sampler& s, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (s.count <= 0) throw std::invalid_argument("sampler count must be positive");
  for (const auto& e : es) require_on_chart(e, chart);

  CheckVerdict v;
  v.tolerance = tol;
  double total = 0.0;
  bool have_max = false;
  for (int k = 0; k < s.count; ++k) {
    auto p = s.point(chart, k);
    double residual = 0.0;
    double scaled = 0.0;
    bool singular = false;
    for (std::size_t i = 0; i < es.size() && !singular; ++i) {
      Evaluated ev = evaluate_with_scale(es[i], p, s.guard_tol);
      if (ev.singular) {
        singular = true;
        break;
      }
      residual = std::max(residual, std::fabs(ev.value));
      scaled = std::max(scaled, std::fabs(ev.value) / (1.0 + ev.scale));
    }
    if (singular) {
      ++v.samples_skipped;
      continue;
    }
    ++v.samples_used;
    total += residual;
    if (!have_max || residual > v.max_abs_residual) {
      v.max_abs_residual = residual;
      v.witness = p;
      have_max = true;
    }
    v.max_scaled_residual = std::max(v.max_scaled_residual, scaled);
  }
  require_enough_samples(v, s);
  v.mean_abs_residual = v.samples_used > 0 ? total / v.samples_used : 0.0;
  v.passed = v.samples_used > 0 && v.max_scaled_residual <= tol;
  return v;
}

CheckVerdict agree_on_domain(const Expr& a, const Expr& b, const Chart& chart, const Sampler& s, double rel_tol) {
  require_on_chart(a, chart);
  require_on_chart(b, chart);
  CheckVerdict v;
  v.tolerance = rel_tol;
  double total = 0.0;
  bool have_max = false;
  for (int k = 0; k < s.count; ++k) {
    auto p = s.point(chart, k);
    Evaluated ea = evaluate_with_scale(a, p, s.guard_tol);
    Evaluated eb = ea.singular ? Evaluated{true} : evaluate_with_scale(b, p, s.guard_tol);
    if (ea.singular || eb.singular) {
      ++v.samples_skipped;
      continue;
    }
    ++v.samples_used;
    double diff = std::fabs(ea.value - eb.value);
    total += diff;
    if (!have_max || diff > v.max_abs_residual) {
      v.max_abs_residual = diff;
      v.witness = p;
      have_max = true;
    }
    v.max_scaled_residual =
        std::max(v.max_scaled_residual, diff / (1.0 + std::max({ea.scale, eb.scale, std::fabs(ea.value)})));
  }
  require_enough_samples(v, s);
  v.mean_abs_residual = v.samples_used > 0 ? total / v.samples_used : 0.0;
  v.passed = v.samples_used > 0 && v.max_scaled_residual <= rel_tol;
  return v;
}

void merge_subcheck(CheckVerdict& primary, const CheckVerdict& extra, const std::string& note) {
  if (!extra.passed) {
    primary.passed = false;
    primary.notes.push_back(note + ": " + summarize(extra));
  }
  primary.hypothesis_failed = primary.hypothesis_failed || extra.hypothesis_failed;
}

int count_vanishing(const Expr& e, const Chart& chart, const Sampler& s) {
  int n = 0;
  for (int k = 0; k < s.count; ++k) {
    auto v = evaluate_guarded(e, s.point(chart, k), s.guard_tol);
    if (!v || std::fabs(*v) < s.guard_tol) ++n;
  }
  return n;
}

bool vanishes_identically(const Expr& e, const Chart& chart, const Sampler& s) {
  if (simplify(e).is_zero()) return true;
  int used = 0;
  for (int k = 0; k < s.count; ++k) {
    auto v = evaluate_guarded(e, s.point(chart, k), s.guard_tol);
    if (!v) continue;
    ++used;
    if (*v != 0.0) return false;
  }
  return used > 0;
}

void require_positive(const Expr& e, const Chart& chart, const Sampler& s, const std::string& what) {
  for (int k = 0; k < s.count; ++k) {
    auto p = s.point(chart, k);
    auto v = evaluate_guarded(e, p, s.guard_tol);
    if (!v || !(*v > 0.0)) {
      std::string at;
      for (double x : p) at += (at.empty() ? "" : ", ") + std::to_string(x);
      throw PreconditionError(what + " must be positive on the domain box; violated at (" + at + ")");
    }
  }
}

std::string summarize(const CheckVerdict& v) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (max residual %.3e, %d used, %d skipped)", v.passed ? "pass" : "fail",
                v.max_abs_residual, v.samples_used, v.samples_skipped);
  std::string out = buf;
  for (const auto& n : v.notes) out += "; " + n;
  return out;
}

}  // namespace lmlab
