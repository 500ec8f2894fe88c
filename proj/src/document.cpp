// SPDX-License-Identifier: Apache-2.0
#include "lmlab/document.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lmlab/errors.hpp"
#include "lmlab/flow.hpp"

namespace lmlab {
namespace {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// schema helpers

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) invalid(where, "unexpected key '" + key + "'");
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where, std::string("missing key '") + key + "'");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) invalid(where, "expected a number");
  return v.get<double>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) invalid(where, "expected a string");
  return v.get<std::string>();
}

const json& object(const json& v, const std::string& where) {
  if (!v.is_object()) invalid(where, "expected an object");
  return v;
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) invalid(where, "expected an array");
  return v;
}

int one_based_index(const json& v, int dim, const std::string& where) {
  if (!v.is_number_integer()) invalid(where, "expected an integer index");
  int i = v.get<int>();
  if (i < 1 || i > dim) invalid(where, "index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
  return i - 1;
}

/// Expression source `v` parsed on `chart`; parse errors name `where`.
Expr located_expression(const json& v, const Chart& chart, const std::string& where) {
  std::string src;
  if (v.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    src = os.str();
  } else {
    src = text(v, where);
  }
  try {
    return parse_scalar(src, chart);
  } catch (const UnknownIdentifierError& e) {
    throw ParseError(where + ": unknown identifier '" + e.token() + "' in \"" + src + "\"", e.position());
  } catch (const ParseError& e) {
    std::string msg = e.what();
    auto cut = msg.rfind(" at position ");
    if (cut != std::string::npos) msg.resize(cut);
    throw ParseError(where + ": " + msg + " in \"" + src + "\"", e.position());
  }
}

Chart parse_chart(const json& j) {
  const std::string where = "chart";
  object(j, where);
  only_keys(j, where, {"coords", "domain", "parameters"});
  std::vector<std::string> coords;
  for (const auto& c : array(member(j, "coords", where), where + ".coords")) coords.push_back(text(c, where + ".coords"));
  const json& dom = array(member(j, "domain", where), where + ".domain");
  if (dom.size() != coords.size()) invalid(where + ".domain", "needs one interval per coordinate");
  std::vector<Interval> box;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    std::string w = where + ".domain[" + std::to_string(i) + "]";
    if (!dom[i].is_array() || dom[i].size() != 2) invalid(w, "expected [lo, hi]");
    box.push_back({number(dom[i][0], w), number(dom[i][1], w)});
  }
  std::vector<Parameter> params;
  if (auto it = j.find("parameters"); it != j.end()) {
    for (const auto& [name, value] : object(*it, where + ".parameters").items()) {
      params.push_back({name, number(value, where + ".parameters." + name)});
    }
  }
  try {
    return Chart(coords, box, params);
  } catch (const std::invalid_argument& e) {
    invalid(where, e.what());
  }
}

bool needs_metric(StructureKind k) {
  return k == StructureKind::Euclidean || k == StructureKind::Metric || k == StructureKind::Rotsym;
}

// ---------------------------------------------------------------------------
// check table

enum class Needs { Any, Metric, Poisson };

struct KindSpec {
  const char* kind;
  Needs needs;
  bool field;
  bool form;
  std::vector<const char*> scalars;
  std::vector<const char*> optional_scalars;
  std::vector<const char*> numbers;
  bool flow;
};

const std::vector<KindSpec>& kind_table() {
  static const std::vector<KindSpec> table = {
      {"last_multiplier", Needs::Any, true, false, {"multiplier"}, {}, {}, false},
      {"def11", Needs::Any, true, false, {"multiplier"}, {}, {}, false},
      {"witten", Needs::Any, true, false, {"multiplier"}, {}, {}, false},
      {"inverse_multiplier", Needs::Any, true, false, {"inverse"}, {}, {}, false},
      {"first_integral", Needs::Any, true, false, {"function"}, {}, {}, false},
      {"poisson_jacobi", Needs::Poisson, false, false, {}, {}, {}, false},
      {"ham_multiplier", Needs::Poisson, false, false, {"hamiltonian", "multiplier"}, {"rho"}, {}, false},
      {"self_multiplier", Needs::Poisson, false, false, {"function"}, {}, {}, false},
      {"gradient_multiplier", Needs::Metric, false, false, {"potential", "multiplier"}, {}, {}, false},
      {"helmholtz_residual", Needs::Metric, true, false, {"potential", "multiplier"}, {}, {}, false},
      {"harmonic_square", Needs::Metric, false, false, {"function"}, {}, {}, false},
      {"porous_residual", Needs::Metric, false, false, {"function"}, {}, {}, false},
      {"m_harmonic", Needs::Metric, false, true, {"multiplier"}, {}, {}, false},
      {"bracket_first_integral", Needs::Metric, false, false, {"a", "b", "multiplier"}, {}, {}, false},
      {"helmholtz_pair", Needs::Metric, false, false, {"a", "b"}, {}, {"k"}, false},
      {"flow_drift", Needs::Any, true, false, {"multiplier"}, {}, {"dt", "T"}, true},
      {"jacobian_drift", Needs::Any, true, false, {"multiplier"}, {}, {"dt", "T"}, true},
  };
  return table;
}

const KindSpec* find_kind(const std::string& kind) {
  for (const auto& k : kind_table()) {
    if (kind == k.kind) return &k;
  }
  return nullptr;
}

constexpr double kDefaultMaxDrift = 1e-6;

CheckRequest parse_check(const json& j, std::size_t index, const ProblemDocument& doc) {
  std::string where = "checks[" + std::to_string(index) + "]";
  object(j, where);
  CheckRequest req;
  req.kind = text(member(j, "kind", where), where + ".kind");
  const KindSpec* spec = find_kind(req.kind);
  if (!spec) invalid(where + ".kind", "unknown check kind '" + req.kind + "'");
  req.name = j.contains("name") ? text(j["name"], where + ".name") : req.kind + "#" + std::to_string(index + 1);
  where = "check '" + req.name + "'";

  std::set<std::string> allowed = {"name", "kind", "tolerance"};
  if (spec->needs == Needs::Metric && !needs_metric(doc.structure)) {
    invalid(where, req.kind + " needs a metric structure (euclidean, metric or rotsym), document has " +
                       structure_name(doc.structure));
  }
  if (spec->needs == Needs::Poisson && doc.structure != StructureKind::Poisson) {
    invalid(where, req.kind + " needs a poisson structure, document has " + structure_name(doc.structure));
  }
  if (spec->field) {
    allowed.insert("field");
    std::string name = text(member(j, "field", where), where + ".field");
    auto it = doc.fields.find(name);
    if (it == doc.fields.end()) throw ReferenceError(name);
    req.field = it->second;
  }
  if (spec->form) {
    allowed.insert("form");
    std::string name = text(member(j, "form", where), where + ".form");
    auto it = doc.forms.find(name);
    if (it == doc.forms.end()) throw ReferenceError(name);
    req.form = it->second;
  }
  auto resolve = [&](const char* role, bool required) {
    allowed.insert(role);
    if (!j.contains(role)) {
      if (required) invalid(where, std::string("missing key '") + role + "'");
      return;
    }
    std::string name = text(j[role], where + "." + role);
    auto it = doc.scalars.find(name);
    if (it == doc.scalars.end()) throw ReferenceError(name);
    req.scalars.emplace(role, it->second);
  };
  for (const char* r : spec->scalars) resolve(r, true);
  for (const char* r : spec->optional_scalars) resolve(r, false);
  for (const char* n : spec->numbers) {
    allowed.insert(n);
    req.numbers[n] = number(member(j, n, where), where + "." + n);
  }
  if (spec->flow) {
    allowed.insert("x0");
    allowed.insert("max_drift");
    for (const auto& c : array(member(j, "x0", where), where + ".x0")) req.x0.push_back(number(c, where + ".x0"));
    if (static_cast<int>(req.x0.size()) != doc.chart.dim()) invalid(where + ".x0", "needs one value per coordinate");
    req.numbers["max_drift"] = j.contains("max_drift") ? number(j["max_drift"], where + ".max_drift") : kDefaultMaxDrift;
  }
  if (j.contains("tolerance")) {
    double t = number(j["tolerance"], where + ".tolerance");
    if (!(t > 0.0)) invalid(where + ".tolerance", "must be positive");
    req.tolerance = t;
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) invalid(where, "unexpected key '" + key + "'");
  }
  return req;
}

// ---------------------------------------------------------------------------
// execution

CheckVerdict drift_verdict(const DriftReport& d, const std::vector<double>& x0, double bound) {
  CheckVerdict v;
  v.tolerance = bound;
  v.max_abs_residual = d.max_abs_drift;
  v.mean_abs_residual = d.drift_at_end;
  v.max_scaled_residual = d.max_abs_drift;
  v.witness = x0;
  v.samples_used = d.steps;
  v.passed = std::isfinite(d.max_abs_drift) && d.max_abs_drift <= bound;
  char buf[96];
  std::snprintf(buf, sizeof buf, "invariant starts at %.17g", d.invariant_initial);
  v.notes.emplace_back(buf);
  return v;
}

CheckVerdict execute(const ProblemDocument& doc, const CheckRequest& req, const Sampler& s, double tol) {
  auto sc = [&](const char* role) -> const Expr& { return req.scalars.at(role); };
  const VolumeForm& v = doc.volume;
  const std::string& k = req.kind;
  if (k == "last_multiplier") return check_last_multiplier(*req.field, sc("multiplier"), v, s, tol);
  if (k == "def11") return check_def11(*req.field, sc("multiplier"), v, s, tol);
  if (k == "witten") return check_witten_characterization(*req.field, sc("multiplier"), v, s, tol);
  if (k == "inverse_multiplier") return check_inverse_multiplier(*req.field, sc("inverse"), v, s, tol);
  if (k == "first_integral") return check_first_integral(*req.field, sc("function"), s, tol);
  if (k == "poisson_jacobi") return check_jacobi(*doc.bivector, s, tol);
  if (k == "ham_multiplier") {
    PoissonStructure p(*doc.bivector, s, tol);
    if (req.scalars.count("rho")) {
      return check_unimodular_multiplier(p, sc("rho"), sc("hamiltonian"), sc("multiplier"), s, tol);
    }
    return check_ham_multiplier(p, sc("hamiltonian"), sc("multiplier"), s, tol);
  }
  if (k == "self_multiplier") return check_self_multiplier(PoissonStructure(*doc.bivector, s, tol), sc("function"), s, tol);
  const Metric& g = *doc.metric;
  if (k == "gradient_multiplier") return check_gradient_multiplier(g, sc("potential"), sc("multiplier"), s, tol);
  if (k == "helmholtz_residual") {
    return check_helmholtz_residual(g, *req.field, sc("potential"), sc("multiplier"), s, tol);
  }
  if (k == "harmonic_square") return check_harmonic_square(g, sc("function"), s, tol);
  if (k == "porous_residual") return zero_on_domain(porous_medium_residual(g, sc("function")), doc.chart, s, tol);
  if (k == "m_harmonic") return check_m_harmonic(g, sc("multiplier"), *req.form, s, tol);
  if (k == "bracket_first_integral") return check_bracket_first_integral(g, sc("a"), sc("b"), sc("multiplier"), s, tol);
  if (k == "helmholtz_pair") return helmholtz_pair_multiplier(g, sc("a"), sc("b"), req.numbers.at("k"), s, tol).verdict;
  if (k == "flow_drift" || k == "jacobian_drift") {
    double dt = req.numbers.at("dt"), t_end = req.numbers.at("T");
    DriftReport d = k == "flow_drift" ? transport_drift(*req.field, sc("multiplier"), v, req.x0, dt, t_end)
                                      : jacobian_invariant_drift(*req.field, sc("multiplier"), v, req.x0, dt, t_end);
    return drift_verdict(d, req.x0, req.numbers.at("max_drift"));
  }
  throw ValidationError("unknown check kind '" + k + "'");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string format_point(const std::vector<double>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    out += (i ? ", " : "") + std::string(buf);
  }
  return out + ")";
}

}  // namespace

const char* structure_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::Volume: return "volume";
    case StructureKind::Euclidean: return "euclidean";
    case StructureKind::Metric: return "metric";
    case StructureKind::Rotsym: return "rotsym";
    case StructureKind::Poisson: return "poisson";
  }
  return "?";
}

const std::vector<std::string>& check_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> out;
    for (const auto& k : kind_table()) out.emplace_back(k.kind);
    return out;
  }();
  return kinds;
}

ProblemDocument parse_document(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte);
  }
  object(j, "document");
  only_keys(j, "document",
            {"version", "description", "chart", "structure", "scalars", "fields", "forms", "checks", "sampler",
             "tolerance"});
  const json& version = member(j, "version", "document");
  if (!version.is_number_integer() || version.get<int>() != 1) invalid("version", "only schema version 1 is supported");

  Chart chart = parse_chart(member(j, "chart", "document"));

  Sampler sampler;
  if (auto it = j.find("sampler"); it != j.end()) {
    object(*it, "sampler");
    only_keys(*it, "sampler", {"seed", "count", "guard"});
    if (it->contains("seed")) {
      if (!(*it)["seed"].is_number_unsigned()) invalid("sampler.seed", "expected a non-negative integer");
      sampler.seed = (*it)["seed"].get<std::uint64_t>();
    }
    if (it->contains("count")) {
      if (!(*it)["count"].is_number_integer() || (*it)["count"].get<int>() < 1) invalid("sampler.count", "expected a positive integer");
      sampler.count = (*it)["count"].get<int>();
    }
    if (it->contains("guard")) {
      sampler.guard_tol = number((*it)["guard"], "sampler.guard");
      if (!(sampler.guard_tol > 0.0)) invalid("sampler.guard", "must be positive");
    }
  }
  double tolerance = kDefaultTolerance;
  if (auto it = j.find("tolerance"); it != j.end()) {
    tolerance = number(*it, "tolerance");
    if (!(tolerance > 0.0)) invalid("tolerance", "must be positive");
  }

  const json& st = object(member(j, "structure", "document"), "structure");
  std::string kind = text(member(st, "kind", "structure"), "structure.kind");
  StructureKind sk;
  std::optional<Metric> metric;
  std::optional<Bivector> bivector;
  std::optional<VolumeForm> volume;
  try {
    if (kind == "volume") {
      only_keys(st, "structure", {"kind", "density"});
      sk = StructureKind::Volume;
      Expr density = st.contains("density") ? located_expression(st["density"], chart, "structure.density")
                                            : Expr::constant(1);
      volume = density.is_one() ? VolumeForm::coordinate(chart) : VolumeForm(chart, density, sampler);
    } else if (kind == "euclidean") {
      only_keys(st, "structure", {"kind"});
      sk = StructureKind::Euclidean;
      metric = Metric::euclidean(chart);
    } else if (kind == "metric") {
      only_keys(st, "structure", {"kind", "g"});
      sk = StructureKind::Metric;
      const json& rows = array(member(st, "g", "structure"), "structure.g");
      std::vector<std::vector<Expr>> g;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string w = "structure.g[" + std::to_string(r) + "]";
        std::vector<Expr> row;
        for (std::size_t c = 0; c < array(rows[r], w).size(); ++c) {
          row.push_back(located_expression(rows[r][c], chart, w + "[" + std::to_string(c) + "]"));
        }
        g.push_back(std::move(row));
      }
      metric = Metric(chart, g, sampler);
    } else if (kind == "rotsym") {
      only_keys(st, "structure", {"kind", "phi"});
      sk = StructureKind::Rotsym;
      metric = Metric::rotationally_symmetric(chart, located_expression(member(st, "phi", "structure"), chart,
                                                                        "structure.phi"),
                                              sampler);
    } else if (kind == "poisson") {
      only_keys(st, "structure", {"kind", "bivector", "structure_constants"});
      sk = StructureKind::Poisson;
      bool has_b = st.contains("bivector"), has_c = st.contains("structure_constants");
      if (has_b == has_c) invalid("structure", "poisson needs exactly one of 'bivector' or 'structure_constants'");
      int n = chart.dim();
      if (has_b) {
        std::map<std::pair<int, int>, Expr> upper;
        const json& entries = array(st["bivector"], "structure.bivector");
        for (std::size_t e = 0; e < entries.size(); ++e) {
          std::string w = "structure.bivector[" + std::to_string(e) + "]";
          if (!entries[e].is_array() || entries[e].size() != 3) invalid(w, "expected [i, j, expression]");
          int i = one_based_index(entries[e][0], n, w), jj = one_based_index(entries[e][1], n, w);
          if (i >= jj) invalid(w, "entries need i < j");
          if (!upper.emplace(std::make_pair(i, jj), located_expression(entries[e][2], chart, w)).second) {
            invalid(w, "duplicate entry");
          }
        }
        bivector = Bivector(chart, std::move(upper));
      } else {
        std::vector<StructureConstants::Entry> entries;
        const json& list = array(st["structure_constants"], "structure.structure_constants");
        for (std::size_t e = 0; e < list.size(); ++e) {
          std::string w = "structure.structure_constants[" + std::to_string(e) + "]";
          if (!list[e].is_array() || list[e].size() != 4) invalid(w, "expected [i, j, k, value]");
          entries.push_back({one_based_index(list[e][0], n, w), one_based_index(list[e][1], n, w),
                             one_based_index(list[e][2], n, w), number(list[e][3], w)});
          if (entries.back().i >= entries.back().j) invalid(w, "entries need i < j");
        }
        bivector = lie_poisson(chart, StructureConstants(n, entries)).bivector();
      }
      volume = VolumeForm::coordinate(chart);
    } else {
      invalid("structure.kind", "unknown structure '" + kind + "'");
    }
  } catch (const PreconditionError& e) {
    invalid("structure", e.what());
  }
  if (metric) volume = metric->volume();

  ProblemDocument doc{chart, sk, *volume, metric, bivector, {}, {}, {}, sampler, tolerance, {}};

  auto identifier_key = [&](const std::string& name, const std::string& where) {
    if (!is_identifier(name)) invalid(where, "'" + name + "' is not a valid name");
  };
  if (auto it = j.find("scalars"); it != j.end()) {
    for (const auto& [name, src] : object(*it, "scalars").items()) {
      identifier_key(name, "scalars");
      doc.scalars.emplace(name, located_expression(src, chart, "scalars." + name));
    }
  }
  if (auto it = j.find("fields"); it != j.end()) {
    for (const auto& [name, comps] : object(*it, "fields").items()) {
      identifier_key(name, "fields");
      std::string w = "fields." + name;
      array(comps, w);
      if (static_cast<int>(comps.size()) != chart.dim()) invalid(w, "needs one component per coordinate");
      std::vector<Expr> c;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        c.push_back(located_expression(comps[i], chart, w + "[" + std::to_string(i) + "]"));
      }
      doc.fields.emplace(name, VectorField(chart, c));
    }
  }
  if (auto it = j.find("forms"); it != j.end()) {
    for (const auto& [name, comps] : object(*it, "forms").items()) {
      identifier_key(name, "forms");
      std::string w = "forms." + name;
      array(comps, w);
      if (static_cast<int>(comps.size()) != chart.dim()) invalid(w, "a 1-form needs one coefficient per coordinate");
      std::vector<Expr> c;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        c.push_back(located_expression(comps[i], chart, w + "[" + std::to_string(i) + "]"));
      }
      doc.forms.emplace(name, DifferentialForm::one_form(chart, c));
    }
  }
  if (auto it = j.find("checks"); it != j.end()) {
    array(*it, "checks");
    std::set<std::string> names;
    for (std::size_t i = 0; i < it->size(); ++i) {
      CheckRequest req = parse_check((*it)[i], i, doc);
      if (!names.insert(req.name).second) invalid("checks", "duplicate check name '" + req.name + "'");
      doc.checks.push_back(std::move(req));
    }
  }
  return doc;
}

ProblemDocument load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

Report run_checks(const ProblemDocument& doc, const RunOptions& options) {
  Report report;
  report.checks.resize(doc.checks.size());
  Sampler base = doc.sampler;
  if (options.seed) base.seed = *options.seed;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < doc.checks.size(); i = next++) {
      const CheckRequest& req = doc.checks[i];
      CheckResult& out = report.checks[i];
      out.name = req.name;
      out.kind = req.kind;
      double tol = options.tolerance ? *options.tolerance : req.tolerance.value_or(doc.tolerance);
      auto start = std::chrono::steady_clock::now();
      try {
        out.verdict = execute(doc, req, base.derived(i), tol);
        out.passed = out.verdict.passed;
      } catch (const std::exception& e) {
        out.error = e.what();
        out.passed = false;
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, doc.checks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (doc.checks.empty()) report.warnings.emplace_back("document defines no checks");
  for (const auto& c : report.checks) {
    report.passed = report.passed && c.passed;
    if (c.verdict.trivial_multiplier) {
      report.warnings.push_back("check '" + c.name + "': the multiplier vanishes identically");
    }
  }
  return report;
}

std::string report_json(const Report& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry = {
        {"name", c.name},
        {"kind", c.kind},
        {"passed", c.passed},
    };
    if (c.error) {
      entry["error"] = *c.error;
    } else {
      const CheckVerdict& v = c.verdict;
      entry["max_abs_residual"] = v.max_abs_residual;
      entry["max_scaled_residual"] = v.max_scaled_residual;
      entry["mean_abs_residual"] = v.mean_abs_residual;
      entry["tolerance"] = v.tolerance;
      entry["witness"] = v.witness;
      entry["samples_used"] = v.samples_used;
      entry["samples_skipped"] = v.samples_skipped;
      entry["trivial_multiplier"] = v.trivial_multiplier;
      entry["hypothesis_failed"] = v.hypothesis_failed;
      entry["notes"] = v.notes;
    }
    checks.push_back(std::move(entry));
  }
  json out = {{"version", 1}, {"passed", report.passed}, {"checks", checks}, {"warnings", report.warnings}};
  return out.dump(2) + "\n";
}

std::string report_text(const Report& report) {
  std::ostringstream os;
  for (const auto& c : report.checks) {
    os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.kind << ")";
    if (c.error) {
      os << "  error: " << *c.error << "\n";
      continue;
    }
    const CheckVerdict& v = c.verdict;
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.1f ms", c.seconds * 1e3);
    os << "  max residual " << format_double(v.max_abs_residual) << ", tolerance " << format_double(v.tolerance)
       << ", samples " << v.samples_used << "/" << (v.samples_used + v.samples_skipped) << ", " << ms << "\n";
    if (!c.passed && !v.witness.empty()) os << "       witness " << format_point(v.witness) << "\n";
    for (const auto& n : v.notes) os << "       note: " << n << "\n";
  }
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  std::size_t failed = 0;
  for (const auto& c : report.checks) failed += c.passed ? 0 : 1;
  os << (report.passed ? "PASS" : "FAIL") << ": " << report.checks.size() - failed << " of " << report.checks.size()
     << " checks passed\n";
  return os.str();
}

}  // namespace lmlab
