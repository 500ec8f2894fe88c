// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lmlab/lmlab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct DocumentDeleter {
  void operator()(lmlab_document* d) const { lmlab_document_free(d); }
};
struct ReportDeleter {
  void operator()(lmlab_report* r) const { lmlab_report_free(r); }
};
using DocumentPtr = std::unique_ptr<lmlab_document, DocumentDeleter>;
using ReportPtr = std::unique_ptr<lmlab_report, ReportDeleter>;

int report_error(lmlab_status status) {
  std::cerr << "lmlab: " << lmlab_status_name(status) << ": " << lmlab_last_error() << "\n";
  return kExitError;
}

template <class F>
std::optional<std::string> read_text(F&& producer) {
  size_t n = 0;
  if (producer(nullptr, 0, &n) != LMLAB_OK) return std::nullopt;
  std::string s(n + 1, '\0');
  if (producer(s.data(), s.size(), &n) != LMLAB_OK) return std::nullopt;
  s.resize(n);
  return s;
}

std::optional<DocumentPtr> load(const std::string& path, int& exit_code) {
  lmlab_document* raw = nullptr;
  lmlab_status st = lmlab_document_load_file(path.c_str(), &raw);
  if (st != LMLAB_OK) {
    exit_code = report_error(st);
    return std::nullopt;
  }
  return DocumentPtr(raw);
}

struct CheckArgs {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string format = "text";
  unsigned threads = 0;
};

int run_check(const CheckArgs& a) {
  int code = kExitError;
  auto doc = load(a.file, code);
  if (!doc) return code;
  lmlab_run_options opts{};
  if (a.seed) {
    opts.has_seed = 1;
    opts.seed = *a.seed;
  }
  if (a.tol) {
    opts.has_tolerance = 1;
    opts.tolerance = *a.tol;
  }
  opts.threads = a.threads;
  lmlab_report* raw = nullptr;
  lmlab_status st = lmlab_document_run(doc->get(), &opts, &raw);
  if (st != LMLAB_OK) return report_error(st);
  ReportPtr report(raw);
  auto text = read_text([&](char* b, size_t s, size_t* n) {
    return a.format == "json" ? lmlab_report_json(report.get(), b, s, n) : lmlab_report_text(report.get(), b, s, n);
  });
  if (!text) return report_error(LMLAB_ERROR_INTERNAL);
  std::cout << *text;
  return lmlab_report_passed(report.get()) ? kExitPass : kExitFail;
}

struct FlowArgs {
  std::string file;
  std::string field;
  std::string multiplier;
  std::vector<double> x0;
  double dt = 0.01;
  double t_end = 1.0;
  double max_drift = 1e-6;
};

void print_drift(const char* label, const lmlab_drift& d) {
  std::printf("%-10s initial %.12g  max drift %.3e  drift at end %.3e  steps %d\n", label, d.invariant_initial,
              d.max_abs_drift, d.drift_at_end, d.steps);
}

int run_flow(const FlowArgs& a) {
  int code = kExitError;
  auto doc = load(a.file, code);
  if (!doc) return code;
  lmlab_drift transport{}, jacobian{};
  lmlab_status st = lmlab_document_flow(doc->get(), a.field.c_str(), a.multiplier.c_str(), a.x0.data(),
                                        static_cast<int>(a.x0.size()), a.dt, a.t_end, &transport, &jacobian);
  if (st != LMLAB_OK) return report_error(st);
  print_drift("transport", transport);
  print_drift("jacobian", jacobian);
  bool ok = transport.max_abs_drift <= a.max_drift && jacobian.max_abs_drift <= a.max_drift;
  std::printf("%s: drifts %s %.1e\n", ok ? "PASS" : "FAIL", ok ? "within" : "exceed", a.max_drift);
  return ok ? kExitPass : kExitFail;
}

int run_examples(const std::string& out_dir, const std::string& show) {
  int n = lmlab_fixture_count();
  if (!show.empty()) {
    for (int i = 0; i < n; ++i)
      if (show == lmlab_fixture_name(i)) {
        std::cout << lmlab_fixture_json(i);
        return kExitPass;
      }
    std::cerr << "lmlab: no bundled example named '" << show << "'\n";
    return kExitError;
  }
  if (out_dir.empty()) {
    for (int i = 0; i < n; ++i) std::cout << lmlab_fixture_name(i) << "\n";
    return kExitPass;
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "lmlab: cannot create " << out_dir << ": " << ec.message() << "\n";
    return kExitError;
  }
  for (int i = 0; i < n; ++i) {
    auto path = std::filesystem::path(out_dir) / lmlab_fixture_name(i);
    std::ofstream out(path);
    out << lmlab_fixture_json(i);
    if (!out) {
      std::cerr << "lmlab: cannot write " << path.string() << "\n";
      return kExitError;
    }
    std::cout << path.string() << "\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Last-multiplier checks for vector fields on charts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lmlab_version()));

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run the checks of a problem document");
  check_cmd->add_option("file", check.file, "Problem document (JSON)")->required();
  check_cmd->add_option("--seed", check.seed, "Sampler seed (overrides the document)");
  check_cmd->add_option("--tol", check.tol, "Relative tolerance for every check")->check(CLI::PositiveNumber);
  check_cmd->add_option("--format", check.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_option("--threads", check.threads, "Worker threads (0 = hardware concurrency)");

  FlowArgs flow;
  auto* flow_cmd = app.add_subcommand("flow", "Integrate a field and report multiplier drift along the trajectory");
  flow_cmd->add_option("file", flow.file, "Problem document (JSON)")->required();
  flow_cmd->add_option("--field", flow.field, "Field name")->required();
  flow_cmd->add_option("--multiplier", flow.multiplier, "Scalar name")->required();
  flow_cmd->add_option("--x0", flow.x0, "Initial point")->required()->expected(1, -1);
  flow_cmd->add_option("--dt", flow.dt, "Step size")->capture_default_str();
  flow_cmd->add_option("--T", flow.t_end, "Final time")->capture_default_str();
  flow_cmd->add_option("--max-drift", flow.max_drift, "Pass threshold for both drifts")->capture_default_str();

  std::string out_dir, show;
  auto* examples_cmd = app.add_subcommand("examples", "List or write the bundled example documents");
  examples_cmd->add_option("--out-dir", out_dir, "Write every example into this directory");
  examples_cmd->add_option("--show", show, "Print one example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  if (check_cmd->parsed()) return run_check(check);
  if (flow_cmd->parsed()) return run_flow(flow);
  return run_examples(out_dir, show);
}
