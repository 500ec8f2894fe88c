// SPDX-License-Identifier: Apache-2.0
#include "lmlab/chart.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>
#include <string_view>

#include "lmlab/errors.hpp"

namespace lmlab {

namespace {
constexpr std::array<std::string_view, 9> kFunctions = {"sin",  "cos",  "exp",  "ln",  "sqrt",
                                                        "cosh", "sinh", "tanh", "abs"};
}

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_reserved_name(const std::string& s) {
  return std::find(kFunctions.begin(), kFunctions.end(), s) != kFunctions.end();
}

Chart::Chart(std::vector<std::string> coords, std::vector<Interval> domain,
             std::vector<Parameter> parameters)
    : coords_(std::move(coords)), domain_(std::move(domain)), parameters_(std::move(parameters)) {
  if (coords_.empty()) throw ValidationError("chart needs at least one coordinate");
  if (domain_.size() != coords_.size()) {
    throw ValidationError("chart has " + std::to_string(coords_.size()) + " coordinates but " +
                          std::to_string(domain_.size()) + " domain intervals");
  }
  std::set<std::string> seen;
  auto admit = [&](const std::string& name) {
    if (!is_identifier(name)) throw ValidationError("invalid identifier '" + name + "'");
    if (is_reserved_name(name)) throw ValidationError("'" + name + "' is a reserved function name");
    if (!seen.insert(name).second) throw ValidationError("duplicate name '" + name + "'");
  };
  for (const auto& c : coords_) admit(c);
  for (const auto& p : parameters_) {
    admit(p.name);
    if (!std::isfinite(p.value)) throw ValidationError("parameter '" + p.name + "' is not finite");
  }
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    const auto& iv = domain_[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
      throw ValidationError("domain interval for '" + coords_[i] + "' must have positive length");
    }
  }
}

Chart Chart::numbered(int dim, double lo, double hi, const std::string& prefix) {
  std::vector<std::string> names;
  std::vector<Interval> box;
  for (int i = 0; i < dim; ++i) {
    names.push_back(prefix + std::to_string(i + 1));
    box.push_back({lo, hi});
  }
  return Chart(std::move(names), std::move(box));
}

std::optional<int> Chart::coord_index(const std::string& name) const {
  auto it = std::find(coords_.begin(), coords_.end(), name);
  if (it == coords_.end()) return std::nullopt;
  return static_cast<int>(it - coords_.begin());
}

const Parameter* Chart::parameter(const std::string& name) const {
  for (const auto& p : parameters_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Chart Chart::enlarged(double fraction) const {
  Chart out = *this;
  for (auto& iv : out.domain_) {
    double pad = fraction * iv.width();
    iv.lo -= pad;
    iv.hi += pad;
  }
  return out;
}

bool Chart::contains(const std::vector<double>& point) const {
  if (point.size() != domain_.size()) return false;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (!(point[i] >= domain_[i].lo && point[i] <= domain_[i].hi)) return false;
  }
  return true;
}

void require_same_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw ChartMismatchError();
}

}  // namespace lmlab
