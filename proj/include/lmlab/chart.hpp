// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace lmlab {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A named real constant that expressions may reference by name.
struct Parameter {
  std::string name;
  double value = 0.0;
  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// A coordinate chart: coordinate names plus the closed sampling box.
class Chart {
 public:
  /// Throws ValidationError when names are empty, duplicated, not valid
  /// identifiers, collide with function names, or an interval is degenerate.
  Chart(std::vector<std::string> coords, std::vector<Interval> domain,
        std::vector<Parameter> parameters = {});

  /// Convenience: `dim` coordinates named x1..xn on [lo,hi]^n.
  static Chart numbered(int dim, double lo, double hi, const std::string& prefix = "x");

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  const std::vector<std::string>& coords() const noexcept { return coords_; }
  const std::vector<Interval>& domain() const noexcept { return domain_; }
  const std::vector<Parameter>& parameters() const noexcept { return parameters_; }

  std::optional<int> coord_index(const std::string& name) const;
  const Parameter* parameter(const std::string& name) const;

  /// Same chart with every interval widened by `fraction` of its width per side.
  Chart enlarged(double fraction) const;
  bool contains(const std::vector<double>& point) const;

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> coords_;
  std::vector<Interval> domain_;
  std::vector<Parameter> parameters_;
};

bool is_identifier(const std::string& s);
bool is_reserved_name(const std::string& s);

/// Throws ChartMismatchError when the charts differ.
void require_same_chart(const Chart& a, const Chart& b);

}  // namespace lmlab
