// Copyright 2026 The ghawkes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace ghawkes {

/// Real function on the unit interval: either a polynomial (coefficients in
/// increasing degree) or a piecewise-linear table on an increasing grid.
/// Tables are extended by their end values outside the grid.
class ScalarFunction {
 public:
  struct Polynomial {
    std::vector<double> coefficients;
  };
  struct Table {
    std::vector<double> grid;
    std::vector<double> values;
  };

  ScalarFunction() : repr_(Polynomial{{0.0}}) {}

  static ScalarFunction constant(double c) { return polynomial({c}); }
  static ScalarFunction polynomial(std::vector<double> coefficients);
  static ScalarFunction table(std::vector<double> grid, std::vector<double> values);
  /// Two-column CSV (grid, value); a header line is skipped if non-numeric.
  static ScalarFunction from_csv(const std::filesystem::path& path);

  double operator()(double x) const;

  /// Breakpoints of a table (empty for polynomials).
  std::vector<double> knots() const;
  bool is_polynomial() const { return std::holds_alternative<Polynomial>(repr_); }
  const std::variant<Polynomial, Table>& repr() const { return repr_; }
  std::string describe() const;

 private:
  explicit ScalarFunction(std::variant<Polynomial, Table> r) : repr_(std::move(r)) {}
  std::variant<Polynomial, Table> repr_;
};

struct Extrema {
  double min;
  double max;
};

/// Minimum and maximum of a continuous function on [0, 1].
///
/// Scans a dense lattice plus the supplied knots, then polishes every
/// interior lattice extremum with a golden-section search.
Extrema extrema_on_unit_interval(const std::function<double(double)>& fn,
                                 const std::vector<double>& knots = {});

}  // namespace ghawkes
