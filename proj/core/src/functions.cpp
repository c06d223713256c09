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

#include "ghawkes/functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ghawkes/csv.hpp"

namespace ghawkes {

ScalarFunction ScalarFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty()) coefficients.push_back(0.0);
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw std::invalid_argument("polynomial coefficient is not finite");
  }
  return ScalarFunction(Polynomial{std::move(coefficients)});
}

ScalarFunction ScalarFunction::table(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() != values.size() || grid.size() < 2) {
    throw std::invalid_argument("table needs at least two (grid, value) pairs");
  }
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("table grid must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("table value is not finite");
  }
  return ScalarFunction(Table{std::move(grid), std::move(values)});
}

ScalarFunction ScalarFunction::from_csv(const std::filesystem::path& path) {
  auto [grid, values] = read_two_column_csv(path);
  return table(std::move(grid), std::move(values));
}

double ScalarFunction::operator()(double x) const {
  if (const auto* p = std::get_if<Polynomial>(&repr_)) {
    double acc = 0.0;
    for (auto it = p->coefficients.rbegin(); it != p->coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  const auto& t = std::get<Table>(repr_);
  if (x <= t.grid.front()) return t.values.front();
  if (x >= t.grid.back()) return t.values.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(t.grid.begin(), t.grid.end(), x) - t.grid.begin());
  const std::size_t lo = hi - 1;
  const double w = (x - t.grid[lo]) / (t.grid[hi] - t.grid[lo]);
  return (1.0 - w) * t.values[lo] + w * t.values[hi];
}

std::vector<double> ScalarFunction::knots() const {
  if (const auto* t = std::get_if<Table>(&repr_)) return t->grid;
  return {};
}

std::string ScalarFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (const auto* p = std::get_if<Polynomial>(&repr_)) {
    os << "poly[";
    for (std::size_t k = 0; k < p->coefficients.size(); ++k) os << (k ? "," : "") << p->coefficients[k];
    os << "]";
  } else {
    const auto& t = std::get<Table>(repr_);
    os << "table[" << t.grid.size();
    for (std::size_t k = 0; k < t.grid.size(); ++k) os << ";" << t.grid[k] << ":" << t.values[k];
    os << "]";
  }
  return os.str();
}

namespace {

double golden_max(const std::function<double(double)>& fn, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  return std::max({fc, fd, fn(0.5 * (a + b))});
}

}  // namespace

Extrema extrema_on_unit_interval(const std::function<double(double)>& fn,
                                 const std::vector<double>& knots) {
  constexpr int kLattice = 8192;
  std::vector<double> values(kLattice + 1);
  for (int k = 0; k <= kLattice; ++k) values[k] = fn(static_cast<double>(k) / kLattice);
  Extrema out{*std::min_element(values.begin(), values.end()),
              *std::max_element(values.begin(), values.end())};
  for (double x : knots) {
    if (x < 0.0 || x > 1.0) continue;
    const double v = fn(x);
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  const auto neg = [&fn](double x) { return -fn(x); };
  for (int k = 1; k < kLattice; ++k) {
    const double a = static_cast<double>(k - 1) / kLattice;
    const double b = static_cast<double>(k + 1) / kLattice;
    if (values[k] > values[k - 1] && values[k] >= values[k + 1]) {
      out.max = std::max(out.max, golden_max(fn, a, b));
    }
    if (values[k] < values[k - 1] && values[k] <= values[k + 1]) {
      out.min = std::min(out.min, -golden_max(neg, a, b));
    }
  }
  return out;
}

}  // namespace ghawkes
