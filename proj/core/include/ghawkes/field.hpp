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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ghawkes {

/// Function on [0,1] sampled at the midpoints (k + 1/2)/m of a uniform grid.
class MacroField {
 public:
  MacroField() = default;
  explicit MacroField(std::size_t m, double value = 0.0) : values_(m, value) {}
  explicit MacroField(std::vector<double> values) : values_(std::move(values)) {}

  static MacroField from_function(std::size_t m, const std::function<double(double)>& fn);
  static double node(std::size_t k, std::size_t m) {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(m);
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// sqrt(mean of squares): the L2(I) norm of the piecewise-constant field.
  double l2_norm() const;
  double linf_norm() const;
  double mean() const;

  /// Piecewise-linear interpolation through the nodes, constant beyond the
  /// outermost nodes.
  double at(double x) const;
  /// The field re-sampled on a q-point midpoint grid.
  MacroField resample(std::size_t q) const;

  MacroField& operator+=(const MacroField& other);
  MacroField& operator-=(const MacroField& other);
  MacroField& operator*=(double s);
  friend MacroField operator-(MacroField a, const MacroField& b) { return a -= b; }
  friend MacroField operator+(MacroField a, const MacroField& b) { return a += b; }
  friend MacroField operator*(double s, MacroField a) { return a *= s; }

 private:
  std::vector<double> values_;
};

}  // namespace ghawkes
