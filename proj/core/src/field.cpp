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

#include "ghawkes/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghawkes {

MacroField MacroField::from_function(std::size_t m, const std::function<double(double)>& fn) {
  MacroField f(m);
  for (std::size_t k = 0; k < m; ++k) f.values_[k] = fn(node(k, m));
  return f;
}

double MacroField::l2_norm() const {
  if (values_.empty()) return 0.0;
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s / static_cast<double>(values_.size()));
}

double MacroField::linf_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double MacroField::mean() const {
  if (values_.empty()) return 0.0;
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double MacroField::at(double x) const {
  const std::size_t m = values_.size();
  if (m == 0) throw std::logic_error("empty field");
  if (m == 1) return values_[0];
  const double pos = x * static_cast<double>(m) - 0.5;
  if (pos <= 0.0) return values_.front();
  if (pos >= static_cast<double>(m - 1)) return values_.back();
  const auto k = static_cast<std::size_t>(pos);
  const double w = pos - static_cast<double>(k);
  return (1.0 - w) * values_[k] + w * values_[k + 1];
}

MacroField MacroField::resample(std::size_t q) const {
  if (q == values_.size()) return *this;
  MacroField out(q);
  for (std::size_t k = 0; k < q; ++k) out.values_[k] = at(node(k, q));
  return out;
}

MacroField& MacroField::operator+=(const MacroField& other) {
  if (other.size() != size()) throw std::invalid_argument("field grid mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

MacroField& MacroField::operator-=(const MacroField& other) {
  if (other.size() != size()) throw std::invalid_argument("field grid mismatch");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

MacroField& MacroField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

}  // namespace ghawkes
