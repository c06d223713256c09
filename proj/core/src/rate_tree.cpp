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

#include "ghawkes/rate_tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ghawkes {

RateTree::RateTree(std::size_t n) : n_(n), leaves_(std::bit_ceil(std::max<std::size_t>(n, 1))) {
  nodes_.assign(2 * leaves_, 0.0);
}

void RateTree::set(std::size_t i, double value) {
  std::size_t p = leaves_ + i;
  nodes_[p] = value;
  for (p >>= 1; p >= 1; p >>= 1) nodes_[p] = nodes_[2 * p] + nodes_[2 * p + 1];
}

void RateTree::rebuild() {
  for (std::size_t p = leaves_ - 1; p >= 1; --p) nodes_[p] = nodes_[2 * p] + nodes_[2 * p + 1];
}

void RateTree::assign(std::span<const double> values) {
  if (values.size() != n_) throw std::invalid_argument("rate tree size mismatch");
  std::copy(values.begin(), values.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(leaves_));
  rebuild();
}

std::size_t RateTree::sample(double u) const {
  double target = u * total();
  std::size_t p = 1;
  while (p < leaves_) {
    const double left = nodes_[2 * p];
    const double right = nodes_[2 * p + 1];
    if ((target < left && left > 0.0) || right <= 0.0) {
      p = 2 * p;
    } else {
      target -= left;
      p = 2 * p + 1;
    }
  }
  return p - leaves_;
}

}  // namespace ghawkes
