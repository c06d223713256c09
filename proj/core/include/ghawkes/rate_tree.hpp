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
#include <span>
#include <vector>

namespace ghawkes {

/// Prefix-sum segment tree over nonnegative weights. Every internal node is
/// recomputed from its children on update, so the root never accumulates
/// incremental rounding drift.
class RateTree {
 public:
  RateTree() = default;
  explicit RateTree(std::size_t n);

  std::size_t size() const { return n_; }
  double total() const { return nodes_.empty() ? 0.0 : nodes_[1]; }
  double get(std::size_t i) const { return nodes_[leaves_ + i]; }

  /// O(log n) single update.
  void set(std::size_t i, double value);
  /// Writes a leaf without touching ancestors; call rebuild() afterwards.
  void set_leaf(std::size_t i, double value) { nodes_[leaves_ + i] = value; }
  /// Leaf storage for bulk writes; call rebuild() afterwards.
  double* leaf_data() { return nodes_.data() + leaves_; }
  /// O(n) recomputation of every internal node.
  void rebuild();
  void assign(std::span<const double> values);

  /// Leaf index whose cumulative range contains u * total(); u in [0, 1).
  /// Never returns a zero-weight leaf while total() > 0.
  std::size_t sample(double u) const;

 private:
  std::size_t n_ = 0;
  std::size_t leaves_ = 0;
  std::vector<double> nodes_;
};

}  // namespace ghawkes
