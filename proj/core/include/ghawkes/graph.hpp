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

// Diluted W-random interaction graphs and their concentration diagnostics.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "ghawkes/kernels.hpp"

namespace ghawkes {

using NeuronIndex = std::uint32_t;

/// Directed Bernoulli graph on N neurons. Neuron i (0-based) sits at
/// x_i = (i + 1) / N. An edge j -> i means spikes of j feed the current of
/// i with weight 1 / (N rho). Self-loops are allowed.
class InteractionGraph {
 public:
  InteractionGraph() = default;

  /// Builds from per-source target lists (each list sorted, duplicate-free).
  InteractionGraph(std::size_t n, double rho, std::uint64_t seed, std::uint64_t kernel_digest,
                   std::vector<std::vector<NeuronIndex>> targets_by_source);

  std::size_t size() const { return n_; }
  double rho() const { return rho_; }
  /// Per-edge weight 1 / (N rho).
  double weight() const { return 1.0 / (static_cast<double>(n_) * rho_); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t kernel_digest() const { return kernel_digest_; }
  std::size_t edge_count() const { return targets_.size(); }

  /// Sorted targets i of edges j -> i.
  std::span<const NeuronIndex> out_neighbors(std::size_t j) const {
    return {targets_.data() + offsets_[j], targets_.data() + offsets_[j + 1]};
  }
  bool has_edge(std::size_t from, std::size_t to) const;
  const std::vector<std::uint32_t>& in_degrees() const { return in_degrees_; }
  const std::vector<std::uint32_t>& out_degrees() const { return out_degrees_; }

  static double position(std::size_t i, std::size_t n) {
    return static_cast<double>(i + 1) / static_cast<double>(n);
  }

  friend bool operator==(const InteractionGraph&, const InteractionGraph&) = default;

 private:
  std::size_t n_ = 0;
  double rho_ = 1.0;
  std::uint64_t seed_ = 0;
  std::uint64_t kernel_digest_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NeuronIndex> targets_;
  std::vector<std::uint32_t> in_degrees_;
  std::vector<std::uint32_t> out_degrees_;
};

/// Reverse adjacency: for each i, the sorted sources j of edges j -> i.
class InNeighborIndex {
 public:
  explicit InNeighborIndex(const InteractionGraph& g);
  std::span<const NeuronIndex> sources(std::size_t i) const {
    return {sources_.data() + offsets_[i], sources_.data() + offsets_[i + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NeuronIndex> sources_;
};

/// Samples xi_ij ~ Bernoulli(rho W(x_i, x_j)) independently for every ordered
/// pair. Source column j draws from its own stream keyed by (seed, j), so the
/// result does not depend on `threads`.
InteractionGraph sample_graph(std::size_t n, double rho, const SpatialKernel& w, std::uint64_t seed,
                              unsigned threads = 1);

struct DegreeConcentration {
  double max_norm_in;   ///< max_i sum_j xi_ij / (N rho)
  double max_norm_out;  ///< max_j sum_i xi_ij / (N rho)
};

DegreeConcentration degree_concentration(const InteractionGraph& g);

struct SMaxResult {
  double s_max;       ///< max |S_jj'| over the examined pairs
  double bound;       ///< N^(tau - 1/2)
  std::size_t pairs;  ///< number of pairs examined
  bool exact;         ///< all pairs j < j' were enumerated
};

/// S_jj' = (1/N) sum_i (xi_ij - rho W_ij)(xi_ij' - rho W_ij') for one pair.
double pair_statistic(const InteractionGraph& g, const SpatialKernel& w, std::size_t j, std::size_t jp);

/// Maximum of |S_jj'| over `pair_budget` uniformly drawn pairs j != j', or
/// over every pair when the budget covers N(N-1)/2 (dense Gram product).
SMaxResult s_max_statistic(const InteractionGraph& g, const SpatialKernel& w, std::size_t pair_budget,
                           double tau);

struct DilutionAdvisory {
  double general_value;  ///< N^(1 - 2 tau) rho^4
  double bounded_value;  ///< N rho^2
  bool f_bounded;
  double floor;
  bool pass;  ///< the applicable value is at least `floor`
};

DilutionAdvisory dilution_report(std::size_t n, double rho, double tau, bool f_bounded, double floor = 10.0);

/// Deterministic kernel-regularity sums R_{N,1}, R_{N,2} and S_N, by
/// midpoint quadrature with `quadrature` points per cell.
struct KernelRegularity {
  double r1;
  double r2;
  double s;
};

KernelRegularity kernel_regularity(const SpatialKernel& w, std::size_t n, std::size_t quadrature = 16);

/// Text edge list: two header lines, then one "j i" line per edge, sorted.
void write_edge_list(const InteractionGraph& g, const std::filesystem::path& path);
InteractionGraph read_edge_list(const std::filesystem::path& path);

}  // namespace ghawkes
