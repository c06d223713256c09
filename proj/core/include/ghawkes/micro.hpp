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

// Event-driven simulation of the N-neuron system by thinning.
//
// Every neuron carries a frozen upper bound on its intensity. Bounds sit in
// a prefix-sum tree; a proposal draws an exponential waiting time at the
// total rate, picks a neuron proportionally to its bound and accepts with
// probability lambda_i(t) / bound_i. A bound is only refreshed when it may
// have become invalid (incoming spike), when the proposal was rejected, and
// in a periodic global sweep.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghawkes/field.hpp"
#include "ghawkes/graph.hpp"
#include "ghawkes/kernels.hpp"
#include "ghawkes/macro.hpp"

namespace ghawkes {

struct SimulationOptions {
  /// Spacing of the observation lattice 0, dt, 2dt, ...; 0 records only
  /// t = 0 and the end time.
  double observe_dt = 0.0;
  /// Stationary profile for dist_to_xinf (any grid; resampled).
  std::optional<MacroField> x_inf;
  /// Stationary intensity profile for dist_lambda_to_ell.
  std::optional<MacroField> ell;
  /// Deterministic current trajectory for dist_to_xt.
  std::optional<MacroTrajectory> x_t;
  /// Profile distances use q = fine_factor * N quadrature nodes.
  std::size_t fine_factor = 4;
  /// Global bound refresh period in proposals; 0 means 8N.
  std::size_t refresh_every = 0;
  /// Stop after this many accepted spikes; 0 means no limit.
  std::uint64_t max_spikes = 0;
  /// Abort once the observed mean intensity exceeds this; 0 disables.
  double blowup_intensity = 0.0;
  /// X_{N,i}(0); empty means all zero.
  std::vector<double> initial_currents;
  bool record_spikes = false;
  /// Track compensators and sample |M_N|_2 on the observation lattice
  /// (exponential memory only).
  bool martingale = false;
};

struct TrajectoryRow {
  double t = 0.0;
  double dist_to_xinf = 0.0;  ///< NaN without a stationary profile
  double dist_to_xt = 0.0;    ///< NaN without a deterministic trajectory
  double mean_intensity = 0.0;
  std::uint64_t total_spikes = 0;
  double max_current = 0.0;
  double mean_current = 0.0;
  double dist_lambda_to_ell = 0.0;  ///< NaN without a stationary intensity
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;

  /// Header `t,dist_to_xinf,dist_to_xt,mean_intensity,total_spikes,max_current`.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
};

struct Spike {
  double t;
  NeuronIndex neuron;
};

struct MartingaleSample {
  double t;
  double l2_squared;  ///< (1/N) sum_i M_{N,i}(t)^2
};

enum class Termination { kCompleted, kExtinct, kSpikeLimit, kBlowUp };

std::string to_string(Termination t);

struct SimulationStats {
  std::uint64_t proposals = 0;
  std::uint64_t acceptances = 0;
  std::uint64_t global_refreshes = 0;
  std::uint64_t rescales = 0;
};

struct SimulationResult {
  TrajectoryRecord record;
  Termination termination = Termination::kCompleted;
  /// Time at which the run stopped (t_end unless stopped early).
  double end_time = 0.0;
  SimulationStats stats;
  std::vector<std::uint64_t> spike_counts;
  std::vector<double> final_currents;
  std::vector<Spike> spikes;
  std::vector<MartingaleSample> martingale;
  /// int_0^end lambda_i, filled when the martingale diagnostic is on.
  std::vector<double> compensators;
};

/// Fast path for h(t) = exp(-alpha t).
SimulationResult simulate_exponential(const InteractionGraph& g, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, double t_end, std::uint64_t seed,
                                      const SimulationOptions& options = {});

/// Any nonnegative memory kernel; currents are full spike-history sums and
/// bounds use the nonincreasing envelope of h. Meant for N up to a few hundred.
SimulationResult simulate_general_h(const InteractionGraph& g, const SynapticResponse& f, const MemoryKernel& h,
                                    const ExogenousDrive& drive, double t_end, std::uint64_t seed,
                                    const SimulationOptions& options = {});

/// Exponential run with compensator tracking; returns the sampled |M_N|_2^2.
std::vector<MartingaleSample> martingale_diagnostic(const InteractionGraph& g, const SynapticResponse& f,
                                                    double alpha, const ExogenousDrive& drive, double t_end,
                                                    std::uint64_t seed, double observe_dt);

/// L2(I) distance between the step profile of `currents` (value X_i on the
/// cell ((i)/N, (i+1)/N]) and `target` sampled on q midpoint nodes, q a
/// multiple of N.
double profile_distance(std::span<const double> currents, const MacroField& target);

/// CSV `t,neuron`.
std::string spike_log_csv(const std::vector<Spike>& spikes);

}  // namespace ghawkes
