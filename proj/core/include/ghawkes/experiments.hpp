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

// Config-driven experiments. Each run_* is a pure function of the config:
// graphs and simulations draw from streams keyed by (master_seed, N,
// replica), and replica results are merged in (N, replica) order whatever
// the thread count.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ghawkes/config.hpp"
#include "ghawkes/graph.hpp"
#include "ghawkes/grid_operator.hpp"
#include "ghawkes/macro.hpp"
#include "ghawkes/micro.hpp"

namespace ghawkes {

/// Runs fn(0..count-1) on up to `threads` workers. The first exception (by
/// index) is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

double median(std::vector<double> values);
/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Seed of the stream used for (N, replica, purpose).
std::uint64_t replica_seed(std::uint64_t master, std::size_t n, std::size_t replica, std::uint64_t purpose);

// --- check -----------------------------------------------------------------

struct CheckResult {
  StabilityReport stability;
  struct Dilution {
    std::size_t n;
    double rho;
    DilutionAdvisory advisory;
  };
  std::vector<Dilution> dilution;

  /// One JSON object: r_inf, product, gamma, subcritical, dilution[].
  std::string to_json() const;
};

CheckResult run_check(const ExperimentConfig& cfg);

// --- macro -----------------------------------------------------------------

struct MacroResult {
  StabilityReport stability;
  FixedPointResult fixed_point;
  /// Currents from X_0 = 0 (exponential memory) or intensities (Volterra).
  MacroTrajectory trajectory{TrajectoryKind::kCurrent};
  std::optional<double> t_eps;
};

MacroResult run_macro(const ExperimentConfig& cfg);
void write_outputs(const MacroResult& r, const std::filesystem::path& dir);

// --- stability ---------------------------------------------------------------

struct StabilityRow {
  std::size_t n = 0;
  std::size_t replica = 0;
  double rho = 1.0;
  double t_eps = 0.0;
  double horizon = 0.0;
  std::size_t samples = 0;
  double sup_x = 0.0;
  double exceed_x = 0.0;
  double sup_lambda = 0.0;
  double exceed_lambda = 0.0;
  Termination termination = Termination::kCompleted;
  bool verdict_x = false;
  bool verdict_lambda = false;
};

struct StabilitySummary {
  std::size_t n = 0;
  double mean_exceed_x = 0.0;
  double mean_exceed_lambda = 0.0;
  /// Share of replicas with no exceedance.
  double clean_x = 0.0;
  double clean_lambda = 0.0;
};

struct StabilityResult {
  double t_eps = 0.0;
  StabilityReport stability;
  std::vector<StabilityRow> rows;
  std::vector<StabilitySummary> summary;

  std::string rows_csv() const;
  std::string summary_csv() const;
};

/// Throws SupercriticalError before any simulation outside the subcritical regime.
StabilityResult run_stability(const ExperimentConfig& cfg);
void write_outputs(const StabilityResult& r, const std::filesystem::path& dir);

/// ceil((N rho)^m) t_f + t_eps
double stability_horizon(std::size_t n, double rho, int m, double t_f, double t_eps);

// --- finite time -------------------------------------------------------------

struct FiniteTimeRow {
  std::size_t n;
  std::size_t replica;
  double rho;
  double sup_distance;
  double first_distance;
};

struct FiniteTimeResult {
  std::vector<FiniteTimeRow> rows;
  std::vector<std::size_t> sizes;
  std::vector<double> medians;
  /// log-log slope of the median against N rho.
  double slope = 0.0;

  std::string rows_csv() const;
  std::string summary_csv() const;
};

FiniteTimeResult run_finite_time(const ExperimentConfig& cfg);
void write_outputs(const FiniteTimeResult& r, const std::filesystem::path& dir);

// --- phase -------------------------------------------------------------------

struct PhaseRow {
  double l1_norm;
  double alpha;
  /// mu / (1 - |h|_1), or +inf when |h|_1 >= 1.
  double predicted;
  double tail_mean;
  bool blow_up;
  Termination termination;
  double end_time;
};

struct PhaseResult {
  std::vector<PhaseRow> rows;
  std::string to_csv() const;
};

/// Sweeps |h|_1 = 1/alpha with the config's kernel and linear response.
PhaseResult run_phase(const ExperimentConfig& cfg);
void write_outputs(const PhaseResult& r, const std::filesystem::path& dir);

// --- noise -------------------------------------------------------------------

struct NoiseRow {
  std::size_t n;
  std::size_t replica;
  double rho;
  double sup_m2;
  double final_m2;
};

struct NoiseResult {
  std::vector<NoiseRow> rows;
  std::vector<std::size_t> sizes;
  std::vector<double> medians;
  double slope = 0.0;

  std::string rows_csv() const;
  std::string summary_csv() const;
};

NoiseResult run_noise_scaling(const ExperimentConfig& cfg);
void write_outputs(const NoiseResult& r, const std::filesystem::path& dir);

/// E |M_N(T)|_2^2 for a constant response c: (1/N) sum_i sum_j (xi_ij w)^2 c T.
double constant_response_noise(const InteractionGraph& g, double c, double t);

// --- graph diagnostics -------------------------------------------------------

struct GraphDiagRow {
  std::size_t n;
  std::size_t replica;
  double rho;
  DegreeConcentration degrees;
  SMaxResult s_max;
  KernelRegularity regularity;
  DilutionAdvisory dilution;
};

struct GraphDiagResult {
  std::vector<GraphDiagRow> rows;
  std::string to_csv() const;
};

GraphDiagResult run_graph_diag(const ExperimentConfig& cfg);
void write_outputs(const GraphDiagResult& r, const std::filesystem::path& dir);

// --- plot --------------------------------------------------------------------

/// Writes gnuplot scripts for whichever result CSVs exist in `dir`; returns
/// the written script paths.
std::vector<std::filesystem::path> write_plot_scripts(const std::filesystem::path& dir);

}  // namespace ghawkes
