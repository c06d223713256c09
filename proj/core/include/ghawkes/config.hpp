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

// Declarative experiment description, read from JSON.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ghawkes/kernels.hpp"

namespace ghawkes {

/// rho_N = value, or rho_N = N^(-exponent).
struct RhoRule {
  enum class Kind { kConstant, kPower };
  Kind kind = Kind::kConstant;
  double value = 1.0;
  double exponent = 0.0;

  double at(std::size_t n) const;
};

struct PhaseSettings {
  std::vector<double> l1_norms{0.25, 0.5, 0.8, 1.25, 2.0};
  std::size_t n = 1000;
  double t_end = 60.0;
  double tail_start = 30.0;
};

struct NoiseSettings {
  double horizon = 10.0;
  double observe_dt = 0.5;
};

struct GraphDiagSettings {
  std::size_t pair_budget = 200000;
  std::size_t quadrature = 16;
  double dilution_floor = 10.0;
};

struct ExperimentConfig {
  std::string name = "unnamed";
  SpatialKernel kernel = SpatialKernel::constant(1.0);
  SynapticResponse response = SynapticResponse::linear(1.0);
  MemoryKernel memory = MemoryKernel::exponential(1.0);
  ExogenousDrive drive = ExogenousDrive::stationary(ScalarFunction::constant(0.0));

  std::vector<std::size_t> sizes{250, 500, 1000, 2000};
  RhoRule rho;
  double tau = 0.25;
  /// Polynomial horizon exponent m in T_N = ceil((N rho)^m) t_f + t_eps.
  int horizon_exponent = 1;
  double t_f = 1.0;
  double eps = 0.25;
  std::size_t replicas = 1;
  std::uint64_t master_seed = 1;
  /// Grid for spectral radius and fixed point.
  std::size_t grid = 512;
  /// Grid for deterministic trajectories.
  std::size_t ode_grid = 128;
  /// RK4 step; default 1e-3 / alpha.
  std::optional<double> dt;
  /// Observation lattice; default 0.1 / alpha.
  std::optional<double> observe_dt;
  /// Horizon of the macro trajectory; default 20 / gamma.
  std::optional<double> macro_t_end;
  /// Horizon T of the finite-time comparison.
  double finite_time_horizon = 10.0;
  PhaseSettings phase;
  NoiseSettings noise;
  GraphDiagSettings graph_diag;
  std::filesystem::path output_dir = "out";
  unsigned threads = 1;

  /// Decay rate of the memory kernel; throws ConfigError if not exponential.
  double alpha() const;
  double resolved_dt() const;
  double resolved_observe_dt() const;
};

/// Parses a config document. Relative CSV paths resolve against `base_dir`.
/// Throws ConfigError on unknown keys, bad types or out-of-range values.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Either a preset name or a path to a JSON file.
ExperimentConfig resolve_config(const std::string& name_or_path);

std::vector<std::string> preset_names();
/// JSON text of a built-in preset; throws ConfigError for unknown names.
const std::string& preset_json(const std::string& name);
ExperimentConfig preset(const std::string& name);

}  // namespace ghawkes
