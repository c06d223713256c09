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

// Deterministic large-population limits: the stationary profile, the neural
// field ODE for exponential memory and the Volterra equation for general h.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghawkes/field.hpp"
#include "ghawkes/grid_operator.hpp"
#include "ghawkes/kernels.hpp"

namespace ghawkes {

enum class TrajectoryKind { kLambda, kCurrent };

/// Time-stamped fields on one grid.
class MacroTrajectory {
 public:
  explicit MacroTrajectory(TrajectoryKind kind) : kind_(kind) {}

  /// Appends a sample; times must increase strictly and grids must agree.
  void push(double t, MacroField field);

  TrajectoryKind kind() const { return kind_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<MacroField>& fields() const { return fields_; }
  const MacroField& back() const { return fields_.back(); }
  std::size_t grid_size() const { return fields_.empty() ? 0 : fields_.front().size(); }

  /// Piecewise-linear interpolation in time, clamped to the sampled range.
  MacroField at(double t) const;

  /// CSV with header `t,node_0,...,node_{m-1}`.
  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;

 private:
  TrajectoryKind kind_;
  std::vector<double> times_;
  std::vector<MacroField> fields_;
};

struct FixedPointResult {
  MacroField ell;
  MacroField x_inf;
  std::size_t iters = 0;
  double residual = 0.0;
  /// Stability advisory at the time of the solve; false means the solve
  /// went ahead outside the subcritical regime.
  bool subcritical = true;
  double subcritical_product = 0.0;
  /// sup-norm of each Picard increment.
  std::vector<double> increments;
};

/// Picard iteration ell <- F(|h|_1 T_W ell, eta_inf) from F(0, eta_inf).
/// The grid is the one of `eta_inf`. Throws NonConvergence after `max_iter`.
FixedPointResult fixed_point(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h,
                             const MacroField& eta_inf, double tol = 1e-12, std::size_t max_iter = 100000);
FixedPointResult fixed_point(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                             const MacroField& eta_inf, double tol = 1e-12, std::size_t max_iter = 100000);

/// eta_inf sampled on the midpoint nodes of an m-point grid.
MacroField eta_inf_field(const ExogenousDrive& drive, std::size_t m);

/// RK4 for dX/dt = -alpha X + T_W F(X, eta_t). Samples every
/// `sample_every` steps plus t = 0 and t_end. Throws BlowUp when the sup
/// norm passes 1e12.
MacroTrajectory solve_nfe_exponential(const GridOperator& op, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, const MacroField& x0, double t_end,
                                      double dt, std::size_t sample_every = 1);
MacroTrajectory solve_nfe_exponential(const SpatialKernel& w, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, const MacroField& x0, double t_end,
                                      double dt, std::size_t sample_every = 1);

/// lambda_t = F(X_t, eta_t) along a current trajectory.
MacroTrajectory intensity_of(const MacroTrajectory& currents, const SynapticResponse& f,
                             const ExogenousDrive& drive);

/// Explicit scheme for lambda(t_k) = F(T_W[sum_{j<k} c_j h(t_k - t_j) lambda(t_j) dt], eta_{t_k})
/// with trapezoid weight c_0 = 1/2 and c_j = 1 otherwise.
MacroTrajectory solve_lambda_volterra(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h,
                                      const ExogenousDrive& drive, double t_end, double dt,
                                      std::size_t sample_every = 1);
MacroTrajectory solve_lambda_volterra(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                                      const ExogenousDrive& drive, double t_end, double dt, std::size_t m,
                                      std::size_t sample_every = 1);

class NotReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// First sample time from which |X_t - target|_2 <= eps / 4 for the rest of
/// the trajectory. Throws NotReached otherwise.
double time_to_neighborhood(const MacroTrajectory& traj, const MacroField& target, double eps);

/// Two-column CSV `node,value` (node position, field value).
std::string field_to_csv(const MacroField& field);
void write_field_csv(const MacroField& field, const std::filesystem::path& path);

}  // namespace ghawkes
