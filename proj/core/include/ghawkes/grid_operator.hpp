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

// Midpoint Nystrom discretization of the integral operator
// (T_W g)(x) = int W(x, y) g(y) dy and the spectral quantities built on it.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ghawkes/errors.hpp"
#include "ghawkes/field.hpp"
#include "ghawkes/kernels.hpp"

namespace ghawkes {

/// m x m matrix with entries W(x_k, x_l) / m on the midpoint nodes.
class GridOperator {
 public:
  GridOperator(const SpatialKernel& w, std::size_t m);

  std::size_t size() const { return static_cast<std::size_t>(matrix_.rows()); }
  double node(std::size_t k) const { return MacroField::node(k, size()); }
  double entry(std::size_t k, std::size_t l) const {
    return matrix_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l));
  }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// out = T_W in. Sizes must match the grid.
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  Eigen::MatrixXd matrix_;
};

GridOperator build_operator(const SpatialKernel& w, std::size_t m);

/// T_W g; throws std::invalid_argument on a grid mismatch.
MacroField apply_tw(const GridOperator& op, const MacroField& g);

struct SpectralRadius {
  double value = 0.0;
  /// Perron vector, normalized to unit Euclidean norm with nonnegative sum.
  std::vector<double> eigenvector;
  std::size_t iterations = 0;
};

/// Power iteration did not settle; carries the last estimate and iterate.
class PowerIterationError : public NonConvergence {
 public:
  PowerIterationError(double last_estimate, double last_change, std::vector<double> iterate)
      : NonConvergence("power iteration did not converge", last_change),
        last_estimate_(last_estimate),
        iterate_(std::move(iterate)) {}
  double last_estimate() const noexcept { return last_estimate_; }
  const std::vector<double>& iterate() const noexcept { return iterate_; }

 private:
  double last_estimate_;
  std::vector<double> iterate_;
};

/// Perron root of the (entrywise nonnegative) operator matrix by power
/// iteration from the constant vector. Stops when successive Rayleigh
/// quotients differ by less than `tol`.
SpectralRadius spectral_radius(const GridOperator& op, double tol = 1e-10, std::size_t max_iter = 100000);

struct StabilityReport {
  double r_inf = 0.0;
  /// sup|dF/dx| * |h|_1 * r_inf
  double subcritical_product = 0.0;
  /// alpha - r_inf sup|dF/dx|; only for an exponential memory kernel.
  std::optional<double> gamma;
  bool is_subcritical = false;

  /// {"r_inf":..,"product":..,"gamma":..|null,"subcritical":..}
  std::string to_json() const;
};

StabilityReport stability_report(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                                 std::size_t m = 512);
StabilityReport stability_report(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h);

struct DecaySample {
  double t;
  double l2;
};

/// RK4 integration of dY/dt = -alpha Y + T_W(G Y); returns (t, |Y_t|_2)
/// every `sample_every` steps, including t = 0 and the final time.
/// Throws BlowUp if the norm exceeds 1e12.
std::vector<DecaySample> linearized_semigroup_decay(const GridOperator& op, const MacroField& g_field,
                                                    double alpha, const MacroField& y0, double t_end,
                                                    double dt, std::size_t sample_every = 1);

}  // namespace ghawkes
