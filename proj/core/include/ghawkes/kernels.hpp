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

// Parametric model ingredients: memory kernel h, synaptic response F,
// spatial kernel W and exogenous drive eta. All objects are immutable after
// construction.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ghawkes/functions.hpp"

namespace ghawkes {

/// Nonnegative integrable memory kernel h on [0, inf).
class MemoryKernel {
 public:
  struct Exponential {
    double alpha;
  };
  /// Linear interpolation of `samples` on the lattice k * step; zero beyond.
  struct Tabulated {
    std::vector<double> samples;
    double step;
  };

  /// h(t) = exp(-alpha t).
  static MemoryKernel exponential(double alpha);
  static MemoryKernel tabulated(std::vector<double> samples, double step);
  /// Samples `source` on [0, horizon] with the given step.
  static MemoryKernel tabulate(const MemoryKernel& source, double step, double horizon);
  /// h == 0.
  static MemoryKernel zero();

  /// h(t); throws std::invalid_argument for t < 0.
  double operator()(double t) const;

  /// Integral of h over [0, inf). Exactly 1/alpha for the exponential
  /// variant, the trapezoid sum of the samples for a table.
  double l1_norm() const { return l1_norm_; }

  /// sup_{u >= t} h(u); equals h for nonincreasing kernels.
  double envelope(double t) const;

  /// Decay rate when exponential.
  std::optional<double> decay_rate() const;
  bool is_exponential() const { return std::holds_alternative<Exponential>(repr_); }
  /// Time beyond which h vanishes (infinite for the exponential variant).
  double support() const;
  const std::variant<Exponential, Tabulated>& repr() const { return repr_; }
  std::string describe() const;

 private:
  explicit MemoryKernel(std::variant<Exponential, Tabulated> r);
  std::variant<Exponential, Tabulated> repr_;
  double l1_norm_ = 0.0;
  std::vector<double> suffix_max_;
};

/// Synaptic response F(x, eta): nonnegative, nondecreasing in x and eta.
class SynapticResponse {
 public:
  enum class Kind { kLinear, kSigmoid, kConstant };

  /// F(x, eta) = mu + eta + x.
  static SynapticResponse linear(double mu = 0.0);
  /// F(x, eta) = lambda_max / (1 + exp(-slope (x + eta - threshold))).
  static SynapticResponse sigmoid(double lambda_max, double slope, double threshold);
  /// F(x, eta) = c.
  static SynapticResponse constant(double c);

  double operator()(double x, double eta) const {
    switch (kind_) {
      case Kind::kLinear:
        return a_ + eta + x;
      case Kind::kSigmoid:
        return a_ / (1.0 + std::exp(-b_ * (x + eta - c_)));
      case Kind::kConstant:
        break;
    }
    return a_;
  }

  /// Partial derivative in x.
  double dx(double x, double eta) const;

  /// sup |dF/dx|.
  double dx_sup() const;
  /// Joint Lipschitz constant: |F(x,e) - F(x',e')| <= L (|x-x'| + |e-e'|).
  double lipschitz() const { return dx_sup(); }
  bool bounded() const { return kind_ != Kind::kLinear; }

  Kind kind() const { return kind_; }
  /// mu (linear), lambda_max (sigmoid) or c (constant).
  double level() const { return a_; }
  double slope() const { return b_; }
  double threshold() const { return c_; }
  std::string describe() const;

 private:
  SynapticResponse(Kind k, double a, double b, double c) : kind_(k), a_(a), b_(b), c_(c) {}
  Kind kind_;
  double a_;
  double b_;
  double c_;
};

/// Macroscopic interaction kernel W on [0,1]^2 with values in [0, sup()].
///
/// All variants except the expected-degree one are probability kernels
/// (sup <= 1). An expected-degree kernel W(x,y) = f(x) g(y) may exceed one;
/// it can then only be sampled with a dilution rho <= 1/sup.
class SpatialKernel {
 public:
  struct Constant {
    double c;
  };
  /// (1 / 2 sigma) exp(-|x - y| / sigma), clipped to 1.
  struct ExpDistance {
    double sigma;
  };
  /// Expected degree distribution, W(x, y) = f(x) g(y).
  struct Edd {
    ScalarFunction f;
    ScalarFunction g;
  };
  /// 1 when the circle distance min(|x-y|, 1-|x-y|) is below r.
  struct PNearest {
    double r;
  };
  /// Stochastic block model with blocks [b_k, b_{k+1}) (last block closed).
  struct Sbm {
    std::vector<double> boundaries;
    std::vector<std::vector<double>> p;
  };
  using Variant = std::variant<Constant, ExpDistance, Edd, PNearest, Sbm>;

  static SpatialKernel constant(double c);
  static SpatialKernel exp_distance(double sigma);
  static SpatialKernel edd(ScalarFunction f, ScalarFunction g);
  static SpatialKernel p_nearest(double r);
  static SpatialKernel sbm(std::vector<double> boundaries, std::vector<std::vector<double>> p);
  /// `blocks` equal-width blocks.
  static SpatialKernel sbm_equal(std::vector<std::vector<double>> p);

  /// W(x, y); throws std::invalid_argument outside [0,1]^2.
  double operator()(double x, double y) const;
  double eval_unchecked(double x, double y) const;

  /// out[k] = W(xs[k], y).
  void fill_column(double y, std::span<const double> xs, std::span<double> out) const;
  /// out[k] = W(x, ys[k]).
  void fill_row(double x, std::span<const double> ys, std::span<double> out) const;

  double sup() const { return sup_; }
  /// True when an ExpDistance kernel had values above 1 clipped.
  bool clipped() const { return clipped_; }
  bool is_constant() const { return std::holds_alternative<Constant>(repr_); }
  const Variant& repr() const { return repr_; }
  std::string describe() const;
  /// FNV-1a hash of describe().
  std::uint64_t digest() const;

 private:
  explicit SpatialKernel(Variant r);
  Variant repr_;
  double sup_ = 0.0;
  bool clipped_ = false;
};

/// Exogenous drive eta_t(x) with a vanishing distance to eta_inf.
///
/// The relaxation family eta_t = eta_inf + exp(-beta t)(eta_0 - eta_inf) has
/// delta_t = exp(-beta t) sup |eta_0 - eta_inf| in closed form. A custom
/// drive supplies eta and a nonincreasing modulus delta_t directly.
class ExogenousDrive {
 public:
  /// Autonomous drive, eta_t = eta for all t.
  static ExogenousDrive stationary(ScalarFunction eta);
  static ExogenousDrive relaxation(ScalarFunction eta_inf, ScalarFunction eta_zero, double beta);
  static ExogenousDrive custom(std::function<double(double, double)> eta, ScalarFunction eta_inf,
                               std::function<double(double)> modulus);

  double operator()(double t, double x) const;
  double eta_inf(double x) const { return eta_inf_(x); }
  double eta_zero(double x) const;
  /// sup_x |eta_t(x) - eta_inf(x)|.
  double delta(double t) const;
  double beta() const { return beta_; }
  /// sup_x |eta_0(x) - eta_inf(x)| for the relaxation family.
  double initial_gap() const { return gap_; }
  /// eta_t(x) is nonincreasing in t for every x.
  bool nonincreasing() const { return nonincreasing_; }
  bool is_custom() const { return static_cast<bool>(custom_eta_); }
  bool is_stationary() const { return !is_custom() && gap_ == 0.0; }
  /// Lower and upper bound of eta over all t and x.
  Extrema range() const { return range_; }
  const ScalarFunction& eta_inf_function() const { return eta_inf_; }
  const ScalarFunction& eta_zero_function() const { return eta_zero_; }
  std::string describe() const;

 private:
  ExogenousDrive() = default;
  ScalarFunction eta_inf_;
  ScalarFunction eta_zero_;
  double beta_ = 0.0;
  double gap_ = 0.0;
  bool nonincreasing_ = true;
  Extrema range_{0.0, 0.0};
  std::function<double(double, double)> custom_eta_;
  std::function<double(double)> custom_modulus_;
};

}  // namespace ghawkes
