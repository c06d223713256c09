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

#include "ghawkes/grid_operator.hpp"

#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace ghawkes {

GridOperator::GridOperator(const SpatialKernel& w, std::size_t m) {
  if (m < 2) throw std::invalid_argument("grid operator needs m >= 2");
  const auto mi = static_cast<Eigen::Index>(m);
  matrix_.resize(mi, mi);
  std::vector<double> nodes(m), column(m);
  for (std::size_t k = 0; k < m; ++k) nodes[k] = MacroField::node(k, m);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t l = 0; l < m; ++l) {
    w.fill_column(nodes[l], nodes, column);
    for (std::size_t k = 0; k < m; ++k) {
      matrix_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = column[k] * scale;
    }
  }
}

void GridOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size() || out.size() != size()) throw std::invalid_argument("field grid mismatch");
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::Map<const Eigen::VectorXd> x(in.data(), n);
  Eigen::Map<Eigen::VectorXd> y(out.data(), n);
  y.noalias() = matrix_ * x;
}

GridOperator build_operator(const SpatialKernel& w, std::size_t m) { return GridOperator(w, m); }

MacroField apply_tw(const GridOperator& op, const MacroField& g) {
  MacroField out(op.size());
  op.apply(g.values(), out.values());
  return out;
}

SpectralRadius spectral_radius(const GridOperator& op, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("spectral radius tolerance must be positive");
  const auto m = static_cast<Eigen::Index>(op.size());
  Eigen::VectorXd v = Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(static_cast<double>(m)));
  Eigen::VectorXd w(m);
  double estimate = 0.0;
  double change = 0.0;
  const auto finish = [&](double value, std::size_t iters) {
    SpectralRadius out;
    out.value = value;
    out.iterations = iters;
    if (v.sum() < 0.0) v = -v;
    out.eigenvector.assign(v.data(), v.data() + m);
    return out;
  };
  for (std::size_t it = 1; it <= max_iter; ++it) {
    w.noalias() = op.matrix() * v;
    const double norm = w.norm();
    if (norm == 0.0) return finish(0.0, it);  // W == 0 on the grid
    const double rayleigh = v.dot(w);
    v = w / norm;
    change = std::abs(rayleigh - estimate);
    estimate = rayleigh;
    if (it > 1 && change < tol) return finish(estimate, it);
  }
  if (v.sum() < 0.0) v = -v;
  throw PowerIterationError(estimate, change, std::vector<double>(v.data(), v.data() + m));
}

std::string StabilityReport::to_json() const {
  nlohmann::json j;
  j["r_inf"] = r_inf;
  j["product"] = subcritical_product;
  j["gamma"] = gamma ? nlohmann::json(*gamma) : nlohmann::json(nullptr);
  j["subcritical"] = is_subcritical;
  return j.dump();
}

StabilityReport stability_report(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h) {
  StabilityReport rep;
  rep.r_inf = spectral_radius(op).value;
  rep.subcritical_product = f.dx_sup() * h.l1_norm() * rep.r_inf;
  if (const auto alpha = h.decay_rate()) rep.gamma = *alpha - rep.r_inf * f.dx_sup();
  rep.is_subcritical = rep.subcritical_product < 1.0;
  return rep;
}

StabilityReport stability_report(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                                 std::size_t m) {
  return stability_report(build_operator(w, m), f, h);
}

std::vector<DecaySample> linearized_semigroup_decay(const GridOperator& op, const MacroField& g_field,
                                                    double alpha, const MacroField& y0, double t_end,
                                                    double dt, std::size_t sample_every) {
  const std::size_t m = op.size();
  if (g_field.size() != m || y0.size() != m) throw std::invalid_argument("field grid mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (sample_every == 0) sample_every = 1;
  const auto mi = static_cast<Eigen::Index>(m);
  Eigen::Map<const Eigen::VectorXd> g(g_field.values().data(), mi);
  const auto rhs = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    Eigen::VectorXd gy = g.cwiseProduct(y);
    return -alpha * y + op.matrix() * gy;
  };

  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(y0.values().data(), mi);
  const double norm_scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<DecaySample> out;
  out.push_back({0.0, y.norm() * norm_scale});
  const auto steps = static_cast<std::size_t>(std::llround(std::ceil(t_end / dt - 1e-9)));
  for (std::size_t s = 1; s <= steps; ++s) {
    const double h = std::min(dt, t_end - static_cast<double>(s - 1) * dt);
    const Eigen::VectorXd k1 = rhs(y);
    const Eigen::VectorXd k2 = rhs(y + 0.5 * h * k1);
    const Eigen::VectorXd k3 = rhs(y + 0.5 * h * k2);
    const Eigen::VectorXd k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double norm = y.norm() * norm_scale;
    const double t = s == steps ? t_end : static_cast<double>(s) * dt;
    if (!(norm < 1e12)) throw BlowUp("linearized dynamics exploded (norm > 1e12)", t);
    if (s % sample_every == 0 || s == steps) out.push_back({t, norm});
  }
  return out;
}

}  // namespace ghawkes
