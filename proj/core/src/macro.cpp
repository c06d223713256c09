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

#include "ghawkes/macro.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghawkes/csv.hpp"
#include "ghawkes/errors.hpp"

namespace ghawkes {
namespace {

constexpr double kBlowUpNorm = 1e12;

// eta_t on the grid nodes. The relaxation family is evaluated from two
// cached fields; custom drives are evaluated pointwise.
class DriveOnGrid {
 public:
  DriveOnGrid(const ExogenousDrive& drive, std::size_t m) : drive_(drive), m_(m), inf_(m), gap_(m) {
    for (std::size_t k = 0; k < m; ++k) {
      const double x = MacroField::node(k, m);
      inf_[k] = drive.eta_inf(x);
      if (!drive.is_custom()) gap_[k] = drive.eta_zero(x) - inf_[k];
    }
  }

  void eval(double t, std::vector<double>& out) const {
    out.resize(m_);
    if (drive_.is_custom()) {
      for (std::size_t k = 0; k < m_; ++k) out[k] = drive_(t, MacroField::node(k, m_));
      return;
    }
    const double decay = drive_.beta() > 0.0 ? std::exp(-drive_.beta() * t) : 1.0;
    for (std::size_t k = 0; k < m_; ++k) out[k] = inf_[k] + decay * gap_[k];
  }

 private:
  const ExogenousDrive& drive_;
  std::size_t m_;
  std::vector<double> inf_;
  std::vector<double> gap_;
};

std::size_t step_count(double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(t_end >= 0.0)) throw std::invalid_argument("t_end must be nonnegative");
  return static_cast<std::size_t>(std::llround(std::ceil(t_end / dt - 1e-9)));
}

}  // namespace

void MacroTrajectory::push(double t, MacroField field) {
  if (!times_.empty()) {
    if (!(t > times_.back())) throw std::invalid_argument("trajectory times must increase strictly");
    if (field.size() != fields_.front().size()) throw std::invalid_argument("field grid mismatch");
  }
  times_.push_back(t);
  fields_.push_back(std::move(field));
}

MacroField MacroTrajectory::at(double t) const {
  if (times_.empty()) throw std::logic_error("empty trajectory");
  if (t <= times_.front()) return fields_.front();
  if (t >= times_.back()) return fields_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto hi = static_cast<std::size_t>(it - times_.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
  MacroField out = fields_[lo];
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * (fields_[hi][k] - fields_[lo][k]);
  return out;
}

std::string MacroTrajectory::to_csv() const {
  std::ostringstream os;
  os << 't';
  for (std::size_t k = 0; k < grid_size(); ++k) os << ",node_" << k;
  os << '\n';
  for (std::size_t s = 0; s < times_.size(); ++s) {
    os << format_double(times_[s]);
    for (double v : fields_[s].values()) os << ',' << format_double(v);
    os << '\n';
  }
  return os.str();
}

void MacroTrajectory::write_csv(const std::filesystem::path& path) const { write_text_file(path, to_csv()); }

FixedPointResult fixed_point(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h,
                             const MacroField& eta_inf, double tol, std::size_t max_iter) {
  const std::size_t m = op.size();
  if (eta_inf.size() != m) throw std::invalid_argument("field grid mismatch");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  FixedPointResult res;
  const StabilityReport report = stability_report(op, f, h);
  res.subcritical = report.is_subcritical;
  res.subcritical_product = report.subcritical_product;

  const double h1 = h.l1_norm();
  MacroField ell(m), next(m), conv(m);
  for (std::size_t k = 0; k < m; ++k) ell[k] = f(0.0, eta_inf[k]);

  // One Picard step: next = F(|h|_1 T_W ell, eta_inf); conv keeps T_W ell.
  const auto step = [&] {
    op.apply(ell.values(), conv.values());
    double diff = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      next[k] = f(h1 * conv[k], eta_inf[k]);
      diff = std::max(diff, std::abs(next[k] - ell[k]));
    }
    return diff;
  };
  const auto residual_of = [&](const MacroField& x) {
    MacroField fx(m), tfx(m);
    for (std::size_t k = 0; k < m; ++k) fx[k] = f(x[k], eta_inf[k]);
    op.apply(fx.values(), tfx.values());
    double r = 0.0;
    for (std::size_t k = 0; k < m; ++k) r = std::max(r, std::abs(x[k] - h1 * tfx[k]));
    return r;
  };

  double diff = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    diff = step();
    res.increments.push_back(diff);
    std::swap(ell, next);
    if (!std::isfinite(diff)) break;
    if (diff < tol) {
      MacroField x(m);
      op.apply(ell.values(), x.values());
      x *= h1;
      const double r = residual_of(x);
      if (r < tol) {
        res.ell = std::move(ell);
        res.x_inf = std::move(x);
        res.iters = it;
        res.residual = r;
        return res;
      }
    }
  }
  throw NonConvergence("fixed-point iteration did not converge", diff);
}

FixedPointResult fixed_point(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                             const MacroField& eta_inf, double tol, std::size_t max_iter) {
  return fixed_point(build_operator(w, eta_inf.size()), f, h, eta_inf, tol, max_iter);
}

MacroField eta_inf_field(const ExogenousDrive& drive, std::size_t m) {
  return MacroField::from_function(m, [&](double x) { return drive.eta_inf(x); });
}

MacroTrajectory solve_nfe_exponential(const GridOperator& op, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, const MacroField& x0, double t_end,
                                      double dt, std::size_t sample_every) {
  const std::size_t m = op.size();
  if (x0.size() != m) throw std::invalid_argument("field grid mismatch");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (sample_every == 0) sample_every = 1;
  const std::size_t steps = step_count(t_end, dt);
  const DriveOnGrid eta(drive, m);

  std::vector<double> eta_buf(m), fx(m), tfx(m);
  const auto rhs = [&](double t, const std::vector<double>& x, std::vector<double>& out) {
    eta.eval(t, eta_buf);
    for (std::size_t k = 0; k < m; ++k) fx[k] = f(x[k], eta_buf[k]);
    op.apply(fx, tfx);
    out.resize(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = -alpha * x[k] + tfx[k];
  };

  MacroTrajectory traj(TrajectoryKind::kCurrent);
  std::vector<double> x(x0.values().begin(), x0.values().end());
  std::vector<double> k1, k2, k3, k4, tmp(m);
  traj.push(0.0, x0);
  for (std::size_t s = 1; s <= steps; ++s) {
    const double t0 = static_cast<double>(s - 1) * dt;
    const double h = std::min(dt, t_end - t0);
    rhs(t0, x, k1);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = x[k] + 0.5 * h * k1[k];
    rhs(t0 + 0.5 * h, tmp, k2);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = x[k] + 0.5 * h * k2[k];
    rhs(t0 + 0.5 * h, tmp, k3);
    for (std::size_t k = 0; k < m; ++k) tmp[k] = x[k] + h * k3[k];
    rhs(t0 + h, tmp, k4);
    double sup = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      x[k] += (h / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
      sup = std::max(sup, std::abs(x[k]));
    }
    const double t = s == steps ? t_end : static_cast<double>(s) * dt;
    if (!(sup < kBlowUpNorm)) throw BlowUp("supercritical blow-up: field norm exceeded 1e12", t);
    if (s % sample_every == 0 || s == steps) traj.push(t, MacroField(x));
  }
  return traj;
}

MacroTrajectory solve_nfe_exponential(const SpatialKernel& w, const SynapticResponse& f, double alpha,
                                      const ExogenousDrive& drive, const MacroField& x0, double t_end,
                                      double dt, std::size_t sample_every) {
  return solve_nfe_exponential(build_operator(w, x0.size()), f, alpha, drive, x0, t_end, dt, sample_every);
}

MacroTrajectory intensity_of(const MacroTrajectory& currents, const SynapticResponse& f,
                             const ExogenousDrive& drive) {
  MacroTrajectory out(TrajectoryKind::kLambda);
  const std::size_t m = currents.grid_size();
  const DriveOnGrid eta(drive, m);
  std::vector<double> eta_buf;
  for (std::size_t s = 0; s < currents.size(); ++s) {
    eta.eval(currents.times()[s], eta_buf);
    MacroField lam(m);
    for (std::size_t k = 0; k < m; ++k) lam[k] = f(currents.fields()[s][k], eta_buf[k]);
    out.push(currents.times()[s], std::move(lam));
  }
  return out;
}

MacroTrajectory solve_lambda_volterra(const GridOperator& op, const SynapticResponse& f, const MemoryKernel& h,
                                      const ExogenousDrive& drive, double t_end, double dt,
                                      std::size_t sample_every) {
  const std::size_t m = op.size();
  const std::size_t steps = step_count(t_end, dt);
  if (sample_every == 0) sample_every = 1;
  const DriveOnGrid eta(drive, m);

  std::vector<double> kernel(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) kernel[j] = h(static_cast<double>(j) * dt);

  // history[j * m + k] = lambda(t_j) at node k
  std::vector<double> history;
  history.reserve((steps + 1) * m);
  std::vector<double> eta_buf, conv(m), tconv(m);

  MacroTrajectory traj(TrajectoryKind::kLambda);
  for (std::size_t s = 0; s <= steps; ++s) {
    const double t = s == steps ? t_end : static_cast<double>(s) * dt;
    std::fill(conv.begin(), conv.end(), 0.0);
    for (std::size_t j = 0; j < s; ++j) {
      const double c = (j == 0 ? 0.5 : 1.0) * kernel[s - j] * dt;
      if (c == 0.0) continue;
      const double* row = history.data() + j * m;
      for (std::size_t k = 0; k < m; ++k) conv[k] += c * row[k];
    }
    op.apply(conv, tconv);
    eta.eval(t, eta_buf);
    double sup = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double lam = f(tconv[k], eta_buf[k]);
      history.push_back(lam);
      sup = std::max(sup, std::abs(lam));
    }
    if (!(sup < kBlowUpNorm)) throw BlowUp("supercritical blow-up: intensity exceeded 1e12", t);
    if (s % sample_every == 0 || s == steps) {
      traj.push(t, MacroField(std::vector<double>(history.end() - static_cast<std::ptrdiff_t>(m), history.end())));
    }
  }
  return traj;
}

MacroTrajectory solve_lambda_volterra(const SpatialKernel& w, const SynapticResponse& f, const MemoryKernel& h,
                                      const ExogenousDrive& drive, double t_end, double dt, std::size_t m,
                                      std::size_t sample_every) {
  return solve_lambda_volterra(build_operator(w, m), f, h, drive, t_end, dt, sample_every);
}

double time_to_neighborhood(const MacroTrajectory& traj, const MacroField& target, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (traj.empty()) throw NotReached("empty trajectory");
  if (traj.grid_size() != target.size()) throw std::invalid_argument("field grid mismatch");
  const double radius = eps / 4.0;
  std::size_t first = traj.size();
  for (std::size_t s = traj.size(); s-- > 0;) {
    MacroField d = traj.fields()[s];
    d -= target;
    if (!(d.l2_norm() <= radius)) break;
    first = s;
  }
  if (first == traj.size()) throw NotReached("trajectory never stays within eps/4 of the target");
  return traj.times()[first];
}

std::string field_to_csv(const MacroField& field) {
  std::ostringstream os;
  os << "node,value\n";
  for (std::size_t k = 0; k < field.size(); ++k) {
    os << format_double(MacroField::node(k, field.size())) << ',' << format_double(field[k]) << '\n';
  }
  return os.str();
}

void write_field_csv(const MacroField& field, const std::filesystem::path& path) {
  write_text_file(path, field_to_csv(field));
}

}  // namespace ghawkes
