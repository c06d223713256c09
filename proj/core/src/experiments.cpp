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

#include "ghawkes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <json.hpp>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ghawkes/csv.hpp"
#include "ghawkes/errors.hpp"
#include "ghawkes/micro.hpp"
#include "ghawkes/rng.hpp"

namespace ghawkes {
namespace {

constexpr std::uint64_t kGraphPurpose = 1;
constexpr std::uint64_t kSimulationPurpose = 2;
constexpr std::uint64_t kPhasePurpose = 3;
constexpr std::uint64_t kNoisePurpose = 4;

struct Task {
  std::size_t size_index;
  std::size_t replica;
};

std::vector<Task> replica_grid(const ExperimentConfig& cfg) {
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    for (std::size_t r = 0; r < cfg.replicas; ++r) tasks.push_back({s, r});
  }
  return tasks;
}

std::size_t sample_stride(double observe_dt, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(observe_dt / dt)));
}

double macro_horizon(const ExperimentConfig& cfg, const StabilityReport& rep) {
  if (cfg.macro_t_end) return *cfg.macro_t_end;
  if (rep.gamma && *rep.gamma > 0.0) return 20.0 / *rep.gamma;
  return 20.0 / cfg.alpha();
}

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

}  // namespace

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  std::vector<std::exception_ptr> errors(count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two matching points");
  double mx = 0.0, my = 0.0;
  const auto n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::uint64_t replica_seed(std::uint64_t master, std::size_t n, std::size_t replica, std::uint64_t purpose) {
  return derive_seed({master, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(replica), purpose});
}

// --- check -----------------------------------------------------------------

std::string CheckResult::to_json() const {
  auto j = nlohmann::json::parse(stability.to_json());
  auto arr = nlohmann::json::array();
  for (const auto& d : dilution) {
    nlohmann::json e;
    e["n"] = d.n;
    e["rho"] = d.rho;
    e["value"] = d.advisory.f_bounded ? d.advisory.bounded_value : d.advisory.general_value;
    e["floor"] = d.advisory.floor;
    e["f_bounded"] = d.advisory.f_bounded;
    e["pass"] = d.advisory.pass;
    arr.push_back(e);
  }
  j["dilution"] = arr;
  return j.dump();
}

CheckResult run_check(const ExperimentConfig& cfg) {
  CheckResult res;
  res.stability = stability_report(cfg.kernel, cfg.response, cfg.memory, cfg.grid);
  for (std::size_t n : cfg.sizes) {
    const double rho = cfg.rho.at(n);
    res.dilution.push_back(
        {n, rho, dilution_report(n, rho, cfg.tau, cfg.response.bounded(), cfg.graph_diag.dilution_floor)});
  }
  return res;
}

// --- macro -----------------------------------------------------------------

MacroResult run_macro(const ExperimentConfig& cfg) {
  MacroResult res;
  const GridOperator op = build_operator(cfg.kernel, cfg.grid);
  res.stability = stability_report(op, cfg.response, cfg.memory);
  res.fixed_point = fixed_point(op, cfg.response, cfg.memory, eta_inf_field(cfg.drive, cfg.grid));

  const GridOperator ode_op = build_operator(cfg.kernel, cfg.ode_grid);
  const double dt = cfg.resolved_dt();
  const std::size_t stride = sample_stride(cfg.resolved_observe_dt(), dt);
  if (const auto alpha = cfg.memory.decay_rate()) {
    const double t_end = macro_horizon(cfg, res.stability);
    res.trajectory = solve_nfe_exponential(ode_op, cfg.response, *alpha, cfg.drive, MacroField(cfg.ode_grid),
                                           t_end, dt, stride);
    if (res.stability.is_subcritical) {
      const auto target = fixed_point(ode_op, cfg.response, cfg.memory, eta_inf_field(cfg.drive, cfg.ode_grid));
      try {
        res.t_eps = time_to_neighborhood(res.trajectory, target.x_inf, cfg.eps);
      } catch (const NotReached&) {
      }
    }
  } else {
    const double t_end = cfg.macro_t_end.value_or(20.0);
    res.trajectory = solve_lambda_volterra(ode_op, cfg.response, cfg.memory, cfg.drive, t_end, dt, stride);
  }
  return res;
}

void write_outputs(const MacroResult& r, const std::filesystem::path& dir) {
  write_field_csv(r.fixed_point.x_inf, dir / "macro_x_inf.csv");
  write_field_csv(r.fixed_point.ell, dir / "macro_ell.csv");
  r.trajectory.write_csv(dir / "macro_trajectory.csv");
  nlohmann::json j = nlohmann::json::parse(r.stability.to_json());
  j["fixed_point_iterations"] = r.fixed_point.iters;
  j["fixed_point_residual"] = r.fixed_point.residual;
  j["t_eps"] = r.t_eps ? nlohmann::json(*r.t_eps) : nlohmann::json(nullptr);
  write_text_file(dir / "macro_summary.json", j.dump(2) + "\n");
}

// --- stability ---------------------------------------------------------------

double stability_horizon(std::size_t n, double rho, int m, double t_f, double t_eps) {
  const double a = std::ceil(std::pow(static_cast<double>(n) * rho, m) - 1e-9);
  return a * t_f + t_eps;
}

std::string StabilityResult::rows_csv() const {
  std::ostringstream os;
  os << "n,replica,rho,t_eps,horizon,samples,sup_x,exceed_x,sup_lambda,exceed_lambda,termination,verdict_x,"
        "verdict_lambda\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.replica << ',' << num(r.rho) << ',' << num(r.t_eps) << ',' << num(r.horizon) << ','
       << r.samples << ',' << num(r.sup_x) << ',' << num(r.exceed_x) << ',' << num(r.sup_lambda) << ','
       << num(r.exceed_lambda) << ',' << to_string(r.termination) << ',' << (r.verdict_x ? 1 : 0) << ','
       << (r.verdict_lambda ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string StabilityResult::summary_csv() const {
  std::ostringstream os;
  os << "n,mean_exceed_x,mean_exceed_lambda,clean_x,clean_lambda\n";
  for (const auto& s : summary) {
    os << s.n << ',' << num(s.mean_exceed_x) << ',' << num(s.mean_exceed_lambda) << ',' << num(s.clean_x) << ','
       << num(s.clean_lambda) << '\n';
  }
  return os.str();
}

StabilityResult run_stability(const ExperimentConfig& cfg) {
  const double alpha = cfg.alpha();
  StabilityResult res;
  const GridOperator op = build_operator(cfg.kernel, cfg.grid);
  res.stability = stability_report(op, cfg.response, cfg.memory);
  if (!res.stability.is_subcritical) {
    throw SupercriticalError("configuration is not subcritical (product " +
                             format_double(res.stability.subcritical_product) + " >= 1)");
  }
  const auto fp = fixed_point(op, cfg.response, cfg.memory, eta_inf_field(cfg.drive, cfg.grid));

  // t_eps from the deterministic trajectory started, like the network, at 0.
  const GridOperator ode_op = build_operator(cfg.kernel, cfg.ode_grid);
  const auto ode_fp = fixed_point(ode_op, cfg.response, cfg.memory, eta_inf_field(cfg.drive, cfg.ode_grid));
  const double dt = cfg.resolved_dt();
  const auto traj = solve_nfe_exponential(ode_op, cfg.response, alpha, cfg.drive, MacroField(cfg.ode_grid),
                                          macro_horizon(cfg, res.stability), dt,
                                          sample_stride(cfg.resolved_observe_dt(), dt));
  res.t_eps = time_to_neighborhood(traj, ode_fp.x_inf, cfg.eps);

  const auto tasks = replica_grid(cfg);
  res.rows.resize(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[tasks[k].size_index];
    const std::size_t rep = tasks[k].replica;
    const double rho = cfg.rho.at(n);
    const auto g = sample_graph(n, rho, cfg.kernel, replica_seed(cfg.master_seed, n, rep, kGraphPurpose));
    SimulationOptions opt;
    opt.observe_dt = cfg.resolved_observe_dt();
    opt.x_inf = fp.x_inf;
    opt.ell = fp.ell;
    StabilityRow row;
    row.n = n;
    row.replica = rep;
    row.rho = rho;
    row.t_eps = res.t_eps;
    row.horizon = stability_horizon(n, rho, cfg.horizon_exponent, cfg.t_f, res.t_eps);
    const auto sim = simulate_exponential(g, cfg.response, alpha, cfg.drive, row.horizon,
                                          replica_seed(cfg.master_seed, n, rep, kSimulationPurpose), opt);
    row.termination = sim.termination;
    std::size_t over_x = 0, over_l = 0;
    for (const auto& s : sim.record.rows) {
      if (s.t < res.t_eps) continue;
      ++row.samples;
      row.sup_x = std::max(row.sup_x, s.dist_to_xinf);
      row.sup_lambda = std::max(row.sup_lambda, s.dist_lambda_to_ell);
      if (s.dist_to_xinf > cfg.eps) ++over_x;
      if (s.dist_lambda_to_ell > cfg.eps) ++over_l;
    }
    if (row.samples > 0) {
      row.exceed_x = static_cast<double>(over_x) / static_cast<double>(row.samples);
      row.exceed_lambda = static_cast<double>(over_l) / static_cast<double>(row.samples);
    }
    row.verdict_x = row.samples > 0 && row.sup_x <= cfg.eps;
    row.verdict_lambda = row.samples > 0 && row.sup_lambda <= cfg.eps;
    res.rows[k] = row;
  });

  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    StabilitySummary sum;
    sum.n = cfg.sizes[s];
    std::size_t count = 0;
    for (const auto& r : res.rows) {
      if (r.n != sum.n) continue;
      ++count;
      sum.mean_exceed_x += r.exceed_x;
      sum.mean_exceed_lambda += r.exceed_lambda;
      sum.clean_x += r.exceed_x == 0.0 ? 1.0 : 0.0;
      sum.clean_lambda += r.exceed_lambda == 0.0 ? 1.0 : 0.0;
    }
    const auto c = static_cast<double>(std::max<std::size_t>(count, 1));
    sum.mean_exceed_x /= c;
    sum.mean_exceed_lambda /= c;
    sum.clean_x /= c;
    sum.clean_lambda /= c;
    res.summary.push_back(sum);
  }
  return res;
}

void write_outputs(const StabilityResult& r, const std::filesystem::path& dir) {
  write_text_file(dir / "stability.csv", r.rows_csv());
  write_text_file(dir / "stability_summary.csv", r.summary_csv());
}

// --- finite time -------------------------------------------------------------

std::string FiniteTimeResult::rows_csv() const {
  std::ostringstream os;
  os << "n,replica,rho,sup_distance,first_distance\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.replica << ',' << num(r.rho) << ',' << num(r.sup_distance) << ','
       << num(r.first_distance) << '\n';
  }
  return os.str();
}

std::string FiniteTimeResult::summary_csv() const {
  std::ostringstream os;
  os << "n,median_sup_distance\n";
  for (std::size_t s = 0; s < sizes.size(); ++s) os << sizes[s] << ',' << num(medians[s]) << '\n';
  os << "# slope=" << num(slope) << '\n';
  return os.str();
}

FiniteTimeResult run_finite_time(const ExperimentConfig& cfg) {
  const double alpha = cfg.alpha();
  const double horizon = cfg.finite_time_horizon;
  const double dt = cfg.resolved_dt();
  const double observe_dt = cfg.resolved_observe_dt();
  const GridOperator ode_op = build_operator(cfg.kernel, cfg.ode_grid);
  const auto traj = solve_nfe_exponential(ode_op, cfg.response, alpha, cfg.drive, MacroField(cfg.ode_grid),
                                          horizon, dt, sample_stride(observe_dt, dt));

  FiniteTimeResult res;
  const auto tasks = replica_grid(cfg);
  res.rows.resize(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[tasks[k].size_index];
    const std::size_t rep = tasks[k].replica;
    const double rho = cfg.rho.at(n);
    const auto g = sample_graph(n, rho, cfg.kernel, replica_seed(cfg.master_seed, n, rep, kGraphPurpose));
    SimulationOptions opt;
    opt.observe_dt = observe_dt;
    opt.x_t = traj;
    const auto sim = simulate_exponential(g, cfg.response, alpha, cfg.drive, horizon,
                                          replica_seed(cfg.master_seed, n, rep, kSimulationPurpose), opt);
    FiniteTimeRow row{n, rep, rho, 0.0, sim.record.rows.front().dist_to_xt};
    for (const auto& s : sim.record.rows) row.sup_distance = std::max(row.sup_distance, s.dist_to_xt);
    res.rows[k] = row;
  });

  std::vector<double> scale;
  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    std::vector<double> v;
    for (const auto& r : res.rows) {
      if (r.n == cfg.sizes[s]) v.push_back(r.sup_distance);
    }
    res.sizes.push_back(cfg.sizes[s]);
    res.medians.push_back(median(v));
    scale.push_back(static_cast<double>(cfg.sizes[s]) * cfg.rho.at(cfg.sizes[s]));
  }
  res.slope = res.sizes.size() >= 2 ? loglog_slope(scale, res.medians) : 0.0;
  return res;
}

void write_outputs(const FiniteTimeResult& r, const std::filesystem::path& dir) {
  write_text_file(dir / "finite_time.csv", r.rows_csv());
  write_text_file(dir / "finite_time_summary.csv", r.summary_csv());
}

// --- phase -------------------------------------------------------------------

std::string PhaseResult::to_csv() const {
  std::ostringstream os;
  os << "l1_norm,alpha,predicted,tail_mean,blow_up,termination,end_time\n";
  for (const auto& r : rows) {
    os << num(r.l1_norm) << ',' << num(r.alpha) << ',' << num(r.predicted) << ',' << num(r.tail_mean) << ','
       << (r.blow_up ? 1 : 0) << ',' << to_string(r.termination) << ',' << num(r.end_time) << '\n';
  }
  return os.str();
}

PhaseResult run_phase(const ExperimentConfig& cfg) {
  if (cfg.response.kind() != SynapticResponse::Kind::kLinear) {
    throw ConfigError("response: the phase sweep needs a linear response");
  }
  const std::size_t n = cfg.phase.n;
  const double rho = cfg.rho.at(n);
  if (!(rho > 0.0 && rho <= 1.0) || rho * cfg.kernel.sup() > 1.0 + 1e-12) {
    throw ConfigError("rho: rho_N out of range for phase.n");
  }
  const GridOperator op = build_operator(cfg.kernel, cfg.grid);
  const MacroField eta = eta_inf_field(cfg.drive, cfg.grid);
  double base = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    base += cfg.response(0.0, cfg.drive.eta_inf(InteractionGraph::position(i, n)));
  }
  base /= static_cast<double>(n);

  PhaseResult res;
  res.rows.resize(cfg.phase.l1_norms.size());
  parallel_for(res.rows.size(), cfg.threads, [&](std::size_t k) {
    const double l1 = cfg.phase.l1_norms[k];
    const double alpha = 1.0 / l1;
    const auto h = MemoryKernel::exponential(alpha);
    PhaseRow row{l1, alpha, std::numeric_limits<double>::infinity(), 0.0, false, Termination::kCompleted, 0.0};
    if (stability_report(op, cfg.response, h).is_subcritical) {
      row.predicted = fixed_point(op, cfg.response, h, eta).ell.mean();
    }
    const auto g = sample_graph(n, rho, cfg.kernel, replica_seed(cfg.master_seed, n, k, kPhasePurpose));
    SimulationOptions opt;
    opt.observe_dt = 0.1 / alpha;
    opt.blowup_intensity = 50.0 * base;
    const auto sim = simulate_exponential(g, cfg.response, alpha, cfg.drive, cfg.phase.t_end,
                                          replica_seed(cfg.master_seed, n, k, kSimulationPurpose), opt);
    row.termination = sim.termination;
    row.end_time = sim.end_time;
    row.blow_up = sim.termination == Termination::kBlowUp;
    double sum = 0.0;
    std::size_t cnt = 0;
    for (const auto& s : sim.record.rows) {
      if (s.t < cfg.phase.tail_start) continue;
      sum += s.mean_intensity;
      ++cnt;
    }
    row.tail_mean = cnt > 0 ? sum / static_cast<double>(cnt) : std::numeric_limits<double>::quiet_NaN();
    res.rows[k] = row;
  });
  return res;
}

void write_outputs(const PhaseResult& r, const std::filesystem::path& dir) {
  write_text_file(dir / "phase.csv", r.to_csv());
}

// --- noise -------------------------------------------------------------------

std::string NoiseResult::rows_csv() const {
  std::ostringstream os;
  os << "n,replica,rho,sup_m2,final_m2\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.replica << ',' << num(r.rho) << ',' << num(r.sup_m2) << ',' << num(r.final_m2) << '\n';
  }
  return os.str();
}

std::string NoiseResult::summary_csv() const {
  std::ostringstream os;
  os << "n,median_sup_m2\n";
  for (std::size_t s = 0; s < sizes.size(); ++s) os << sizes[s] << ',' << num(medians[s]) << '\n';
  os << "# slope=" << num(slope) << '\n';
  return os.str();
}

NoiseResult run_noise_scaling(const ExperimentConfig& cfg) {
  const double alpha = cfg.alpha();
  NoiseResult res;
  const auto tasks = replica_grid(cfg);
  res.rows.resize(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[tasks[k].size_index];
    const std::size_t rep = tasks[k].replica;
    const double rho = cfg.rho.at(n);
    const auto g = sample_graph(n, rho, cfg.kernel, replica_seed(cfg.master_seed, n, rep, kGraphPurpose));
    const auto samples = martingale_diagnostic(g, cfg.response, alpha, cfg.drive, cfg.noise.horizon,
                                               replica_seed(cfg.master_seed, n, rep, kNoisePurpose),
                                               cfg.noise.observe_dt);
    NoiseRow row{n, rep, rho, 0.0, samples.back().l2_squared};
    for (const auto& s : samples) row.sup_m2 = std::max(row.sup_m2, s.l2_squared);
    res.rows[k] = row;
  });
  std::vector<double> scale;
  for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
    std::vector<double> v;
    for (const auto& r : res.rows) {
      if (r.n == cfg.sizes[s]) v.push_back(r.sup_m2);
    }
    res.sizes.push_back(cfg.sizes[s]);
    res.medians.push_back(median(v));
    scale.push_back(static_cast<double>(cfg.sizes[s]) * cfg.rho.at(cfg.sizes[s]));
  }
  res.slope = res.sizes.size() >= 2 ? loglog_slope(scale, res.medians) : 0.0;
  return res;
}

void write_outputs(const NoiseResult& r, const std::filesystem::path& dir) {
  write_text_file(dir / "noise.csv", r.rows_csv());
  write_text_file(dir / "noise_summary.csv", r.summary_csv());
}

double constant_response_noise(const InteractionGraph& g, double c, double t) {
  // M_i = w sum_{j -> i} (Z_j - c t) with independent compensated Poisson
  // terms, so E M_i^2 = w^2 indeg(i) c t.
  const double w = g.weight();
  double sum = 0.0;
  for (const auto d : g.in_degrees()) sum += w * w * static_cast<double>(d) * c * t;
  return sum / static_cast<double>(g.size());
}

// --- graph diagnostics -------------------------------------------------------

std::string GraphDiagResult::to_csv() const {
  std::ostringstream os;
  os << "n,replica,rho,max_norm_in,max_norm_out,s_max,s_bound,pairs,exact,r1,r2,s_regularity,dilution_value,"
        "dilution_pass\n";
  for (const auto& r : rows) {
    const double dv = r.dilution.f_bounded ? r.dilution.bounded_value : r.dilution.general_value;
    os << r.n << ',' << r.replica << ',' << num(r.rho) << ',' << num(r.degrees.max_norm_in) << ','
       << num(r.degrees.max_norm_out) << ',' << num(r.s_max.s_max) << ',' << num(r.s_max.bound) << ','
       << r.s_max.pairs << ',' << (r.s_max.exact ? 1 : 0) << ',' << num(r.regularity.r1) << ','
       << num(r.regularity.r2) << ',' << num(r.regularity.s) << ',' << num(dv) << ',' << (r.dilution.pass ? 1 : 0)
       << '\n';
  }
  return os.str();
}

GraphDiagResult run_graph_diag(const ExperimentConfig& cfg) {
  std::vector<KernelRegularity> regularity(cfg.sizes.size());
  parallel_for(cfg.sizes.size(), cfg.threads, [&](std::size_t s) {
    regularity[s] = kernel_regularity(cfg.kernel, cfg.sizes[s], cfg.graph_diag.quadrature);
  });
  GraphDiagResult res;
  const auto tasks = replica_grid(cfg);
  res.rows.resize(tasks.size());
  parallel_for(tasks.size(), cfg.threads, [&](std::size_t k) {
    const std::size_t n = cfg.sizes[tasks[k].size_index];
    const std::size_t rep = tasks[k].replica;
    const double rho = cfg.rho.at(n);
    const auto g = sample_graph(n, rho, cfg.kernel, replica_seed(cfg.master_seed, n, rep, kGraphPurpose));
    res.rows[k] = {n,
                   rep,
                   rho,
                   degree_concentration(g),
                   s_max_statistic(g, cfg.kernel, cfg.graph_diag.pair_budget, cfg.tau),
                   regularity[tasks[k].size_index],
                   dilution_report(n, rho, cfg.tau, cfg.response.bounded(), cfg.graph_diag.dilution_floor)};
  });
  return res;
}

void write_outputs(const GraphDiagResult& r, const std::filesystem::path& dir) {
  write_text_file(dir / "graph_diag.csv", r.to_csv());
}

// --- plot --------------------------------------------------------------------

std::vector<std::filesystem::path> write_plot_scripts(const std::filesystem::path& dir) {
  struct Script {
    const char* csv;
    const char* name;
    const char* body;
  };
  static const Script scripts[] = {
      {"macro_trajectory.csv", "macro.gp",
       "set xlabel 't'\nset ylabel 'X_t(x)'\n"
       "plot 'macro_trajectory.csv' using 1:2 with lines title 'first node', \\\n"
       "     '' using 1:(column(columns)) with lines title 'last node'\n"},
      {"stability_summary.csv", "stability.gp",
       "set logscale x\nset xlabel 'N'\nset ylabel 'mean exceedance fraction'\n"
       "plot 'stability_summary.csv' using 1:2 with linespoints title 'X', \\\n"
       "     '' using 1:3 with linespoints title 'lambda'\n"},
      {"finite_time_summary.csv", "finite_time.gp",
       "set logscale xy\nset xlabel 'N'\nset ylabel 'median sup distance'\n"
       "plot 'finite_time_summary.csv' using 1:2 with linespoints title 'median'\n"},
      {"phase.csv", "phase.gp",
       "set xlabel '|h|_1'\nset ylabel 'tail mean intensity'\n"
       "plot 'phase.csv' using 1:4 with points title 'simulated', \\\n"
       "     '' using 1:($3 < 1e300 ? $3 : 1/0) with linespoints title 'predicted'\n"},
      {"noise_summary.csv", "noise.gp",
       "set logscale xy\nset xlabel 'N'\nset ylabel 'median sup |M_N|^2'\n"
       "plot 'noise_summary.csv' using 1:2 with linespoints title 'median'\n"},
      {"graph_diag.csv", "graph_diag.gp",
       "set logscale xy\nset xlabel 'N'\n"
       "plot 'graph_diag.csv' using 1:6 with points title 'S max', \\\n"
       "     '' using 1:7 with lines title 'N^(tau-1/2)'\n"},
  };
  std::vector<std::filesystem::path> written;
  for (const auto& s : scripts) {
    if (!std::filesystem::exists(dir / s.csv)) continue;
    const auto path = dir / s.name;
    std::string text = "set datafile separator ','\nset key top right\nset terminal pngcairo size 900,600\n";
    text += "set output '" + std::filesystem::path(s.name).replace_extension(".png").string() + "'\n";
    text += s.body;
    write_text_file(path, text);
    written.push_back(path);
  }
  return written;
}

}  // namespace ghawkes
