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

// ghawkes <subcommand> <config> [--seed S] [--out-dir DIR] [--threads T]
//
// Exit codes: 0 success, 2 config error, 3 supercritical gate, 4 internal
// invariant breach, 1 anything else.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "ghawkes/config.hpp"
#include "ghawkes/csv.hpp"
#include "ghawkes/errors.hpp"
#include "ghawkes/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSupercritical = 3;
constexpr int kExitInvariant = 4;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> threads;
};

ghawkes::ExperimentConfig load(const Overrides& o) {
  auto cfg = ghawkes::resolve_config(o.config);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.out_dir) cfg.output_dir = *o.out_dir;
  if (o.threads) cfg.threads = std::max(1u, *o.threads);
  return cfg;
}

void print_summary(const std::string& what, const std::filesystem::path& dir) {
  std::cout << what << " written to " << dir.string() << "\n";
}

int run(const std::string& command, const Overrides& o) {
  using namespace ghawkes;
  if (command == "plot") {
    const std::filesystem::path dir = o.out_dir ? std::filesystem::path(*o.out_dir) : load(o).output_dir;
    const auto scripts = write_plot_scripts(dir);
    for (const auto& s : scripts) std::cout << s.string() << "\n";
    if (scripts.empty()) std::cerr << "no result CSVs found in " << dir.string() << "\n";
    return 0;
  }
  const auto cfg = load(o);
  if (command == "check") {
    std::cout << run_check(cfg).to_json() << "\n";
    return 0;
  }
  if (command == "macro") {
    const auto r = run_macro(cfg);
    write_outputs(r, cfg.output_dir);
    std::cout << "fixed point: " << r.fixed_point.iters << " iterations, residual "
              << format_double(r.fixed_point.residual) << (r.fixed_point.subcritical ? "" : " (not subcritical)")
              << "\n";
    if (r.t_eps) std::cout << "t_eps: " << format_double(*r.t_eps) << "\n";
    print_summary("macro", cfg.output_dir);
    return 0;
  }
  if (command == "stability") {
    const auto r = run_stability(cfg);
    write_outputs(r, cfg.output_dir);
    for (const auto& s : r.summary) {
      std::cout << "N=" << s.n << " mean_exceed_x=" << format_double(s.mean_exceed_x)
                << " clean_x=" << format_double(s.clean_x) << " clean_lambda=" << format_double(s.clean_lambda)
                << "\n";
    }
    print_summary("stability", cfg.output_dir);
    return 0;
  }
  if (command == "finite-time") {
    const auto r = run_finite_time(cfg);
    write_outputs(r, cfg.output_dir);
    for (std::size_t s = 0; s < r.sizes.size(); ++s) {
      std::cout << "N=" << r.sizes[s] << " median_sup=" << format_double(r.medians[s]) << "\n";
    }
    std::cout << "slope=" << format_double(r.slope) << "\n";
    print_summary("finite-time", cfg.output_dir);
    return 0;
  }
  if (command == "phase") {
    const auto r = run_phase(cfg);
    write_outputs(r, cfg.output_dir);
    for (const auto& row : r.rows) {
      std::cout << "|h|_1=" << format_double(row.l1_norm) << " tail_mean=" << format_double(row.tail_mean)
                << " predicted=" << format_double(row.predicted) << (row.blow_up ? " blow-up" : "") << "\n";
    }
    print_summary("phase", cfg.output_dir);
    return 0;
  }
  if (command == "noise") {
    const auto r = run_noise_scaling(cfg);
    write_outputs(r, cfg.output_dir);
    for (std::size_t s = 0; s < r.sizes.size(); ++s) {
      std::cout << "N=" << r.sizes[s] << " median_sup_m2=" << format_double(r.medians[s]) << "\n";
    }
    std::cout << "slope=" << format_double(r.slope) << "\n";
    print_summary("noise", cfg.output_dir);
    return 0;
  }
  if (command == "graph-diag") {
    const auto r = run_graph_diag(cfg);
    write_outputs(r, cfg.output_dir);
    print_summary("graph-diag", cfg.output_dir);
    return 0;
  }
  std::cerr << "unknown subcommand " << command << "\n";
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear Hawkes processes on W-random graphs"};
  app.require_subcommand(1);
  Overrides o;
  std::string command;
  const std::pair<const char*, const char*> commands[] = {
      {"check", "Print the stability report and dilution advisory as JSON"},
      {"macro", "Solve the stationary profile and the deterministic trajectory"},
      {"stability", "Long-time stability window over N and replicas"},
      {"finite-time", "Finite-horizon distance to the deterministic trajectory"},
      {"phase", "Sweep |h|_1 across the phase transition"},
      {"noise", "Scaling of the centered noise with N"},
      {"graph-diag", "Degree concentration, S_max and kernel regularity"},
      {"plot", "Write gnuplot scripts for the result CSVs"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", o.config, "Config file or preset name")->required();
    sub->add_option("--seed", o.seed, "Override master_seed");
    sub->add_option("--out-dir", o.out_dir, "Override output_dir");
    sub->add_option("--threads", o.threads, "Worker threads");
    sub->callback([&command, name] { command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  try {
    return run(command, o);
  } catch (const ghawkes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ghawkes::SupercriticalError& e) {
    std::cerr << "supercritical: " << e.what() << "\n";
    return kExitSupercritical;
  } catch (const ghawkes::InvariantBreach& e) {
    std::cerr << "invariant breach: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
