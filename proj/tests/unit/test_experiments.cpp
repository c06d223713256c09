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

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <set>
#include <stdexcept>

#include "ghawkes/config.hpp"
#include "ghawkes/errors.hpp"
#include "ghawkes/experiments.hpp"

using namespace ghawkes;

namespace {

ExperimentConfig small_config() {
  auto c = parse_config(R"({
    "kernel": {"type": "exp_distance", "sigma": 0.5},
    "response": {"type": "linear", "mu": 1.0},
    "memory": {"type": "exponential", "alpha": 2.0},
    "drive": {"eta_inf": 0.0},
    "sizes": [40, 80], "replicas": 3, "grid": 64, "ode_grid": 16, "t_f": 0.05,
    "finite_time": {"horizon": 2.0},
    "phase": {"l1_norms": [0.5, 2.0], "n": 40, "t_end": 20.0, "tail_start": 10.0},
    "noise": {"horizon": 2.0, "observe_dt": 0.5},
    "graph_diag": {"pair_budget": 500, "quadrature": 4}
  })");
  c.master_seed = 99;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ghawkes_exp_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parallel_for visits every index and rethrows the first failure") {
  std::vector<std::atomic<int>> hits(50);
  parallel_for(50, 4, [&](std::size_t i) { ++hits[i]; });
  for (auto& h : hits) CHECK(h == 1);
  try {
    parallel_for(20, 3, [](std::size_t i) {
      if (i == 7 || i == 12) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
}

TEST_CASE("statistics helpers") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK_THROWS_AS(median({}), std::invalid_argument);
  CHECK(loglog_slope({1.0, 10.0, 100.0}, {1.0, 0.1, 0.01}) == doctest::Approx(-1.0));
  CHECK(loglog_slope({2.0, 4.0}, {3.0, 6.0 * std::sqrt(2.0)}) == doctest::Approx(1.5));
}

TEST_CASE("replica seeds are distinct across sizes, replicas and purposes") {
  std::set<std::uint64_t> seen;
  for (std::size_t n : {250, 500})
    for (std::size_t r = 0; r < 20; ++r)
      for (std::uint64_t p = 1; p <= 4; ++p) seen.insert(replica_seed(7, n, r, p));
  CHECK(seen.size() == 2 * 20 * 4);
  CHECK(replica_seed(7, 250, 3, 1) == replica_seed(7, 250, 3, 1));
}

TEST_CASE("stability horizon") {
  CHECK(stability_horizon(1000, 1.0, 1, 1.0, 2.5) == 1002.5);
  CHECK(stability_horizon(100, 0.5, 2, 0.1, 0.0) == doctest::Approx(250.0));
}

TEST_CASE("constant-response noise closed form on the complete graph") {
  // indeg = N and w = 1/N give (1/N) * N * N / N^2 * c t = c t / N
  const auto g = sample_graph(50, 1.0, SpatialKernel::constant(1.0), 1);
  CHECK(constant_response_noise(g, 2.0, 3.0) == doctest::Approx(6.0 / 50.0));
}

TEST_CASE("check reports stability and dilution") {
  const auto r = run_check(small_config());
  CHECK(r.stability.is_subcritical);
  CHECK(r.dilution.size() == 2);
  const auto json = r.to_json();
  CHECK(json.find("\"r_inf\"") != std::string::npos);
  CHECK(json.find("\"dilution\"") != std::string::npos);
}

TEST_CASE("macro run writes its outputs") {
  const auto cfg = small_config();
  const auto r = run_macro(cfg);
  CHECK(r.fixed_point.residual < 1e-12);
  CHECK(r.t_eps.has_value());
  CHECK(r.trajectory.grid_size() == 16);
  const auto dir = scratch("macro");
  write_outputs(r, dir);
  for (const char* f : {"macro_x_inf.csv", "macro_ell.csv", "macro_trajectory.csv", "macro_summary.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  CHECK(write_plot_scripts(dir).size() == 1);
}

TEST_CASE("macro run on a tabulated kernel uses the Volterra solver") {
  auto cfg = small_config();
  cfg.memory = MemoryKernel::tabulate(MemoryKernel::exponential(2.0), 0.01, 8.0);
  cfg.macro_t_end = 2.0;
  cfg.dt = 0.01;
  const auto r = run_macro(cfg);
  CHECK(r.trajectory.kind() == TrajectoryKind::kLambda);
  CHECK_FALSE(r.t_eps.has_value());
}

TEST_CASE("stability results do not depend on the thread count") {
  auto cfg = small_config();
  const auto one = run_stability(cfg);
  cfg.threads = 3;
  const auto three = run_stability(cfg);
  CHECK(one.rows_csv() == three.rows_csv());
  CHECK(one.rows.size() == 6);
  CHECK(one.summary.size() == 2);
  for (const auto& row : one.rows) {
    CHECK(row.samples > 0);
    CHECK(row.horizon == doctest::Approx(stability_horizon(row.n, 1.0, 1, 0.05, one.t_eps)));
  }
}

TEST_CASE("supercritical configurations are refused before simulating") {
  auto cfg = small_config();
  cfg.memory = MemoryKernel::exponential(0.5);
  CHECK_THROWS_AS(run_stability(cfg), SupercriticalError);
}

TEST_CASE("finite-time, phase, noise and graph diagnostics run end to end") {
  const auto cfg = small_config();
  const auto dir = scratch("all");

  const auto ft = run_finite_time(cfg);
  CHECK(ft.rows.size() == 6);
  CHECK(ft.medians.size() == 2);
  for (const auto& r : ft.rows) CHECK(r.sup_distance >= r.first_distance);
  write_outputs(ft, dir);

  const auto ph = run_phase(cfg);
  REQUIRE(ph.rows.size() == 2);
  const MacroField eta(cfg.grid, 0.0);
  CHECK(ph.rows[0].predicted ==
        doctest::Approx(fixed_point(cfg.kernel, cfg.response, MemoryKernel::exponential(2.0), eta).ell.mean()));
  CHECK_FALSE(ph.rows[0].blow_up);
  CHECK(std::isinf(ph.rows[1].predicted));
  write_outputs(ph, dir);

  const auto nz = run_noise_scaling(cfg);
  CHECK(nz.rows.size() == 6);
  for (const auto& r : nz.rows) CHECK(r.sup_m2 >= r.final_m2);
  write_outputs(nz, dir);

  const auto gd = run_graph_diag(cfg);
  CHECK(gd.rows.size() == 6);
  for (const auto& r : gd.rows) CHECK_FALSE(r.s_max.exact);
  write_outputs(gd, dir);

  CHECK(write_plot_scripts(dir).size() == 4);
}

TEST_CASE("phase sweep needs a linear response") {
  auto cfg = small_config();
  cfg.response = SynapticResponse::sigmoid(2.0, 1.0, 1.0);
  CHECK_THROWS_AS(run_phase(cfg), ConfigError);
}
