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

#include <cmath>
#include <limits>
#include <sstream>

#include "ghawkes/errors.hpp"
#include "ghawkes/experiments.hpp"
#include "ghawkes/micro.hpp"
#include "unit/generators.hpp"

using namespace ghawkes;

namespace {

const ExogenousDrive kNoDrive = ExogenousDrive::stationary(ScalarFunction::constant(0.0));

// X_i(T) rebuilt from the spike log: w sum_{j -> i} exp(-alpha (T - t_j)) + X_i(0) exp(-alpha T).
std::vector<double> currents_from_log(const InteractionGraph& g, double alpha, double t_end,
                                      const std::vector<Spike>& spikes, const std::vector<double>& x0) {
  std::vector<double> x(g.size(), 0.0);
  for (std::size_t i = 0; i < x0.size(); ++i) x[i] = x0[i] * std::exp(-alpha * t_end);
  for (const auto& s : spikes) {
    for (NeuronIndex i : g.out_neighbors(s.neuron)) x[i] += g.weight() * std::exp(-alpha * (t_end - s.t));
  }
  return x;
}

}  // namespace

TEST_CASE("profile distance oracle") {
  // step profile 1, 2, 3, 4 against y = x: squared distance 113 / 24
  const std::vector<double> currents{1.0, 2.0, 3.0, 4.0};
  const auto target = MacroField::from_function(4096, [](double x) { return x; });
  CHECK(profile_distance(currents, target) == doctest::Approx(2.16986942771525617).epsilon(1e-8));
  CHECK(profile_distance(currents, MacroField(8, 2.5)) == doctest::Approx(std::sqrt(1.25)));
  CHECK_THROWS_AS(profile_distance(currents, MacroField(6, 0.0)), std::invalid_argument);
}

TEST_CASE("constant response without edges is a Poisson process") {
  const auto g = sample_graph(20, 1.0, SpatialKernel::constant(0.0), 1);
  SimulationOptions opt;
  opt.martingale = true;
  opt.observe_dt = 1.0;
  const auto r = simulate_exponential(g, SynapticResponse::constant(2.0), 1.0, kNoDrive, 50.0, 3, opt);
  const double mean = 20 * 2.0 * 50.0;
  CHECK(std::abs(static_cast<double>(r.stats.acceptances) - mean) < 5.0 * std::sqrt(mean));
  CHECK(r.stats.acceptances == r.stats.proposals);  // the bound is exact
  CHECK(r.termination == Termination::kCompleted);
  CHECK(r.end_time == 50.0);
  for (double c : r.compensators) CHECK(c == doctest::Approx(100.0));
  for (const auto& m : r.martingale) CHECK(m.l2_squared == 0.0);  // no edges, no noise
}

TEST_CASE("runs are reproducible from the seed") {
  const auto g = sample_graph(60, 1.0, SpatialKernel::exp_distance(0.5), 4);
  SimulationOptions opt;
  opt.record_spikes = true;
  opt.observe_dt = 0.5;
  const auto f = SynapticResponse::sigmoid(2.0, 1.0, 1.0);
  const auto a = simulate_exponential(g, f, 1.0, kNoDrive, 5.0, 77, opt);
  const auto b = simulate_exponential(g, f, 1.0, kNoDrive, 5.0, 77, opt);
  const auto c = simulate_exponential(g, f, 1.0, kNoDrive, 5.0, 78, opt);
  REQUIRE(a.spikes.size() == b.spikes.size());
  for (std::size_t k = 0; k < a.spikes.size(); ++k) {
    CHECK(a.spikes[k].t == b.spikes[k].t);
    CHECK(a.spikes[k].neuron == b.spikes[k].neuron);
  }
  CHECK(a.record.to_csv() == b.record.to_csv());
  CHECK(a.record.to_csv() != c.record.to_csv());
}

TEST_CASE("property: final currents equal the spike-log convolution") {
  RandomStream rng(61);
  for (int trial = 0; trial < 8; ++trial) {
    const auto w = testing::random_kernel(rng);
    const auto g = sample_graph(40 + rng.below(60), 1.0, w, trial);
    const auto f = testing::random_response(rng);
    const double alpha = testing::draw(rng, 1.5, 4.0);
    SimulationOptions opt;
    opt.record_spikes = true;
    opt.initial_currents.assign(g.size(), 0.0);
    for (auto& x : opt.initial_currents) x = testing::draw(rng, 0.0, 2.0);
    // long enough to force several time-reference rescales
    const double t_end = 40.0;
    const auto r = simulate_exponential(g, f, alpha, kNoDrive, t_end, 100 + trial, opt);
    CHECK(r.stats.rescales > 0);
    const auto ref = currents_from_log(g, alpha, t_end, r.spikes, opt.initial_currents);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.final_currents[i] == doctest::Approx(ref[i]).epsilon(1e-9));
    std::uint64_t total = 0;
    for (auto c : r.spike_counts) total += c;
    CHECK(total == r.spikes.size());
    CHECK(total == r.stats.acceptances);
  }
}

TEST_CASE("linear compensators match the closed form from the spike log") {
  const auto g = sample_graph(30, 1.0, SpatialKernel::exp_distance(0.5), 2);
  const double alpha = 2.0, mu = 1.0, t_end = 6.0;
  SimulationOptions opt;
  opt.record_spikes = true;
  opt.martingale = true;
  opt.observe_dt = 1.0;
  const auto drive = ExogenousDrive::relaxation(ScalarFunction::constant(0.5), ScalarFunction::constant(1.5), 1.0);
  const auto r = simulate_exponential(g, SynapticResponse::linear(mu), alpha, drive, t_end, 9, opt);
  std::vector<double> ref(g.size(), (mu + 0.5) * t_end + (1.0 - std::exp(-t_end)));
  for (const auto& s : r.spikes) {
    for (NeuronIndex i : g.out_neighbors(s.neuron)) {
      ref[i] += g.weight() * (1.0 - std::exp(-alpha * (t_end - s.t))) / alpha;
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(r.compensators[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("sigmoid compensators match fine quadrature of the intensity") {
  const auto g = sample_graph(10, 1.0, SpatialKernel::constant(1.0), 2);
  const double alpha = 1.0, t_end = 4.0;
  const auto f = SynapticResponse::sigmoid(3.0, 1.5, 0.5);
  SimulationOptions opt;
  opt.record_spikes = true;
  opt.martingale = true;
  const auto r = simulate_exponential(g, f, alpha, kNoDrive, t_end, 5, opt);
  // every neuron sees every spike on the complete graph
  std::vector<double> breaks{0.0};
  for (const auto& s : r.spikes) breaks.push_back(s.t);
  breaks.push_back(t_end);
  const auto current = [&](double t) {
    double x = 0.0;
    for (const auto& s : r.spikes) {
      if (s.t < t) x += g.weight() * std::exp(-alpha * (t - s.t));
    }
    return x;
  };
  double ref = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double a = breaks[b], c = breaks[b + 1];
    const int pieces = 64;
    const double hstep = (c - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double s0 = a + p * hstep;
      const double eps = 1e-13 * std::max(1.0, c);
      // Simpson on each piece, evaluated strictly inside the interval
      ref += hstep / 6.0 *
             (f(current(s0 + eps), 0.0) + 4.0 * f(current(s0 + 0.5 * hstep), 0.0) +
              f(current(s0 + hstep - eps), 0.0));
    }
  }
  for (double c : r.compensators) CHECK(c == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("general memory path matches the exponential path in law") {
  const auto g = sample_graph(100, 1.0, SpatialKernel::constant(1.0), 1);
  const auto f = SynapticResponse::linear(1.0);
  const auto h = MemoryKernel::tabulate(MemoryKernel::exponential(2.0), 1e-3, 12.0);
  double mean_exp = 0.0, mean_gen = 0.0;
  const int reps = 4;
  for (int s = 0; s < reps; ++s) {
    mean_exp += simulate_exponential(g, f, 2.0, kNoDrive, 30.0, 10 + s).stats.acceptances / (100.0 * 30.0);
    mean_gen += simulate_general_h(g, f, h, kNoDrive, 30.0, 20 + s).stats.acceptances / (100.0 * 30.0);
  }
  // stationary intensity is 2; the start-up transient costs about 1/30
  CHECK(mean_exp / reps == doctest::Approx(2.0 - 1.0 / 30.0).epsilon(0.05));
  CHECK(mean_gen / reps == doctest::Approx(2.0 - 1.0 / 30.0).epsilon(0.05));
}

TEST_CASE("general memory path handles a delayed kernel") {
  // h rises then falls, so the envelope bound differs from h itself
  const auto h = MemoryKernel::tabulated({0.0, 1.0, 0.5, 0.0}, 0.5);
  const auto g = sample_graph(50, 1.0, SpatialKernel::constant(1.0), 1);
  SimulationOptions opt;
  opt.observe_dt = 0.25;
  const auto r = simulate_general_h(g, SynapticResponse::sigmoid(2.0, 1.0, 0.0), h, kNoDrive, 10.0, 3, opt);
  CHECK(r.termination == Termination::kCompleted);
  CHECK(r.stats.acceptances > 0);
  CHECK(r.record.rows.size() == 41);
}

TEST_CASE("termination modes") {
  const auto complete = sample_graph(50, 1.0, SpatialKernel::constant(1.0), 1);
  SUBCASE("extinct") {
    const auto r = simulate_exponential(complete, SynapticResponse::linear(0.0), 1.0, kNoDrive, 5.0, 1);
    CHECK(r.termination == Termination::kExtinct);
    CHECK(r.stats.acceptances == 0);
    CHECK(r.record.rows.back().t == 5.0);
  }
  SUBCASE("spike limit") {
    SimulationOptions opt;
    opt.max_spikes = 5;
    opt.record_spikes = true;
    const auto r = simulate_exponential(complete, SynapticResponse::linear(1.0), 1.0, kNoDrive, 5.0, 1, opt);
    CHECK(r.termination == Termination::kSpikeLimit);
    CHECK(r.spikes.size() == 5);
    CHECK(r.end_time == r.spikes.back().t);
  }
  SUBCASE("blow-up") {
    SimulationOptions opt;
    opt.observe_dt = 0.5;
    opt.blowup_intensity = 50.0;
    const auto r = simulate_exponential(complete, SynapticResponse::linear(1.0), 0.5, kNoDrive, 500.0, 1, opt);
    CHECK(r.termination == Termination::kBlowUp);
    CHECK(r.end_time < 500.0);
    CHECK(to_string(r.termination) == "blow_up");
  }
}

TEST_CASE("observation lattice and record format") {
  const auto g = sample_graph(40, 1.0, SpatialKernel::constant(1.0), 1);
  SimulationOptions opt;
  opt.observe_dt = 0.3;
  opt.x_inf = MacroField(16, 1.0);
  opt.ell = MacroField(16, 2.0);
  const auto r = simulate_exponential(g, SynapticResponse::linear(1.0), 2.0, kNoDrive, 1.0, 1, opt);
  const auto& rows = r.record.rows;
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].t == 0.0);
  CHECK(rows[3].t == doctest::Approx(0.9));
  CHECK(rows[4].t == 1.0);
  CHECK(rows[0].dist_to_xinf == doctest::Approx(1.0));  // zero currents against X_inf = 1
  CHECK(rows[0].dist_lambda_to_ell == doctest::Approx(1.0));
  CHECK(std::isnan(rows[0].dist_to_xt));
  std::istringstream csv(r.record.to_csv());
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "t,dist_to_xinf,dist_to_xt,mean_intensity,total_spikes,max_current");
  CHECK(first == "0,1,,1,0,0");
}

TEST_CASE("invalid simulation requests") {
  const auto g = sample_graph(10, 1.0, SpatialKernel::constant(1.0), 1);
  const auto f = SynapticResponse::linear(1.0);
  CHECK_THROWS_AS(simulate_exponential(g, f, 1.0, kNoDrive, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(simulate_exponential(g, f, -1.0, kNoDrive, 1.0, 1), std::invalid_argument);
  SimulationOptions bad;
  bad.initial_currents = {1.0};
  CHECK_THROWS_AS(simulate_exponential(g, f, 1.0, kNoDrive, 1.0, 1, bad), std::invalid_argument);
  SimulationOptions mart;
  mart.martingale = true;
  CHECK_THROWS_AS(simulate_general_h(g, f, MemoryKernel::exponential(1.0), kNoDrive, 1.0, 1, mart),
                  std::invalid_argument);
}

TEST_CASE("constant-response noise matches its closed form in mean") {
  // E |M(T)|^2 = (1/N) sum_i w^2 indeg(i) c T
  const auto g = sample_graph(20, 1.0, SpatialKernel::exp_distance(0.5), 3);
  const double c = 1.5, t_end = 2.0;
  const double expected = constant_response_noise(g, c, t_end);
  const int reps = 400;
  double sum = 0.0, sq = 0.0;
  for (int s = 0; s < reps; ++s) {
    const double v =
        martingale_diagnostic(g, SynapticResponse::constant(c), 1.0, kNoDrive, t_end, 500 + s, 1.0).back().l2_squared;
    sum += v;
    sq += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - expected) < 4.0 * se);
}

TEST_CASE("spike log csv") {
  CHECK(spike_log_csv({{0.5, 3}, {1.25, 0}}) == "t,neuron\n0.5,3\n1.25,0\n");
}
