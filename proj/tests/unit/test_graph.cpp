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
#include <filesystem>
#include <stdexcept>

#include "ghawkes/graph.hpp"
#include "unit/generators.hpp"

using namespace ghawkes;

TEST_CASE("positions and weights") {
  CHECK(InteractionGraph::position(0, 4) == 0.25);
  CHECK(InteractionGraph::position(3, 4) == 1.0);
  const auto g = sample_graph(50, 0.5, SpatialKernel::constant(1.0), 1);
  CHECK(g.weight() == doctest::Approx(1.0 / 25.0));
}

TEST_CASE("complete graph has every edge including self-loops") {
  const auto g = sample_graph(40, 1.0, SpatialKernel::constant(1.0), 3);
  CHECK(g.edge_count() == 1600);
  CHECK(g.has_edge(5, 5));
  const auto d = degree_concentration(g);
  CHECK(d.max_norm_in == 1.0);
  CHECK(d.max_norm_out == 1.0);
}

TEST_CASE("zero kernel gives an empty graph") {
  const auto g = sample_graph(30, 1.0, SpatialKernel::constant(0.0), 3);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("sampling is reproducible and independent of the thread count") {
  const auto w = SpatialKernel::exp_distance(0.7);
  const auto a = sample_graph(300, 0.8, w, 42, 1);
  const auto b = sample_graph(300, 0.8, w, 42, 3);
  const auto c = sample_graph(300, 0.8, w, 43, 1);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  CHECK(a.kernel_digest() == w.digest());
}

TEST_CASE("invalid sampling requests are rejected") {
  CHECK_THROWS_AS(sample_graph(10, 0.0, SpatialKernel::constant(1.0), 1), std::invalid_argument);
  const auto big = SpatialKernel::edd(ScalarFunction::polynomial({0.0, 2.0}), ScalarFunction::constant(1.0));
  CHECK_THROWS_AS(sample_graph(10, 1.0, big, 1), std::invalid_argument);
  CHECK_NOTHROW(sample_graph(10, 0.5, big, 1));
}

TEST_CASE("property: edge count matches its expectation within five standard deviations") {
  RandomStream rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto w = testing::random_kernel(rng);
    const std::size_t n = 100 + rng.below(200);
    const double rho = testing::draw(rng, 0.2, 1.0);
    const auto g = sample_graph(n, rho, w, 1000 + trial);
    double mean = 0.0, var = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        const double p = rho * w(InteractionGraph::position(i, n), InteractionGraph::position(j, n));
        mean += p;
        var += p * (1.0 - p);
      }
    }
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) <= 5.0 * std::sqrt(var) + 1e-9);
  }
}

TEST_CASE("property: in-neighbor index mirrors the out lists") {
  RandomStream rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = sample_graph(80, 1.0, testing::random_kernel(rng), trial);
    const InNeighborIndex in(g);
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(in.sources(i).size() == g.in_degrees()[i]);
      for (NeuronIndex j : in.sources(i)) CHECK(g.has_edge(j, i));
      total += in.sources(i).size();
    }
    CHECK(total == g.edge_count());
  }
}

TEST_CASE("exact S_max equals the largest pair statistic") {
  const auto w = SpatialKernel::exp_distance(0.5);
  const auto g = sample_graph(60, 1.0, w, 5);
  const auto exact = s_max_statistic(g, w, 1'000'000, 0.25);
  CHECK(exact.exact);
  CHECK(exact.pairs == 60 * 59 / 2);
  double brute = 0.0;
  for (std::size_t j = 0; j < 60; ++j)
    for (std::size_t jp = j + 1; jp < 60; ++jp) brute = std::max(brute, std::abs(pair_statistic(g, w, j, jp)));
  CHECK(exact.s_max == doctest::Approx(brute).epsilon(1e-12));
  CHECK(exact.bound == doctest::Approx(std::pow(60.0, -0.25)));

  const auto sampled = s_max_statistic(g, w, 100, 0.25);
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.s_max <= exact.s_max + 1e-12);
}

TEST_CASE("pair statistic vanishes on the complete graph") {
  const auto w = SpatialKernel::constant(1.0);
  const auto g = sample_graph(30, 1.0, w, 5);
  CHECK(std::abs(pair_statistic(g, w, 2, 7)) < 1e-14);
}

TEST_CASE("dilution advisory") {
  const auto a = dilution_report(4000, std::pow(4000.0, -0.25), 0.25, true);
  CHECK(a.bounded_value == doctest::Approx(std::sqrt(4000.0)));
  CHECK(a.pass);
  const auto b = dilution_report(4000, std::pow(4000.0, -0.25), 0.25, false);
  CHECK(b.general_value == doctest::Approx(std::sqrt(4000.0) / 4000.0));
  CHECK_FALSE(b.pass);
  CHECK_THROWS_AS(dilution_report(10, 1.0, 0.5, true), std::invalid_argument);
}

TEST_CASE("kernel regularity oracles") {
  const std::size_t n = 50;
  const auto rowwise = SpatialKernel::edd(ScalarFunction::polynomial({0.0, 2.0}), ScalarFunction::constant(1.0));
  const auto r = kernel_regularity(rowwise, n, 16);
  CHECK(r.r1 == doctest::Approx(0.0));
  CHECK(r.r2 == doctest::Approx(0.0));
  CHECK(r.s == doctest::Approx(4.0 / (3.0 * n * n)).epsilon(2e-3));

  const auto colwise = SpatialKernel::edd(ScalarFunction::constant(1.0), ScalarFunction::polynomial({0.0, 2.0}));
  CHECK(kernel_regularity(colwise, n, 16).r1 == doctest::Approx(1.0 / n).epsilon(1e-12));
  CHECK(kernel_regularity(colwise, 2 * n, 16).r1 == doctest::Approx(0.5 / n).epsilon(1e-12));

  const auto flat = kernel_regularity(SpatialKernel::constant(0.3), n, 4);
  CHECK(flat.r1 == 0.0);
  CHECK(flat.s == 0.0);
}

TEST_CASE("edge list round trip") {
  const auto g = sample_graph(70, 0.6, SpatialKernel::p_nearest(0.2), 9);
  const auto path = std::filesystem::temp_directory_path() / "ghawkes_edges_test.txt";
  write_edge_list(g, path);
  CHECK(read_edge_list(path) == g);
  std::filesystem::remove(path);
}
