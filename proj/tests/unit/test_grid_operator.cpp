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

#include <algorithm>
#include <cmath>

#include "ghawkes/errors.hpp"
#include "ghawkes/grid_operator.hpp"
#include "unit/generators.hpp"

using namespace ghawkes;

TEST_CASE("Nystrom matrix entries") {
  const GridOperator op(SpatialKernel::exp_distance(0.5), 8);
  CHECK(op.size() == 8);
  CHECK(op.node(0) == 0.0625);
  CHECK(op.entry(1, 3) == doctest::Approx(std::exp(-2.0 * 0.25) / 8.0));
  CHECK_THROWS_AS(GridOperator(SpatialKernel::constant(1.0), 1), std::invalid_argument);
}

TEST_CASE("spectral radius of a constant kernel") {
  for (double c : {0.0, 0.3, 1.0}) {
    CHECK(std::abs(spectral_radius(build_operator(SpatialKernel::constant(c), 64)).value - c) <= 1e-12);
  }
}

TEST_CASE("spectral radius of rank-one kernels") {
  const auto linear = SpatialKernel::edd(ScalarFunction::polynomial({0.0, 2.0}), ScalarFunction::constant(1.0));
  CHECK(std::abs(spectral_radius(build_operator(linear, 1024)).value - 1.0) <= 1e-3);
  const auto half = ScalarFunction::polynomial({0.5, 0.5});
  const auto sq = SpatialKernel::edd(half, half);
  CHECK(std::abs(spectral_radius(build_operator(sq, 512)).value - 7.0 / 12.0) <= 2e-7);
}

TEST_CASE("spectral radius of block models") {
  const auto two = SpatialKernel::sbm_equal({{0.9, 0.1}, {0.1, 0.9}});
  CHECK(spectral_radius(build_operator(two, 64)).value == doctest::Approx(0.5).epsilon(1e-10));
  const auto three = SpatialKernel::sbm({0.0, 0.2, 0.7, 1.0}, {{0.8, 0.3, 0.1}, {0.2, 0.6, 0.4}, {0.05, 0.5, 0.9}});
  CHECK(spectral_radius(build_operator(three, 100)).value == doctest::Approx(0.4742579561634662).epsilon(1e-9));
}

TEST_CASE("exp-distance spectral radius converges with the grid") {
  const auto w = SpatialKernel::exp_distance(0.5);
  const std::pair<std::size_t, double> frozen[] = {
      {64, 0.5747618615661106},  {128, 0.5746818775578278},  {256, 0.5746618816364003},
      {512, 0.574656882661088}, {1024, 0.5746556329175754},
  };
  for (const auto& [m, r] : frozen) {
    CHECK(spectral_radius(build_operator(w, m)).value == doctest::Approx(r).epsilon(1e-9));
  }
  // second-order convergence of the midpoint rule towards the fine-grid value
  const double fine = 0.5746552423727533;
  const double e256 = 0.5746618816364003 - fine, e512 = 0.574656882661088 - fine;
  CHECK(e256 / e512 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("power iteration failure carries its last state") {
  const GridOperator op(SpatialKernel::exp_distance(0.5), 32);
  try {
    spectral_radius(op, 1e-10, 1);
    FAIL("expected PowerIterationError");
  } catch (const PowerIterationError& e) {
    CHECK(e.last_estimate() > 0.0);
    CHECK(e.iterate().size() == 32);
  }
}

TEST_CASE("property: spectral radius lies between the extreme row sums") {
  RandomStream rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = testing::random_kernel(rng);
    const GridOperator op(w, 60);
    const auto sr = spectral_radius(op, 1e-12);
    const Eigen::VectorXd rows = op.matrix().rowwise().sum();
    CHECK(sr.value <= rows.maxCoeff() + 1e-9);
    CHECK(sr.value >= rows.minCoeff() - 1e-9);
    for (double v : sr.eigenvector) CHECK(v >= -1e-6);
  }
}

TEST_CASE("stability report of the mean-field linear case") {
  const auto rep = stability_report(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0),
                                    MemoryKernel::exponential(2.0), 64);
  CHECK(rep.r_inf == doctest::Approx(1.0));
  CHECK(rep.subcritical_product == doctest::Approx(0.5));
  CHECK(*rep.gamma == doctest::Approx(1.0));
  CHECK(rep.is_subcritical);
  CHECK(rep.to_json().find("\"subcritical\":true") != std::string::npos);

  const auto tab = stability_report(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0),
                                    MemoryKernel::tabulated({1.0, 1.0, 0.0}, 1.0), 16);
  CHECK_FALSE(tab.gamma.has_value());
  CHECK_FALSE(tab.is_subcritical);
  CHECK(tab.to_json().find("\"gamma\":null") != std::string::npos);
}

TEST_CASE("property: linearized dynamics contract at rate gamma for symmetric kernels") {
  RandomStream rng(42);
  for (int trial = 0; trial < 15; ++trial) {
    SpatialKernel w = SpatialKernel::constant(1.0);
    switch (rng.below(3)) {
      case 0: w = SpatialKernel::exp_distance(testing::draw(rng, 0.5, 2.0)); break;
      case 1: w = SpatialKernel::p_nearest(testing::draw(rng, 0.05, 0.45)); break;
      default: w = SpatialKernel::constant(testing::draw(rng, 0.1, 1.0)); break;
    }
    const GridOperator op(w, 48);
    const double r = spectral_radius(op).value;
    const double lip = testing::draw(rng, 0.1, 1.0);
    const double alpha = r * lip + testing::draw(rng, 0.1, 1.0);
    const double gamma = alpha - r * lip;
    MacroField g(48), y0(48);
    for (std::size_t k = 0; k < 48; ++k) {
      g[k] = lip * rng.uniform();
      y0[k] = testing::draw(rng, -1.0, 1.0);
    }
    const auto decay = linearized_semigroup_decay(op, g, alpha, y0, 10.0 / gamma, 1e-3, 10);
    for (const auto& s : decay) CHECK(s.l2 <= std::exp(-gamma * s.t) * decay.front().l2 * (1.0 + 1e-6));
  }
}
