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

#include "ghawkes/errors.hpp"
#include "ghawkes/macro.hpp"
#include "unit/generators.hpp"

using namespace ghawkes;

namespace {

const ExogenousDrive kNoDrive = ExogenousDrive::stationary(ScalarFunction::constant(0.0));

}  // namespace

TEST_CASE("field norms and interpolation") {
  MacroField f(std::vector<double>{3.0, -4.0});
  CHECK(f.l2_norm() == doctest::Approx(std::sqrt(12.5)));
  CHECK(f.linf_norm() == 4.0);
  CHECK(f.mean() == -0.5);
  CHECK(f.at(0.5) == doctest::Approx(-0.5));
  CHECK(f.at(0.0) == 3.0);
  const auto fine = MacroField::from_function(4, [](double x) { return x; }).resample(8);
  CHECK(fine.size() == 8);
  CHECK(fine[3] == doctest::Approx(0.4375));
}

TEST_CASE("mean-field linear fixed point") {
  const auto r = fixed_point(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0),
                             MemoryKernel::exponential(2.0), MacroField(256, 0.0));
  CHECK(r.ell.size() == 256);
  for (std::size_t k = 0; k < 256; ++k) {
    CHECK(std::abs(r.ell[k] - 2.0) < 1e-10);
    CHECK(std::abs(r.x_inf[k] - 1.0) < 1e-10);
  }
  CHECK(r.residual < 1e-12);
  CHECK(r.subcritical);
  CHECK(r.subcritical_product == doctest::Approx(0.5));
  CHECK(r.increments.size() == r.iters);
}

TEST_CASE("sigmoid fixed point at the threshold") {
  // F(1) = 2 / (1 + e^0) = 1 and |h|_1 = 1 give ell = X_inf = 1
  const auto r = fixed_point(SpatialKernel::constant(1.0), SynapticResponse::sigmoid(2.0, 1.0, 1.0),
                             MemoryKernel::exponential(1.0), MacroField(32, 0.0));
  CHECK(r.ell.linf_norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.x_inf.mean() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fixed point failure reports the last increment") {
  try {
    fixed_point(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0), MemoryKernel::exponential(2.0),
                MacroField(16, 0.0), 1e-12, 3);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.last_residual() > 0.0);
  }
}

TEST_CASE("property: fixed points satisfy the stationary equation on random subcritical inputs") {
  RandomStream rng(51);
  for (int trial = 0; trial < 25; ++trial) {
    const auto w = testing::random_kernel(rng);
    const auto f = testing::random_response(rng);
    const GridOperator op(w, 40);
    const double r = spectral_radius(op).value;
    const double alpha = std::max(0.2, 1.5 * f.dx_sup() * r + 0.1);
    const auto h = MemoryKernel::exponential(alpha);
    const auto eta = MacroField::from_function(40, [&](double x) { return 0.5 * x; });
    const auto res = fixed_point(op, f, h, eta, 1e-11);
    CHECK(res.subcritical);
    const auto tl = apply_tw(op, res.ell);
    for (std::size_t k = 0; k < 40; ++k) {
      CHECK(res.x_inf[k] == doctest::Approx(tl[k] / alpha).epsilon(1e-9));
      CHECK(res.ell[k] == doctest::Approx(f(res.x_inf[k], eta[k])).epsilon(1e-9));
    }
  }
}

TEST_CASE("RK4 currents match the closed-form mean-field solution") {
  // dX/dt = -2X + (1 + X) from X = 0 gives X(t) = 1 - exp(-t)
  const auto traj = solve_nfe_exponential(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0), 2.0,
                                          kNoDrive, MacroField(8, 0.0), 5.0, 1e-2, 10);
  CHECK(traj.kind() == TrajectoryKind::kCurrent);
  CHECK(traj.times().back() == 5.0);
  for (std::size_t s = 0; s < traj.size(); ++s) {
    CHECK(std::abs(traj.fields()[s][3] - (1.0 - std::exp(-traj.times()[s]))) < 1e-9);
  }
  const auto lam = intensity_of(traj, SynapticResponse::linear(1.0), kNoDrive);
  CHECK(lam.kind() == TrajectoryKind::kLambda);
  CHECK(lam.back()[0] == doctest::Approx(2.0 - std::exp(-5.0)));
}

TEST_CASE("relaxing drive enters the current equation") {
  // constant response: dX/dt = -alpha X + c W; the drive is irrelevant
  const auto drive = ExogenousDrive::relaxation(ScalarFunction::constant(0.0), ScalarFunction::constant(1.0), 1.0);
  const auto traj = solve_nfe_exponential(SpatialKernel::constant(0.5), SynapticResponse::constant(2.0), 1.5,
                                          drive, MacroField(4, 0.0), 2.0, 1e-3);
  CHECK(traj.back()[1] == doctest::Approx((1.0 / 1.5) * (1.0 - std::exp(-3.0))).epsilon(1e-10));

  // linear response with W = 0: lambda = mu + eta_t
  const auto lam = intensity_of(solve_nfe_exponential(SpatialKernel::constant(0.0), SynapticResponse::linear(1.0),
                                                      1.0, drive, MacroField(4, 0.0), 1.0, 1e-2),
                                SynapticResponse::linear(1.0), drive);
  CHECK(lam.back()[2] == doctest::Approx(1.0 + std::exp(-1.0)));
}

TEST_CASE("supercritical currents blow up") {
  CHECK_THROWS_AS(solve_nfe_exponential(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0), 0.5,
                                        kNoDrive, MacroField(4, 0.0), 200.0, 0.05),
                  BlowUp);
  CHECK_THROWS_AS(solve_lambda_volterra(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0),
                                        MemoryKernel::exponential(0.25), kNoDrive, 200.0, 0.05, 4),
                  BlowUp);
}

TEST_CASE("Volterra intensities agree with the current ODE") {
  const double dt = 1e-3;
  const auto w = SpatialKernel::exp_distance(0.5);
  const auto f = SynapticResponse::linear(1.0);
  const auto ode = intensity_of(solve_nfe_exponential(w, f, 2.0, kNoDrive, MacroField(32, 0.0), 4.0, dt, 100),
                                f, kNoDrive);
  const auto vol = solve_lambda_volterra(w, f, MemoryKernel::exponential(2.0), kNoDrive, 4.0, dt, 32, 100);
  REQUIRE(vol.size() == ode.size());
  for (std::size_t s = 0; s < vol.size(); ++s) {
    CHECK(vol.times()[s] == doctest::Approx(ode.times()[s]));
    CHECK((vol.fields()[s] - ode.fields()[s]).linf_norm() <= 10.0 * dt);
  }
}

TEST_CASE("time to the eps-neighbourhood") {
  // X(t) = 1 - exp(-t) enters |X - 1| <= eps / 4 = 0.1 at t = ln 10
  const auto traj = solve_nfe_exponential(SpatialKernel::constant(1.0), SynapticResponse::linear(1.0), 2.0,
                                          kNoDrive, MacroField(4, 0.0), 6.0, 1e-3);
  const double t = time_to_neighborhood(traj, MacroField(4, 1.0), 0.4);
  CHECK(t >= std::log(10.0) - 1e-9);
  CHECK(t <= std::log(10.0) + 1e-3);
  CHECK_THROWS_AS(time_to_neighborhood(traj, MacroField(4, 5.0), 0.4), NotReached);
  CHECK_THROWS_AS(time_to_neighborhood(traj, MacroField(3, 1.0), 0.4), std::invalid_argument);
}

TEST_CASE("trajectory container") {
  MacroTrajectory traj(TrajectoryKind::kCurrent);
  traj.push(0.0, MacroField(std::vector<double>{0.0, 1.0}));
  traj.push(1.0, MacroField(std::vector<double>{2.0, 3.0}));
  CHECK(traj.at(0.25)[0] == doctest::Approx(0.5));
  CHECK(traj.at(5.0)[1] == 3.0);
  CHECK_THROWS_AS(traj.push(1.0, MacroField(2)), std::invalid_argument);
  CHECK_THROWS_AS(traj.push(2.0, MacroField(3)), std::invalid_argument);
  CHECK(traj.to_csv() == "t,node_0,node_1\n0,0,1\n1,2,3\n");
  CHECK(field_to_csv(MacroField(std::vector<double>{7.0, 8.0})) == "node,value\n0.25,7\n0.75,8\n");
}
