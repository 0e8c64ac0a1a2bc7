#include <doctest.h>

#include <cmath>
#include <random>

#include "magsync/dynamics.hpp"
#include "magsync/experiments.hpp"

using namespace magsync;

namespace {

ScenarioConfig quiet_config() {
  ScenarioConfig c;
  c.params.gamma1 = 0.1;
  c.params.gamma2 = 0.1;
  c.params.gammaC = 0.1;
  c.t_final = 100.0;
  c.dt = 1e-2;
  c.decimation = 100;
  return c;
}

double max_abs_deviation(const Trajectory& traj, const Mat6& target) {
  double worst = 0.0;
  for (const auto& r : traj.records)
    worst = std::max(worst, (r.covariance - target).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

TEST_CASE("rk4_step") {
  SUBCASE("zero derivative leaves the state alone") {
    const std::array<double, 3> y{1.0, -2.0, 3.5};
    const auto zero = [](double, const std::array<double, 3>&) { return std::array<double, 3>{}; };
    CHECK(rk4_step(zero, y, 0.0, 0.1) == y);
  }
  SUBCASE("linear decay") {
    const auto decay = [](double, const std::array<double, 1>& y) {
      return std::array<double, 1>{-y[0]};
    };
    const auto y = rk4_step(decay, std::array<double, 1>{1.0}, 0.0, 0.1);
    CHECK(y[0] == doctest::Approx(0.9048375).epsilon(1e-7));
    CHECK(std::abs(y[0] - std::exp(-0.1)) < 1e-7);
  }
  SUBCASE("complex rotation conserves the norm") {
    const auto rotate = [](double, const std::array<cplx, 1>& y) {
      return std::array<cplx, 1>{cplx{0.0, -1.0} * y[0]};
    };
    std::array<cplx, 1> y{cplx{1.0, 0.0}};
    const double dt = 1e-2;
    for (int k = 0; k < 100; ++k) y = rk4_step(rotate, y, k * dt, dt);
    CHECK(std::abs(std::abs(y[0]) - 1.0) < 1e-10);
    CHECK(std::abs(y[0] - std::polar(1.0, -1.0)) < 1e-9);
  }
  SUBCASE("time argument reaches the substages") {
    const auto ramp = [](double t, const std::array<double, 1>&) {
      return std::array<double, 1>{3.0 * t * t};
    };
    // Simpson is exact for quadratics: integral of 3t^2 over [1, 1.5].
    const auto y = rk4_step(ramp, std::array<double, 1>{0.0}, 1.0, 0.5);
    CHECK(y[0] == doctest::Approx(1.5 * 1.5 * 1.5 - 1.0));
  }
  SUBCASE("non-finite output throws") {
    const auto blow = [](double, const std::array<double, 1>& y) {
      return std::array<double, 1>{y[0] * 1e300};
    };
    CHECK_THROWS_AS(rk4_step(blow, std::array<double, 1>{1e10}, 0.0, 1.0), StepDiverged);
  }
}

TEST_CASE("pack and unpack the upper triangle") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n;
  Mat6 a;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) a(i, j) = n(rng);
  const Mat6 s = a + a.transpose();
  const auto packed = pack_upper(s);
  CHECK(packed[0] == s(0, 0));
  CHECK(packed[1] == s(0, 1));
  CHECK(packed[6] == s(1, 1));
  CHECK(packed[20] == s(5, 5));
  CHECK(unpack_upper(packed.data()) == s);
}

TEST_CASE("damped vacuum is a fixed point") {
  ScenarioConfig c = quiet_config();
  c.init_cov = CovarianceInit::uniform_vacuum;
  const Trajectory traj = propagate(c);
  CHECK(max_abs_deviation(traj, 0.5 * Mat6::Identity()) < 1e-9);
}

TEST_CASE("excess noise relaxes at the damping rate") {
  ScenarioConfig c = quiet_config();
  c.params.gamma1 = 0.1;
  c.params.gamma2 = 0.2;
  c.params.gammaC = 0.3;
  c.init_cov = CovarianceInit::explicit_matrix;
  c.init_cov_matrix = Mat6::Identity();
  const Trajectory traj = propagate(c);
  const double rates[6] = {0.1, 0.1, 0.2, 0.2, 0.3, 0.3};
  double worst = 0.0;
  for (const auto& r : traj.records)
    for (int i = 0; i < 6; ++i) {
      const double exact = 0.5 + 0.5 * std::exp(-rates[i] * r.t);
      worst = std::max(worst, std::abs(r.covariance(i, i) - exact));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("beam-splitter coupling preserves the vacuum") {
  ScenarioConfig c = preset_config(Scenario::phase_locked);
  c.params.Omega1 = c.params.Omega2 = c.params.OmegaC = 0.0;
  c.params.K1 = c.params.K2 = 0.0;
  c.params.nbarM = 0.0;
  c.t_final = 100.0;
  c.decimation = 100;
  c.init_cov = CovarianceInit::uniform_vacuum;
  REQUIRE(c.params.g1 != 0.0);
  const Trajectory traj = propagate(c);
  CHECK(max_abs_deviation(traj, 0.5 * Mat6::Identity()) < 1e-9);
}

TEST_CASE("uniform thermal baths relax to nbar + 1/2") {
  ScenarioConfig c = preset_config(Scenario::phase_locked);
  c.params.K1 = c.params.K2 = 0.0;
  c.params.nbarM = 1.0;
  c.t_final = 400.0;
  c.decimation = 1000;
  const Trajectory traj = propagate(c);
  const Mat6 last = traj.records.back().covariance;
  CHECK((last - 1.5 * Mat6::Identity()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(traj.records.back().s_q_phi == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("record layout and covariance sanity on the driven system") {
  ScenarioConfig c = preset_config(Scenario::phase_locked);
  c.t_final = 500.0;
  c.decimation = 250;
  const Trajectory traj = propagate(c);
  REQUIRE(traj.records.size() == 201);
  CHECK(traj.records.front().t == 0.0);
  CHECK(traj.records.back().t == doctest::Approx(500.0));
  // Both modes start at the origin, so the phase is undefined at t = 0.
  CHECK(std::isnan(traj.records.front().phase.phi));
  CHECK(traj.records.front().s_q_phi == doctest::Approx(1.0));
  for (std::size_t k = 1; k < traj.records.size(); ++k) {
    const auto& r = traj.records[k];
    CHECK(r.t > traj.records[k - 1].t);
    CHECK(r.covariance == r.covariance.transpose());
    CHECK(min_eigenvalue(r.covariance) >= -1e-9 * r.covariance.trace());
    CHECK(r.s_q_phi <= 1.0 + 1e-6);
    CHECK(std::isfinite(r.phase.phi));
  }
  CHECK(traj.max_kerr_correction > 0.0);
  CHECK(traj.max_kerr_correction < 1e-4);
}

TEST_CASE("uneven final step is still recorded") {
  ScenarioConfig c = quiet_config();
  c.t_final = 1.05;
  c.dt = 0.1;
  c.decimation = 4;
  const Trajectory traj = propagate(c);
  // Steps: round(1.05 / 0.1) = 11 -> records at 0, 4, 8, 11.
  REQUIRE(traj.records.size() == 4);
  CHECK(traj.records.back().t == doctest::Approx(1.1));
}

TEST_CASE("halving the step leaves the sync-timeseries run unchanged") {
  ScenarioConfig c = preset_config(Scenario::sync_timeseries);
  c.t_final = 1e3;
  c.decimation = 1000;
  const auto coarse = propagate(c).records.back();
  c.dt /= 2;
  c.decimation *= 2;
  const auto fine = propagate(c).records.back();
  CHECK(coarse.t == fine.t);
  CHECK(std::abs(coarse.quads.q1 - fine.quads.q1) / std::abs(fine.quads.q1) < 1e-6);
  CHECK(std::abs(coarse.quads.p1 - fine.quads.p1) / std::abs(fine.quads.p1) < 1e-6);
  CHECK(std::abs(coarse.s_q_phi - fine.s_q_phi) / fine.s_q_phi < 1e-6);
}

TEST_CASE("the fluctuation drive never touches the covariance") {
  ScenarioConfig c = preset_config(Scenario::phase_locked);
  c.t_final = 200.0;
  c.decimation = 500;
  const Trajectory plain = propagate(c);
  c.include_fluctuation_drive = true;
  const Trajectory driven = propagate(c);
  REQUIRE(plain.records.size() == driven.records.size());
  for (std::size_t k = 0; k < plain.records.size(); ++k) {
    CHECK(plain.records[k].covariance == driven.records[k].covariance);
    CHECK(plain.records[k].quads.q1 == driven.records[k].quads.q1);
    CHECK(plain.records[k].fluctuation_mean.isZero(0.0));
  }
  CHECK(driven.records.back().fluctuation_mean.norm() > 0.0);
}

TEST_CASE("propagate rejects bad configs and reports divergence") {
  ScenarioConfig c = quiet_config();
  SUBCASE("dt") {
    c.dt = 0.0;
    CHECK_THROWS_AS(propagate(c), RangeError);
  }
  SUBCASE("t_final") {
    c.t_final = c.dt / 2;
    CHECK_THROWS_AS(propagate(c), RangeError);
  }
  SUBCASE("decimation") {
    c.decimation = 0;
    CHECK_THROWS_AS(propagate(c), RangeError);
  }
  SUBCASE("asymmetric explicit covariance") {
    c.init_cov = CovarianceInit::explicit_matrix;
    c.init_cov_matrix = Mat6::Identity();
    c.init_cov_matrix(0, 1) = 0.1;
    CHECK_THROWS_AS(propagate(c), RangeError);
  }
  SUBCASE("runaway step") {
    c.params.gamma1 = 1e6;
    c.init_alpha[0] = 1.0;
    c.dt = 1.0;
    c.t_final = 1000.0;
    CHECK_THROWS_AS(propagate(c), StepDiverged);
  }
}
