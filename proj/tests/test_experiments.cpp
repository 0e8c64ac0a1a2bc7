#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "magsync/experiments.hpp"
#include "magsync/trajectory_io.hpp"

using namespace magsync;
namespace fs = std::filesystem;

namespace {

ScenarioConfig short_run(Scenario s) {
  ScenarioConfig c = preset_config(s);
  c.t_final = 300.0;
  c.decimation = 500;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("magsync_test_experiments_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("presets carry the reference parameter set") {
  for (Scenario s : {Scenario::limit_cycle, Scenario::phase_locked, Scenario::sync_timeseries,
                     Scenario::thermal_sweep, Scenario::custom}) {
    const SystemParams p = preset_config(s).params;
    CHECK(p.OmegaC == 1.0);
    CHECK(p.Delta1 == 0.001);
    CHECK(p.Delta2 == 0.001);
    CHECK(p.DeltaC == -0.2);
    CHECK(p.g1 == 0.1);
    CHECK(p.g2 == 0.1);
    CHECK(p.K1 == 1e-10);
    CHECK(p.K2 == 1e-10);
    CHECK(p.gamma1 == 0.1);
    CHECK(p.gamma2 == 0.1);
    CHECK(p.gammaC == 0.1);
    CHECK(p.Omega1 == 1.0);
    CHECK(p.Omega2 == (s == Scenario::limit_cycle ? 1.00001 : 1.1));
    CHECK_NOTHROW(preset_config(s).validate());
  }
  CHECK(preset_config(Scenario::phase_locked).t_final == 1e5);
  CHECK(preset_config(Scenario::phase_locked).dt == 1e-2);
  CHECK(preset_grid(Scenario::thermal_sweep).at(0).key == "nbar_m");
  CHECK(preset_grid(Scenario::thermal_sweep).at(0).values ==
        std::vector<double>{0.0, 0.5, 1.0, 2.0, 5.0});
  CHECK(preset_grid(Scenario::phase_locked).empty());
}

TEST_CASE("scenario names round-trip") {
  for (Scenario s : {Scenario::limit_cycle, Scenario::phase_locked, Scenario::sync_timeseries,
                     Scenario::thermal_sweep, Scenario::custom})
    CHECK(parse_scenario(scenario_name(s)) == s);
  CHECK_THROWS_AS(parse_scenario("fig-9"), RangeError);
}

TEST_CASE("numeric field table") {
  ScenarioConfig c;
  for (const auto& key : numeric_keys()) {
    set_numeric_field(c, key, 7.0);
    CHECK(get_numeric_field(c, key) == 7.0);
  }
  CHECK(c.params.nbarM == 7.0);
  CHECK(c.decimation == 7);
  CHECK_THROWS_AS(set_numeric_field(c, "Omega3", 1.0), UnknownKey);
  CHECK_THROWS_AS(set_numeric_field(c, "decimation", 2.5), RangeError);
}

TEST_CASE("grid_points is a row-major Cartesian product") {
  const auto pts = grid_points({{"g1", {1, 2}}, {"nbar_m", {0, 5, 9}}});
  REQUIRE(pts.size() == 6);
  CHECK(pts[0] == std::vector<double>{1, 0});
  CHECK(pts[2] == std::vector<double>{1, 9});
  CHECK(pts[3] == std::vector<double>{2, 0});
  CHECK(grid_points({}).size() == 1);
}

TEST_CASE("SweepSpec::validate") {
  SweepSpec s;
  CHECK_NOTHROW(s.validate());
  s.parallelism = 0;
  CHECK_THROWS_AS(s.validate(), RangeError);
  s.parallelism = 2;
  s.overrides = {{"nbar_m", {}}};
  CHECK_THROWS_AS(s.validate(), RangeError);
  s.overrides = {{"scenario", {1.0}}};
  CHECK_THROWS_AS(s.validate(), UnknownKey);
}

TEST_CASE("run_scenario summarises every grid point") {
  SweepSpec spec;
  spec.scenario = Scenario::custom;
  spec.overrides = {{"nbar_m", {0.0, 2.0}}};
  RunOptions opts;
  opts.keep_trajectories = true;
  const SweepResult r = run_scenario(spec, short_run(Scenario::custom), opts);
  REQUIRE(r.points.size() == 2);
  REQUIRE(r.trajectories.size() == 2);
  CHECK(r.axis_keys == std::vector<std::string>{"nbar_m"});
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r.points[i].index == i);
    CHECK(r.points[i].status == PointStatus::ok);
    CHECK(std::isfinite(r.points[i].phi_final));
    CHECK(r.points[i].trajectory_file.empty());
  }
  CHECK(r.points[0].coordinates == std::vector<double>{0.0});
  CHECK(r.points[1].s_q_phi_mean < r.points[0].s_q_phi_mean);
  const PointSummary again =
      summarize(r.trajectories[1], short_run(Scenario::custom).averaging_window_fraction);
  CHECK(again.s_q_phi_mean == r.points[1].s_q_phi_mean);
}

TEST_CASE("divergent points are recorded, config errors abort") {
  SweepSpec spec;
  spec.overrides = {{"gamma1", {0.1, 1e6}}};
  ScenarioConfig base = short_run(Scenario::custom);
  base.dt = 1.0;
  base.decimation = 10;
  const SweepResult r = run_scenario(spec, base);
  REQUIRE(r.points.size() == 2);
  CHECK(r.points[0].status == PointStatus::ok);
  CHECK(r.points[1].status == PointStatus::diverged);
  CHECK(std::isnan(r.points[1].s_q_phi_mean));
  CHECK_FALSE(r.points[1].message.empty());

  spec.overrides = {{"gamma1", {0.1, -1.0}}};
  CHECK_THROWS_AS(run_scenario(spec, base), RangeError);
}

TEST_CASE("sweeps are deterministic and independent of parallelism") {
  SweepSpec spec;
  spec.scenario = Scenario::custom;
  spec.overrides = {{"Omega2", {1.0, 1.05, 1.1}}, {"nbar_m", {0.0, 1.0}}};
  const ScenarioConfig base = short_run(Scenario::custom);

  auto run_to = [&](int parallelism, const std::string& tag) {
    SweepSpec s = spec;
    s.parallelism = parallelism;
    RunOptions o;
    o.output_dir = scratch(tag);
    const SweepResult r = run_scenario(s, base, o);
    write_summary(r, o.output_dir / "summary.csv");
    return o.output_dir;
  };
  const fs::path serial = run_to(1, "serial");
  const fs::path serial_again = run_to(1, "serial_again");
  const fs::path parallel = run_to(4, "parallel");

  const std::string summary = slurp(serial / "summary.csv");
  CHECK(summary == slurp(serial_again / "summary.csv"));
  CHECK(summary == slurp(parallel / "summary.csv"));
  for (int i = 0; i < 6; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "trajectory_%03d.csv", i);
    CHECK(slurp(serial / name) == slurp(parallel / name));
  }
  CHECK(summary.rfind("point,Omega2,nbar_m,status,phi,", 0) == 0);
}
