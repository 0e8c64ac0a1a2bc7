#include "magsync/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "magsync/trajectory_io.hpp"

namespace magsync {

namespace {

struct NumericField {
  const char* key;
  double SystemParams::* param;
  double ScenarioConfig::* config;
};

// decimation is integral and handled separately.
const NumericField kFields[] = {
    {"g1", &SystemParams::g1, nullptr},
    {"g2", &SystemParams::g2, nullptr},
    {"K1", &SystemParams::K1, nullptr},
    {"K2", &SystemParams::K2, nullptr},
    {"Omega1", &SystemParams::Omega1, nullptr},
    {"Omega2", &SystemParams::Omega2, nullptr},
    {"OmegaC", &SystemParams::OmegaC, nullptr},
    {"Delta1", &SystemParams::Delta1, nullptr},
    {"Delta2", &SystemParams::Delta2, nullptr},
    {"DeltaC", &SystemParams::DeltaC, nullptr},
    {"gamma1", &SystemParams::gamma1, nullptr},
    {"gamma2", &SystemParams::gamma2, nullptr},
    {"gammaC", &SystemParams::gammaC, nullptr},
    {"nbar_m", &SystemParams::nbarM, nullptr},
    {"t_final", nullptr, &ScenarioConfig::t_final},
    {"dt", nullptr, &ScenarioConfig::dt},
    {"averaging_window_fraction", nullptr, &ScenarioConfig::averaging_window_fraction},
};

constexpr const char* kDecimation = "decimation";

const NumericField* find_field(std::string_view key) {
  for (const auto& f : kFields)
    if (key == f.key) return &f;
  return nullptr;
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

std::string trajectory_name(std::size_t index, std::size_t count) {
  if (count == 1) return "trajectory.csv";
  char buf[32];
  std::snprintf(buf, sizeof buf, "trajectory_%03zu.csv", index);
  return buf;
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::limit_cycle: return "limit-cycle";
    case Scenario::phase_locked: return "phase-locked";
    case Scenario::sync_timeseries: return "sync-timeseries";
    case Scenario::thermal_sweep: return "thermal-sweep";
    case Scenario::custom: return "custom";
  }
  return "custom";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::limit_cycle, Scenario::phase_locked, Scenario::sync_timeseries,
                     Scenario::thermal_sweep, Scenario::custom})
    if (scenario_name(s) == name) return s;
  throw RangeError("scenario", "unknown scenario '" + std::string(name) + "'");
}

ScenarioConfig preset_config(Scenario s) {
  ScenarioConfig c;
  SystemParams& p = c.params;
  p.OmegaC = 1.0;
  p.Delta1 = p.Delta2 = 0.001;
  p.DeltaC = -0.2;
  p.g1 = p.g2 = 0.1;
  p.K1 = p.K2 = 1e-10;
  p.gamma1 = p.gamma2 = p.gammaC = 0.1;
  p.nbarM = 0.0;
  p.Omega1 = 1.0;
  p.Omega2 = s == Scenario::limit_cycle ? 1.00001 : 1.1;

  c.t_final = 1e5;
  c.dt = 1e-2;
  c.decimation = 1000;
  c.averaging_window_fraction = 0.2;
  if (s == Scenario::thermal_sweep) {
    // The thermal covariance relaxes on a 1/gamma ~ 10 time scale.
    c.t_final = 1e4;
    c.decimation = 100;
  }
  return c;
}

std::vector<GridAxis> preset_grid(Scenario s) {
  if (s == Scenario::thermal_sweep) return {{"nbar_m", {0.0, 0.5, 1.0, 2.0, 5.0}}};
  return {};
}

const std::vector<std::string>& numeric_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : kFields) k.emplace_back(f.key);
    k.emplace_back(kDecimation);
    return k;
  }();
  return keys;
}

bool is_numeric_key(std::string_view key) {
  return find_field(key) != nullptr || key == kDecimation;
}

void set_numeric_field(ScenarioConfig& config, std::string_view key, double value) {
  if (key == kDecimation) {
    if (!std::isfinite(value) || value != std::floor(value))
      throw RangeError(kDecimation, "must be an integer");
    config.decimation = static_cast<long>(value);
    return;
  }
  const NumericField* f = find_field(key);
  if (f == nullptr) throw UnknownKey(std::string(key));
  if (f->param != nullptr)
    config.params.*(f->param) = value;
  else
    config.*(f->config) = value;
}

double get_numeric_field(const ScenarioConfig& config, std::string_view key) {
  if (key == kDecimation) return static_cast<double>(config.decimation);
  const NumericField* f = find_field(key);
  if (f == nullptr) throw UnknownKey(std::string(key));
  return f->param != nullptr ? config.params.*(f->param) : config.*(f->config);
}

void SweepSpec::validate() const {
  if (parallelism < 1) throw RangeError("parallelism", "must be >= 1");
  for (const auto& axis : overrides) {
    if (!is_numeric_key(axis.key)) throw UnknownKey(axis.key);
    if (axis.values.empty()) throw RangeError(axis.key, "grid must not be empty");
  }
}

std::vector<std::vector<double>> grid_points(const std::vector<GridAxis>& axes) {
  std::vector<std::vector<double>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& prefix : points)
      for (double v : axis.values) {
        next.push_back(prefix);
        next.back().push_back(v);
      }
    points = std::move(next);
  }
  return points;
}

std::string_view status_name(PointStatus s) {
  switch (s) {
    case PointStatus::ok: return "ok";
    case PointStatus::diverged: return "diverged";
    case PointStatus::numerical_error: return "numerical-error";
  }
  return "numerical-error";
}

PointSummary summarize(const Trajectory& traj, double window_fraction) {
  std::vector<TimedValue> phi, eps_sq, sq;
  phi.reserve(traj.records.size());
  eps_sq.reserve(traj.records.size());
  sq.reserve(traj.records.size());
  for (const auto& r : traj.records) {
    if (std::isfinite(r.phase.phi)) phi.push_back({r.t, r.phase.phi});
    eps_sq.push_back({r.t, r.classical.eps_c * r.classical.eps_c});
    sq.push_back({r.t, r.s_q_phi});
  }

  PointSummary s;
  s.phi_final = phi.empty() ? nan() : tail_median(phi, window_fraction);
  s.eps_c_tail_rms = std::sqrt(time_average(eps_sq, window_fraction));
  s.s_q_phi_mean = time_average(sq, window_fraction);
  s.max_kerr_correction = traj.max_kerr_correction;
  s.min_eigen_ratio = traj.min_eigen_ratio;
  return s;
}

SweepResult run_scenario(const SweepSpec& spec, const ScenarioConfig& base,
                         const RunOptions& options) {
  spec.validate();
  const auto points = grid_points(spec.overrides);

  std::vector<ScenarioConfig> configs;
  configs.reserve(points.size());
  for (const auto& coords : points) {
    ScenarioConfig c = base;
    for (std::size_t a = 0; a < coords.size(); ++a)
      set_numeric_field(c, spec.overrides[a].key, coords[a]);
    c.validate();
    configs.push_back(std::move(c));
  }

  SweepResult result;
  result.scenario = spec.scenario;
  for (const auto& axis : spec.overrides) result.axis_keys.push_back(axis.key);
  result.points.resize(points.size());
  if (options.keep_trajectories) result.trajectories.resize(points.size());
  if (!options.output_dir.empty()) ensure_directory(options.output_dir);

  auto run_point = [&](std::size_t i) {
    PointSummary& s = result.points[i];
    const auto start = std::chrono::steady_clock::now();
    try {
      Trajectory traj = propagate(configs[i]);
      s = summarize(traj, configs[i].averaging_window_fraction);
      if (!options.output_dir.empty()) {
        s.trajectory_file = trajectory_name(i, points.size());
        CsvOptions csv;
        csv.full_covariance = options.full_covariance;
        csv.fluctuation_mean = configs[i].include_fluctuation_drive;
        write_trajectory(traj.records, options.output_dir / s.trajectory_file, csv);
      }
      if (options.keep_trajectories) result.trajectories[i] = std::move(traj);
    } catch (const StepDiverged& e) {
      s.status = PointStatus::diverged;
      s.message = e.what();
    } catch (const NumericalError& e) {
      s.status = PointStatus::numerical_error;
      s.message = e.what();
    }
    if (s.status != PointStatus::ok) {
      s.phi_final = s.eps_c_tail_rms = s.s_q_phi_mean = nan();
      s.max_kerr_correction = s.min_eigen_ratio = nan();
      s.trajectory_file.clear();
    }
    s.index = i;
    s.coordinates = points[i];
    s.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(spec.parallelism), points.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) run_point(i);
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
          try {
            run_point(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

SweepResult run_scenario(const SweepSpec& spec, const RunOptions& options) {
  return run_scenario(spec, preset_config(spec.scenario), options);
}

}  // namespace magsync
