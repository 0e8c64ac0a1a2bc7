#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "magsync/dynamics.hpp"

namespace magsync {

/// Named reproductions plus a free-form preset.
enum class Scenario {
  limit_cycle,      // Omega2 = 1.00001, shared limit cycle
  phase_locked,     // Omega2 = 1.1, locked with a finite phase offset
  sync_timeseries,  // Omega2 = 1.1, quantum synchronization vs time
  thermal_sweep,    // Omega2 = 1.1, time-averaged measure vs nbar_m
  custom,           // phase-locked parameters, meant to be overridden
};

std::string_view scenario_name(Scenario s);
/// Throws RangeError("scenario") for an unknown name.
Scenario parse_scenario(std::string_view name);

/// One swept parameter. `key` uses the flat config key schema.
struct GridAxis {
  std::string key;
  std::vector<double> values;

  friend bool operator==(const GridAxis&, const GridAxis&) = default;
};

struct SweepSpec {
  Scenario scenario = Scenario::custom;
  std::vector<GridAxis> overrides;
  int parallelism = 1;

  /// Throws RangeError / UnknownKey for empty grids, bad keys or parallelism.
  void validate() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

ScenarioConfig preset_config(Scenario s);
/// Default grid of a preset (only thermal-sweep has one).
std::vector<GridAxis> preset_grid(Scenario s);

/// Keys of every numeric ScenarioConfig / SystemParams field that a grid
/// axis may name.
const std::vector<std::string>& numeric_keys();
bool is_numeric_key(std::string_view key);
/// Throws UnknownKey if `key` is not numeric.
void set_numeric_field(ScenarioConfig& config, std::string_view key, double value);
double get_numeric_field(const ScenarioConfig& config, std::string_view key);

/// Cartesian product of the axes, first axis slowest.
std::vector<std::vector<double>> grid_points(const std::vector<GridAxis>& axes);

enum class PointStatus { ok, diverged, numerical_error };
std::string_view status_name(PointStatus s);

struct PointSummary {
  std::size_t index = 0;
  std::vector<double> coordinates;  // one value per grid axis
  PointStatus status = PointStatus::ok;
  std::string message;
  double phi_final = 0.0;          // tail median of phi
  double eps_c_tail_rms = 0.0;     // RMS of eps_c over the averaging window
  double s_q_phi_mean = 0.0;       // time average of s_q_phi over the window
  double max_kerr_correction = 0.0;
  double min_eigen_ratio = 0.0;
  double runtime_seconds = 0.0;    // wall clock, excluded from the summary CSV
  std::string trajectory_file;     // relative to the output directory
};

struct SweepResult {
  Scenario scenario = Scenario::custom;
  std::vector<std::string> axis_keys;
  std::vector<PointSummary> points;
  /// Filled only when RunOptions::keep_trajectories is set; grid order.
  std::vector<Trajectory> trajectories;
};

struct RunOptions {
  /// Trajectory CSVs are written here when non-empty.
  std::filesystem::path output_dir;
  bool full_covariance = false;
  bool keep_trajectories = false;
};

/// Summary statistics of one trajectory over `window_fraction`.
PointSummary summarize(const Trajectory& traj, double window_fraction);

/// Runs `propagate` on every grid point of `spec` applied to `base`, with up
/// to spec.parallelism worker threads. Results are in grid order. Numerical
/// failures are recorded per point; config errors abort before any work.
SweepResult run_scenario(const SweepSpec& spec, const ScenarioConfig& base,
                         const RunOptions& options = {});

/// Same, starting from the scenario's preset config.
SweepResult run_scenario(const SweepSpec& spec, const RunOptions& options = {});

}  // namespace magsync
