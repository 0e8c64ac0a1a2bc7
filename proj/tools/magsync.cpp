// Command-line front end: runs presets and parameter sweeps, writes
// trajectory CSVs, a summary CSV and a manifest into one output directory.
//
// Exit codes: 0 success, 2 config error, 3 numerical divergence, 4 I/O error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magsync/config.hpp"
#include "magsync/experiments.hpp"
#include "magsync/trajectory_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct RunArgs {
  std::string scenario;
  std::string config_file;
  std::string out_dir = "magsync-out";
  std::optional<int> parallelism;
  bool full_covariance = false;
  bool include_f = false;
  std::vector<std::string> grid;
};

void add_common(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--scenario", args.scenario,
                  "limit-cycle | phase-locked | sync-timeseries | thermal-sweep | custom");
  cmd->add_option("--config", args.config_file, "JSON config document")->check(CLI::ExistingFile);
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--parallelism", args.parallelism, "worker threads for sweep points");
  cmd->add_flag("--full-covariance", args.full_covariance, "write all 21 covariance entries");
  cmd->add_flag("--include-F", args.include_f,
                "track fluctuation first moments under the drive vector (diagnostic)");
}

// key=v1,v2,...
magsync::GridAxis parse_grid_flag(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw magsync::ParseError("--grid expects key=v1,v2,...; got '" + text + "'");
  magsync::GridAxis axis;
  axis.key = text.substr(0, eq);
  std::stringstream ss(text.substr(eq + 1));
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      axis.values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::logic_error&) {
      throw magsync::ParseError("--grid " + axis.key + ": bad number '" + cell + "'");
    }
  }
  return axis;
}

magsync::ResolvedConfig resolve(const RunArgs& args) {
  std::optional<magsync::Scenario> scenario;
  if (!args.scenario.empty()) scenario = magsync::parse_scenario(args.scenario);

  magsync::ResolvedConfig rc = args.config_file.empty()
                                   ? magsync::parse_config("", scenario)
                                   : magsync::load_config(args.config_file, scenario);
  if (args.parallelism) rc.sweep.parallelism = *args.parallelism;
  if (args.include_f) rc.scenario.include_fluctuation_drive = true;
  if (!args.grid.empty()) {
    rc.sweep.overrides.clear();
    for (const auto& g : args.grid) rc.sweep.overrides.push_back(parse_grid_flag(g));
  }
  rc.sweep.validate();
  rc.scenario.validate();
  return rc;
}

int run(const RunArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const magsync::ResolvedConfig rc = resolve(args);
  const std::filesystem::path out = args.out_dir;
  magsync::ensure_directory(out);

  magsync::RunOptions options;
  options.output_dir = out;
  options.full_covariance = args.full_covariance;
  const magsync::SweepResult result = magsync::run_scenario(rc.sweep, rc.scenario, options);

  magsync::write_summary(result, out / "summary.csv");

  magsync::RunManifest manifest;
  manifest.config = rc;
  manifest.artifacts.push_back("summary.csv");
  for (const auto& p : result.points)
    if (!p.trajectory_file.empty()) manifest.artifacts.push_back(p.trajectory_file);
  manifest.points = result.points;
  manifest.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  magsync::write_manifest(manifest, out);

  bool diverged = false;
  for (const auto& p : result.points) {
    std::cout << "point " << p.index;
    for (std::size_t a = 0; a < p.coordinates.size(); ++a)
      std::cout << ' ' << result.axis_keys[a] << '=' << p.coordinates[a];
    if (p.status == magsync::PointStatus::ok) {
      std::cout << "  phi=" << magsync::format_double(p.phi_final)
                << "  epsC_rms=" << magsync::format_double(p.eps_c_tail_rms)
                << "  sQphi_mean=" << magsync::format_double(p.s_q_phi_mean) << '\n';
    } else {
      diverged = true;
      std::cout << "  " << magsync::status_name(p.status) << ": " << p.message << '\n';
    }
  }
  std::cout << "wrote " << (out / "manifest.json").string() << '\n';
  return diverged ? kExitNumerical : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cavity-mediated magnon synchronization simulator"};
  app.set_version_flag("--version", std::string(magsync::version()));
  app.require_subcommand(1);

  RunArgs simulate_args;
  auto* simulate = app.add_subcommand("simulate", "run a scenario preset");
  add_common(simulate, simulate_args);

  RunArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid over a scenario");
  add_common(sweep, sweep_args);
  sweep->add_option("--grid", sweep_args.grid, "key=v1,v2,... (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return run(simulate->parsed() ? simulate_args : sweep_args);
  } catch (const magsync::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const magsync::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const magsync::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
}
