#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magsync/experiments.hpp"

namespace magsync {

/// A fully resolved run: preset, document overrides and defaults applied.
struct ResolvedConfig {
  SweepSpec sweep;
  ScenarioConfig scenario;

  friend bool operator==(const ResolvedConfig&, const ResolvedConfig&) = default;
};

/// Preset config together with the preset's default grid.
ResolvedConfig resolve_preset(Scenario s);

/// Parses a JSON config document with flat keys.
///
/// Schema (all keys optional):
///   scenario                  preset name; defaults to `scenario` below, then "custom"
///   parallelism               integer >= 1
///   grid                      [{"key": <numeric key>, "values": [...]}, ...]
///   g1 g2 K1 K2 Omega1 Omega2 OmegaC Delta1 Delta2 DeltaC
///   gamma1 gamma2 gammaC nbar_m
///   t_final dt decimation averaging_window_fraction
///   cavity_bath               "thermal" | "vacuum"
///   init_alpha1 init_alpha2 init_beta   [re, im]
///   init_cov                  "thermal-magnon" | "uniform-vacuum" | "explicit"
///   init_cov_matrix           6x6 nested array, required for "explicit"
///   include_F                 bool
///
/// Starts from the preset, applies the document, fills the preset grid when
/// the document has none, then validates. An empty or all-whitespace text is
/// an empty document. If `scenario` is given and the document names a
/// different one, throws RangeError("scenario").
///
/// Throws ParseError, UnknownKey or RangeError.
ResolvedConfig parse_config(std::string_view text, std::optional<Scenario> scenario = {});

/// Canonical JSON of a resolved config: every key present, sorted, two-space
/// indent. parse_config(serialize_config(c)) == c, and re-serializing that
/// reproduces the same bytes.
std::string serialize_config(const ResolvedConfig& config);

/// Reads and parses a config file; IoError if unreadable.
ResolvedConfig load_config(const std::filesystem::path& path,
                           std::optional<Scenario> scenario = {});

std::string_view version();

/// Per-directory record of what a run did.
struct RunManifest {
  ResolvedConfig config;
  std::vector<std::string> artifacts;  // paths relative to the run directory
  double runtime_seconds = 0.0;
  std::vector<PointSummary> points;    // per-point diagnostics and messages
};

/// Writes manifest.json into `dir`. Throws IoError.
void write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

/// The resolved config echoed in a manifest file.
ResolvedConfig read_manifest_config(const std::filesystem::path& manifest_path);

}  // namespace magsync
