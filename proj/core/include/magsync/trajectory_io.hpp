#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "magsync/dynamics.hpp"

namespace magsync {

struct SweepResult;

struct CsvOptions {
  /// Emit all 21 independent covariance entries instead of the 8 that the
  /// synchronization measure needs.
  bool full_covariance = false;
  /// Append the fluctuation first moments fq1, fp1, fq2, fp2, fx, fy.
  bool fluctuation_mean = false;
};

/// Header columns, in order. The default layout is
/// t,qbar1,pbar1,qbar2,pbar2,xbar,ybar,epsC,phi,sQphi,C11,C22,C33,C44,C13,C24,C23,C14
std::vector<std::string> trajectory_columns(const CsvOptions& options = {});

/// Values of one record in trajectory_columns() order.
std::vector<double> trajectory_row(const TrajectoryRecord& record, const CsvOptions& options = {});

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

/// Writes header plus one row per record. Throws IoError with the path.
void write_trajectory(std::span<const TrajectoryRecord> records,
                      const std::filesystem::path& path, const CsvOptions& options = {});

/// A numeric CSV: header names plus rows of doubles.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a column; throws ParseError if absent.
  std::size_t column(const std::string& name) const;
};

/// Reads a CSV whose cells are all numeric (nan/inf allowed).
/// Throws IoError if unreadable, ParseError if malformed.
CsvTable read_csv(const std::filesystem::path& path);

/// Header row of a sweep summary.
std::vector<std::string> summary_columns(const std::vector<std::string>& axis_keys);

/// One summary row per grid point. Wall-clock runtimes are left out so
/// identical sweeps produce identical files.
void write_summary(const SweepResult& result, const std::filesystem::path& path);

/// create_directories, reporting failures as IoError.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace magsync
