#include "magsync/trajectory_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "magsync/experiments.hpp"

namespace magsync {

namespace {

struct CovEntry {
  int i, j;
};

// 1-based names C13 etc. map to zero-based (0, 2).
const CovEntry kReducedCov[] = {{0, 0}, {1, 1}, {2, 2}, {3, 3},
                                {0, 2}, {1, 3}, {1, 2}, {0, 3}};

std::vector<CovEntry> covariance_entries(const CsvOptions& options) {
  if (!options.full_covariance) return {std::begin(kReducedCov), std::end(kReducedCov)};
  std::vector<CovEntry> all;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) all.push_back({i, j});
  return all;
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) line += ',';
    line += cells[k];
  }
  return line;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::vector<std::string> trajectory_columns(const CsvOptions& options) {
  std::vector<std::string> cols{"t",    "qbar1", "pbar1", "qbar2", "pbar2",
                                "xbar", "ybar",  "epsC",  "phi",   "sQphi"};
  for (const auto& e : covariance_entries(options))
    cols.push_back("C" + std::to_string(e.i + 1) + std::to_string(e.j + 1));
  if (options.fluctuation_mean)
    for (const char* name : {"fq1", "fp1", "fq2", "fp2", "fx", "fy"}) cols.emplace_back(name);
  return cols;
}

std::vector<double> trajectory_row(const TrajectoryRecord& r, const CsvOptions& options) {
  std::vector<double> row{r.t,          r.quads.q1, r.quads.p1,       r.quads.q2,
                          r.quads.p2,   r.quads.x,  r.quads.y,        r.classical.eps_c,
                          r.phase.phi,  r.s_q_phi};
  for (const auto& e : covariance_entries(options)) row.push_back(r.covariance(e.i, e.j));
  if (options.fluctuation_mean)
    for (int k = 0; k < 6; ++k) row.push_back(r.fluctuation_mean[k]);
  return row;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory(std::span<const TrajectoryRecord> records,
                      const std::filesystem::path& path, const CsvOptions& options) {
  std::ofstream out = open_for_write(path);
  out << join(trajectory_columns(options)) << '\n';
  std::string line;
  for (const auto& r : records) {
    line.clear();
    const auto row = trajectory_row(r, options);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) line += ',';
      line += format_double(row[k]);
    }
    out << line << '\n';
  }
  finish(out, path);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k)
    if (header[k] == name) return k;
  throw ParseError("missing column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path.string() + "' is empty");
  table.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size())
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                       std::to_string(table.header.size()) + " cells");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) {
      char* end = nullptr;
      errno = 0;
      const double v = std::strtod(c.c_str(), &end);
      if (c.empty() || end != c.c_str() + c.size())
        throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad number '" + c +
                         "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<std::string> summary_columns(const std::vector<std::string>& axis_keys) {
  std::vector<std::string> cols{"point"};
  cols.insert(cols.end(), axis_keys.begin(), axis_keys.end());
  for (const char* c : {"status", "phi", "epsC_tail_rms", "sQphi_mean", "max_kerr_correction",
                        "min_eig_ratio", "trajectory"})
    cols.emplace_back(c);
  return cols;
}

void write_summary(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  out << join(summary_columns(result.axis_keys)) << '\n';
  for (const auto& p : result.points) {
    std::vector<std::string> cells{std::to_string(p.index)};
    for (double c : p.coordinates) cells.push_back(format_double(c));
    cells.emplace_back(status_name(p.status));
    for (double v : {p.phi_final, p.eps_c_tail_rms, p.s_q_phi_mean, p.max_kerr_correction,
                     p.min_eigen_ratio})
      cells.push_back(format_double(v));
    cells.push_back(p.trajectory_file);
    out << join(cells) << '\n';
  }
  finish(out, path);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

}  // namespace magsync
