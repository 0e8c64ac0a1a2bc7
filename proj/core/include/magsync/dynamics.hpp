#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "magsync/errors.hpp"
#include "magsync/measures.hpp"
#include "magsync/model.hpp"
#include "magsync/quadrature.hpp"

namespace magsync {

/// How the covariance matrix starts out.
enum class CovarianceInit {
  thermal_magnon,  // magnons at nbar_m + 1/2, cavity at vacuum 1/2
  uniform_vacuum,  // I / 2
  explicit_matrix, // ScenarioConfig::init_cov_matrix
};

struct ScenarioConfig {
  SystemParams params;
  CavityBath cavity_bath = CavityBath::thermal;
  double t_final = 1e5;
  double dt = 1e-2;
  long decimation = 1000;
  std::array<cplx, 2> init_alpha{};
  cplx init_beta{};
  CovarianceInit init_cov = CovarianceInit::thermal_magnon;
  Mat6 init_cov_matrix = Mat6::Identity() * 0.5;
  double averaging_window_fraction = 0.2;
  bool include_fluctuation_drive = false;

  /// Throws RangeError naming the offending key.
  void validate() const;
  Mat6 initial_covariance() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// One decimated sample of a propagated trajectory.
struct TrajectoryRecord {
  double t = 0.0;
  MeanQuadratures quads;
  Mat6 covariance = Mat6::Zero();
  ClassicalSync classical;
  // phi1, phi2, phi are NaN while a mode sits at the origin; s_q_phi then
  // falls back to the unrotated measure.
  PhaseSample phase;
  double s_q_phi = 0.0;
  // First moments of the fluctuations under the drive vector. Stays zero
  // unless ScenarioConfig::include_fluctuation_drive is set; never feeds the
  // covariance.
  Vec6 fluctuation_mean = Vec6::Zero();
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  /// max over all steps of |A_i| |alpha_i|^2.
  double max_kerr_correction = 0.0;
  /// min over records of lambda_min(C) / trace(C).
  double min_eigen_ratio = 0.0;
};

/// Upper triangle, row-major: (0,0), (0,1), ..., (0,5), (1,1), ..., (5,5).
inline constexpr std::size_t kPackedCovarianceSize = 21;
std::array<double, kPackedCovarianceSize> pack_upper(const Mat6& m);
Mat6 unpack_upper(const double* packed);

/// Smallest eigenvalue of a symmetric 6x6 matrix.
double min_eigenvalue(const Mat6& m);

namespace detail {
template <typename T>
bool is_finite(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}
}  // namespace detail

/// One classical fourth-order Runge-Kutta step of dy/dt = rhs(t, y).
/// Throws StepDiverged if any component of the result is not finite.
template <typename T, std::size_t N, typename Rhs>
std::array<T, N> rk4_step(Rhs&& rhs, const std::array<T, N>& y, double t, double dt) {
  std::array<T, N> tmp;
  const double half = 0.5 * dt;

  const std::array<T, N> k1 = rhs(t, y);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + half * k1[i];
  const std::array<T, N> k2 = rhs(t + half, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + half * k2[i];
  const std::array<T, N> k3 = rhs(t + half, tmp);
  for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + dt * k3[i];
  const std::array<T, N> k4 = rhs(t + dt, tmp);

  std::array<T, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (!detail::is_finite(out[i]))
      throw StepDiverged("non-finite state at t = " + std::to_string(t + dt) +
                         " (component " + std::to_string(i) + ")");
  }
  return out;
}

/// Jointly integrates the mean field and the fluctuation covariance
/// dC/dt = M C + C M^T + D from t = 0 to config.t_final.
///
/// Records are emitted at t = 0, every `decimation` steps, and at the last
/// step. Throws RangeError on a bad config and StepDiverged if the
/// integration blows up.
Trajectory propagate(const ScenarioConfig& config);

}  // namespace magsync
