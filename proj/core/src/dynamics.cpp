#include "magsync/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace magsync {

namespace {

// Layout of the stacked real state vector.
constexpr std::size_t kMeanOffset = 0;   // Re/Im of alpha1, alpha2, beta
constexpr std::size_t kCovOffset = 6;    // packed covariance
constexpr std::size_t kFluctOffset = kCovOffset + kPackedCovarianceSize;
constexpr std::size_t kStateSize = kFluctOffset + 6;

using State = std::array<double, kStateSize>;

MeanFieldState unpack_mean(const State& y, double t) {
  MeanFieldState s;
  s.alpha[0] = {y[kMeanOffset + 0], y[kMeanOffset + 1]};
  s.alpha[1] = {y[kMeanOffset + 2], y[kMeanOffset + 3]};
  s.beta = {y[kMeanOffset + 4], y[kMeanOffset + 5]};
  s.t = t;
  return s;
}

void store_mean(State& y, const MeanFieldDrift& d) {
  y[kMeanOffset + 0] = d.dalpha[0].real();
  y[kMeanOffset + 1] = d.dalpha[0].imag();
  y[kMeanOffset + 2] = d.dalpha[1].real();
  y[kMeanOffset + 3] = d.dalpha[1].imag();
  y[kMeanOffset + 4] = d.dbeta.real();
  y[kMeanOffset + 5] = d.dbeta.imag();
}

class JointRhs {
 public:
  JointRhs(const ScenarioConfig& config)
      : params_(config.params),
        diffusion_(diffusion_matrix(config.params, config.cavity_bath).diagonal()),
        with_drive_(config.include_fluctuation_drive) {}

  State operator()(double t, const State& y) {
    const LinearizedPoint lin = linearize(params_, unpack_mean(y, t));
    max_kerr_ = std::max(max_kerr_, lin.kerr_correction);
    const Mat6 m = drift_matrix(lin.coeffs).m;

    State dy{};
    store_mean(dy, lin.drift);

    const Mat6 c = unpack_upper(y.data() + kCovOffset);
    const Mat6 mc = m * c;
    std::size_t k = kCovOffset;
    for (int i = 0; i < 6; ++i) {
      dy[k++] = 2.0 * mc(i, i) + diffusion_[i];
      for (int j = i + 1; j < 6; ++j) dy[k++] = mc(i, j) + mc(j, i);
    }

    if (with_drive_) {
      const Eigen::Map<const Vec6> fluct(y.data() + kFluctOffset);
      const Vec6 d = m * fluct + drive_vector(lin.coeffs);
      std::copy(d.data(), d.data() + 6, dy.begin() + kFluctOffset);
    }
    return dy;
  }

  double max_kerr_correction() const { return max_kerr_; }

 private:
  SystemParams params_;
  Vec6 diffusion_;
  bool with_drive_;
  double max_kerr_ = 0.0;
};

TrajectoryRecord make_record(const State& y, double t) {
  TrajectoryRecord r;
  r.t = t;
  r.quads = mean_quadratures(unpack_mean(y, t));
  r.covariance = unpack_upper(y.data() + kCovOffset);
  r.classical = classical_sync(r.quads);
  double phi = 0.0;
  try {
    r.phase = limit_cycle_phase(r.quads);
    phi = r.phase.phi;
  } catch (const PhaseUndefined&) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    r.phase = {nan, nan, nan};
  }
  r.s_q_phi = quantum_sync_phi(r.covariance, phi);
  r.fluctuation_mean = Eigen::Map<const Vec6>(y.data() + kFluctOffset);
  return r;
}

}  // namespace

std::array<double, kPackedCovarianceSize> pack_upper(const Mat6& m) {
  std::array<double, kPackedCovarianceSize> out{};
  std::size_t k = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) out[k++] = m(i, j);
  return out;
}

Mat6 unpack_upper(const double* packed) {
  Mat6 m;
  for (int i = 0; i < 6; ++i) {
    m(i, i) = *packed++;
    for (int j = i + 1; j < 6; ++j) m(i, j) = m(j, i) = *packed++;
  }
  return m;
}

double min_eigenvalue(const Mat6& m) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void ScenarioConfig::validate() const {
  params.validate();
  if (!std::isfinite(dt) || !(dt > 0.0)) throw RangeError("dt", "must be > 0");
  if (!std::isfinite(t_final) || !(t_final > dt))
    throw RangeError("t_final", "must exceed dt");
  if (decimation < 1) throw RangeError("decimation", "must be >= 1");
  if (!(averaging_window_fraction > 0.0 && averaging_window_fraction <= 1.0))
    throw RangeError("averaging_window_fraction", "must lie in (0, 1]");
  for (int i = 0; i < 2; ++i)
    if (!detail::is_finite(init_alpha[i]))
      throw RangeError(i == 0 ? "init_alpha1" : "init_alpha2", "must be finite");
  if (!detail::is_finite(init_beta)) throw RangeError("init_beta", "must be finite");
  if (init_cov == CovarianceInit::explicit_matrix) {
    if (!init_cov_matrix.allFinite())
      throw RangeError("init_cov_matrix", "must be finite");
    if (init_cov_matrix != init_cov_matrix.transpose())
      throw RangeError("init_cov_matrix", "must be symmetric");
  }
}

Mat6 ScenarioConfig::initial_covariance() const {
  switch (init_cov) {
    case CovarianceInit::thermal_magnon: {
      Vec6 d;
      const double n = params.nbarM + 0.5;
      d << n, n, n, n, 0.5, 0.5;
      return d.asDiagonal();
    }
    case CovarianceInit::uniform_vacuum:
      return Mat6::Identity() * 0.5;
    case CovarianceInit::explicit_matrix:
      return init_cov_matrix;
  }
  return init_cov_matrix;
}

Trajectory propagate(const ScenarioConfig& config) {
  config.validate();

  State y{};
  y[kMeanOffset + 0] = config.init_alpha[0].real();
  y[kMeanOffset + 1] = config.init_alpha[0].imag();
  y[kMeanOffset + 2] = config.init_alpha[1].real();
  y[kMeanOffset + 3] = config.init_alpha[1].imag();
  y[kMeanOffset + 4] = config.init_beta.real();
  y[kMeanOffset + 5] = config.init_beta.imag();
  const auto c0 = pack_upper(config.initial_covariance());
  std::copy(c0.begin(), c0.end(), y.begin() + kCovOffset);

  const long steps = std::max(1L, std::lround(config.t_final / config.dt));
  JointRhs rhs(config);

  Trajectory out;
  out.records.reserve(static_cast<std::size_t>(steps / config.decimation + 2));
  out.records.push_back(make_record(y, 0.0));

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * config.dt;
    y = rk4_step(rhs, y, t, config.dt);
    const long done = k + 1;
    if (done % config.decimation == 0 || done == steps)
      out.records.push_back(make_record(y, static_cast<double>(done) * config.dt));
  }

  out.max_kerr_correction = rhs.max_kerr_correction();
  out.min_eigen_ratio = std::numeric_limits<double>::infinity();
  for (const auto& r : out.records)
    out.min_eigen_ratio =
        std::min(out.min_eigen_ratio, min_eigenvalue(r.covariance) / r.covariance.trace());
  return out;
}

}  // namespace magsync
