#pragma once

#include <Eigen/Core>

#include "magsync/model.hpp"

namespace magsync {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Quadrature index order used by every 6-vector and 6x6 matrix:
/// (dq1, dp1, dq2, dp2, dx, dy).
namespace quad {
inline constexpr int q1 = 0, p1 = 1, q2 = 2, p2 = 3, x = 4, y = 5;
inline constexpr int magnon_q(int mode) { return 2 * mode; }
inline constexpr int cavity_q = 4;
}  // namespace quad

struct DriftMatrix {
  Mat6 m = Mat6::Zero();
  double t = 0.0;
};

/// Which occupancy the cavity bath carries in the diffusion matrix.
/// `thermal` uses nbar_m for the cavity too; `vacuum` uses zero.
enum class CavityBath { thermal, vacuum };

/// D = diag(v1, v1, v2, v2, v3, v3).
struct DiffusionMatrix {
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;

  Mat6 as_matrix() const;
  Vec6 diagonal() const;
};

struct MeanQuadratures {
  double q1 = 0.0, p1 = 0.0;
  double q2 = 0.0, p2 = 0.0;
  double x = 0.0, y = 0.0;
};

/// Real 2x2 block for  db/dt = X c + Y c^dag,  acting on (q_c, p_c).
Eigen::Matrix2d quadrature_block(cplx X, cplx Y);

DriftMatrix drift_matrix(const CoefficientSet& coeffs);

DiffusionMatrix diffusion_matrix(const SystemParams& params,
                                 CavityBath cavity_bath = CavityBath::thermal);

MeanQuadratures mean_quadratures(const MeanFieldState& state);

/// Drive vector of the fluctuation first moments, in quadrature form.
Vec6 drive_vector(const CoefficientSet& coeffs);

}  // namespace magsync
