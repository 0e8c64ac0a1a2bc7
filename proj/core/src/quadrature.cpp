#include "magsync/quadrature.hpp"

#include <cmath>

namespace magsync {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

Eigen::Matrix2d quadrature_block(cplx X, cplx Y) {
  const cplx sum = X + Y;
  const cplx diff = X - Y;
  Eigen::Matrix2d b;
  b << sum.real(), -diff.imag(),
       sum.imag(), diff.real();
  return b;
}

DriftMatrix drift_matrix(const CoefficientSet& coeffs) {
  DriftMatrix out;
  out.t = coeffs.t;
  Mat6& m = out.m;
  const int c = quad::cavity_q;
  for (int i = 0; i < 2; ++i) {
    const int r = quad::magnon_q(i);
    const MagnonCoefficients& mc = coeffs.magnon[i];
    m.block<2, 2>(r, r) = quadrature_block(mc.self, mc.self_conj);
    m.block<2, 2>(r, c) = quadrature_block(mc.from_cavity, mc.from_cavity_conj);
    m.block<2, 2>(c, r) = quadrature_block(mc.to_cavity, mc.to_cavity_conj);
  }
  m.block<2, 2>(c, c) = quadrature_block(coeffs.cavity_self, cplx{});
  return out;
}

Mat6 DiffusionMatrix::as_matrix() const { return diagonal().asDiagonal(); }

Vec6 DiffusionMatrix::diagonal() const {
  Vec6 d;
  d << v1, v1, v2, v2, v3, v3;
  return d;
}

DiffusionMatrix diffusion_matrix(const SystemParams& params, CavityBath cavity_bath) {
  const double occ = params.nbarM + 0.5;
  const double cavity_occ = cavity_bath == CavityBath::thermal ? occ : 0.5;
  return {params.gamma1 * occ, params.gamma2 * occ, params.gammaC * cavity_occ};
}

MeanQuadratures mean_quadratures(const MeanFieldState& state) {
  return {kSqrt2 * state.alpha[0].real(), kSqrt2 * state.alpha[0].imag(),
          kSqrt2 * state.alpha[1].real(), kSqrt2 * state.alpha[1].imag(),
          kSqrt2 * state.beta.real(),     kSqrt2 * state.beta.imag()};
}

Vec6 drive_vector(const CoefficientSet& coeffs) {
  // dm = (dq + i dp) / sqrt(2), so a drive F on dm shifts (dq, dp) by sqrt(2) F.
  Vec6 f;
  const cplx f1 = kSqrt2 * coeffs.magnon[0].drive;
  const cplx f2 = kSqrt2 * coeffs.magnon[1].drive;
  const cplx f3 = kSqrt2 * coeffs.cavity_drive;
  f << f1.real(), f1.imag(), f2.real(), f2.imag(), f3.real(), f3.imag();
  return f;
}

}  // namespace magsync
