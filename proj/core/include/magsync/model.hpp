#pragma once

#include <array>
#include <complex>

namespace magsync {

using cplx = std::complex<double>;

/// Physical constants of two Kerr magnon modes coupled through one driven
/// cavity mode. Everything is expressed in units of the first magnon drive
/// amplitude, so Omega1 = 1 in all shipped presets.
struct SystemParams {
  double g1 = 0.0, g2 = 0.0;          // magnon-cavity couplings
  double K1 = 0.0, K2 = 0.0;          // Kerr coefficients
  double Omega1 = 0.0, Omega2 = 0.0;  // magnon drive amplitudes
  double OmegaC = 0.0;                // cavity drive amplitude
  double Delta1 = 0.0, Delta2 = 0.0;  // magnon detunings from their drives
  double DeltaC = 0.0;                // cavity detuning from its drive
  double gamma1 = 0.1, gamma2 = 0.1;  // magnon damping rates
  double gammaC = 0.1;                // cavity damping rate
  double nbarM = 0.0;                 // thermal occupancy of the magnon bath

  /// Throws RangeError naming the first offending field.
  void validate() const;

  double coupling(int mode) const { return mode == 0 ? g1 : g2; }
  double kerr(int mode) const { return mode == 0 ? K1 : K2; }
  double drive(int mode) const { return mode == 0 ? Omega1 : Omega2; }
  double detuning(int mode) const { return mode == 0 ? Delta1 : Delta2; }
  double damping(int mode) const { return mode == 0 ? gamma1 : gamma2; }

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

/// Mean amplitudes of the two magnons and the cavity at time t.
struct MeanFieldState {
  std::array<cplx, 2> alpha{};
  cplx beta{};
  double t = 0.0;

  friend bool operator==(const MeanFieldState&, const MeanFieldState&) = default;
};

/// Rotating-frame phase rates of each magnon.
///
/// The magnon-cavity exchange term rotates as exp(i t (coupling - kerr_shift))
/// and the magnon drive as exp(i t (drive + kerr_shift)). kerr_shift is the
/// symmetric-ordered Kerr frequency K (m^dag m + m m^dag) taken at the mean
/// field, i.e. K (2 |alpha|^2 + 1).
struct FramePhases {
  std::array<double, 2> coupling{};    // DeltaC - Delta_i
  std::array<double, 2> kerr_shift{};  // K_i (2 |alpha_i|^2 + 1)
  std::array<double, 2> drive{};       // Delta_i
};

struct MeanFieldDrift {
  std::array<cplx, 2> dalpha{};
  cplx dbeta{};
};

/// Linearization of one magnon equation and its back-action on the cavity.
///
///   d(dm)/dt = self dm + self_conj dm^dag + from_cavity da
///              + from_cavity_conj da^dag + drive + noise
///   d(da)/dt gets  to_cavity dm + to_cavity_conj dm^dag  from this magnon.
struct MagnonCoefficients {
  cplx self{};
  cplx self_conj{};
  cplx from_cavity{};
  cplx from_cavity_conj{};
  cplx to_cavity{};
  cplx to_cavity_conj{};
  cplx drive{};
};

/// Linearized fluctuation coefficients at one instant.
struct CoefficientSet {
  std::array<MagnonCoefficients, 2> magnon{};
  cplx cavity_self{};   // always -gammaC / 2
  cplx cavity_drive{};
  double t = 0.0;
};

/// Secular Kerr factor 2 i K t.
cplx kerr_secular_factor(double K, double t);

FramePhases frame_phases(const SystemParams& params, const MeanFieldState& state);

/// Noise-free right-hand side of the mean-field equations.
MeanFieldDrift mean_field_drift(const SystemParams& params, const MeanFieldState& state);

CoefficientSet linearization_coefficients(const SystemParams& params,
                                          const MeanFieldState& state);

/// Drift and coefficients from one shared evaluation of the frame phasors.
/// This is what the integrator calls at every substage.
struct LinearizedPoint {
  MeanFieldDrift drift;
  CoefficientSet coeffs;
  /// max_i |A_i| |alpha_i|^2, the size of the leading Kerr correction.
  double kerr_correction = 0.0;
};

LinearizedPoint linearize(const SystemParams& params, const MeanFieldState& state);

}  // namespace magsync
