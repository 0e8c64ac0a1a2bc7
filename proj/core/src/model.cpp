#include "magsync/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magsync/errors.hpp"

namespace magsync {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_finite(const char* key, double v) {
  if (!std::isfinite(v)) throw RangeError(key, "must be finite");
}

void require_positive(const char* key, double v) {
  require_finite(key, v);
  if (!(v > 0.0)) throw RangeError(key, "must be > 0");
}

// Everything a single magnon needs, evaluated once per state.
struct ModePhasors {
  cplx A;               // 2 i K t
  double occupation;    // |alpha|^2
  cplx exchange;        // exp(i t (B - C))
  cplx drive;           // exp(i t (D + C))
};

ModePhasors mode_phasors(const SystemParams& p, const MeanFieldState& s, int i) {
  const double n = std::norm(s.alpha[i]);
  const double kerr_shift = p.kerr(i) * (2.0 * n + 1.0);
  const double coupling = p.DeltaC - p.detuning(i);
  return {kerr_secular_factor(p.kerr(i), s.t), n,
          std::polar(1.0, s.t * (coupling - kerr_shift)),
          std::polar(1.0, s.t * (p.detuning(i) + kerr_shift))};
}

cplx magnon_drift(const SystemParams& p, const MeanFieldState& s, int i,
                  const ModePhasors& ph) {
  const cplx a = s.alpha[i];
  const cplx b = s.beta;
  const double g = p.coupling(i);
  const double W = p.drive(i);
  const cplx ex_c = std::conj(ph.exchange);
  const cplx dr_c = std::conj(ph.drive);

  const cplx bracket = g * std::conj(b) * ph.A * ph.exchange * a * a
                       - W * ph.drive
                       - W * std::conj(a) * ph.A * ph.drive * a
                       - g * ex_c * b
                       - g * ph.occupation * b * ph.A * ex_c
                       + W * ph.A * dr_c * a * a;
  return -0.5 * p.damping(i) * a + kI * bracket;
}

MagnonCoefficients magnon_coefficients(const SystemParams& p, const MeanFieldState& s,
                                       int i, const ModePhasors& ph) {
  const cplx a = s.alpha[i];
  const cplx ac = std::conj(a);
  const cplx b = s.beta;
  const cplx bc = std::conj(b);
  const double g = p.coupling(i);
  const double W = p.drive(i);
  const cplx A = ph.A;
  const double n = ph.occupation;
  const cplx An = A * n;
  const cplx ex = ph.exchange;
  const cplx ex_c = std::conj(ex);
  const cplx dr = ph.drive;
  const cplx dr_c = std::conj(dr);
  const cplx a3 = a * a * a;

  MagnonCoefficients c;
  c.self = -0.5 * p.damping(i)
           + kI * (A * g * a * bc * (2.0 - An) * ex
                   - A * W * ac * dr
                   - g * A * ac * b * ex_c
                   - A * W * ac * dr * (1.0 + An)
                   + A * W * a * dr_c * (2.0 - An)
                   - A * g * ac * b * ex_c * (1.0 + An));
  // The leading A^2 term carries the exchange phasor like its siblings. It
  // only matters at O(A^2); the Jacobian test at strong Kerr pins it.
  c.self_conj = kI * (-A * A * g * a3 * bc * ex
                      - A * W * a * dr
                      - A * g * a * b * ex_c
                      - A * W * a * (1.0 + An) * dr
                      - A * A * W * a3 * dr_c
                      - A * g * a * b * (1.0 + An) * ex_c);
  c.from_cavity = -kI * g * (1.0 + An) * ex_c;
  c.from_cavity_conj = kI * g * A * a * a * ex;
  c.to_cavity = -kI * g * (1.0 - An) * ex;
  c.to_cavity_conj = kI * A * g * a * a * ex;
  c.drive = kI * (A * g * a * a * bc * ex
                  - W * dr
                  - g * b * ex_c
                  - A * W * n * dr
                  + A * W * n * dr_c
                  - A * g * n * b * ex_c);
  return c;
}

}  // namespace

void SystemParams::validate() const {
  require_finite("g1", g1);
  require_finite("g2", g2);
  require_finite("K1", K1);
  require_finite("K2", K2);
  require_finite("Omega1", Omega1);
  require_finite("Omega2", Omega2);
  require_finite("OmegaC", OmegaC);
  require_finite("Delta1", Delta1);
  require_finite("Delta2", Delta2);
  require_finite("DeltaC", DeltaC);
  require_positive("gamma1", gamma1);
  require_positive("gamma2", gamma2);
  require_positive("gammaC", gammaC);
  require_finite("nbar_m", nbarM);
  if (nbarM < 0.0) throw RangeError("nbar_m", "must be >= 0");
}

cplx kerr_secular_factor(double K, double t) { return {0.0, 2.0 * K * t}; }

FramePhases frame_phases(const SystemParams& params, const MeanFieldState& state) {
  FramePhases f;
  for (int i = 0; i < 2; ++i) {
    f.coupling[i] = params.DeltaC - params.detuning(i);
    f.kerr_shift[i] = params.kerr(i) * (2.0 * std::norm(state.alpha[i]) + 1.0);
    f.drive[i] = params.detuning(i);
  }
  return f;
}

MeanFieldDrift mean_field_drift(const SystemParams& params, const MeanFieldState& state) {
  return linearize(params, state).drift;
}

CoefficientSet linearization_coefficients(const SystemParams& params,
                                          const MeanFieldState& state) {
  return linearize(params, state).coeffs;
}

LinearizedPoint linearize(const SystemParams& params, const MeanFieldState& state) {
  LinearizedPoint out;
  const std::array<ModePhasors, 2> ph{mode_phasors(params, state, 0),
                                      mode_phasors(params, state, 1)};
  const cplx cavity_drive_phasor = std::polar(1.0, params.DeltaC * state.t);

  cplx exchange_sum{};
  for (int i = 0; i < 2; ++i) {
    out.drift.dalpha[i] = magnon_drift(params, state, i, ph[i]);
    out.coeffs.magnon[i] = magnon_coefficients(params, state, i, ph[i]);
    exchange_sum += params.coupling(i) * ph[i].exchange * state.alpha[i];
    out.kerr_correction = std::max(out.kerr_correction, std::abs(ph[i].A) * ph[i].occupation);
  }
  out.drift.dbeta = -0.5 * params.gammaC * state.beta - kI * exchange_sum
                    - kI * params.OmegaC * cavity_drive_phasor;

  out.coeffs.cavity_self = -0.5 * params.gammaC;
  // Only the first magnon's exchange term enters the cavity drive, deliberately.
  out.coeffs.cavity_drive =
      -kI * (params.g1 * ph[0].exchange - kI * params.OmegaC * cavity_drive_phasor);
  out.coeffs.t = state.t;
  return out;
}

}  // namespace magsync
