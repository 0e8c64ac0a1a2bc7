#pragma once

#include <span>

#include "magsync/quadrature.hpp"

namespace magsync {

/// Classical synchronization of the mean quadratures.
///
/// eps_c is the mean-square quadrature difference and s_c its reciprocal;
/// s_c is +infinity when the two modes coincide exactly.
struct ClassicalSync {
  double eps_c = 0.0;
  double s_c = 0.0;
};

struct PhaseSample {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi = 0.0;  // phi2 - phi1 wrapped to (-pi, pi]
};

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

ClassicalSync classical_sync(const MeanQuadratures& quads);

/// Full-quadrant limit-cycle phases of both magnons.
/// Throws PhaseUndefined if either mode sits at the origin.
PhaseSample limit_cycle_phase(const MeanQuadratures& quads);

/// Phase-rotated quantum synchronization from the covariance matrix.
/// With phi = 0 this is the unrotated measure.
/// Throws DenominatorNonpositive for an unphysical covariance.
double quantum_sync_phi(const Mat6& cov, double phi);

/// Mean of the samples whose time lies in the last `window_fraction` of the
/// series' time span. Throws EmptyWindow if nothing falls inside.
double time_average(std::span<const TimedValue> series, double window_fraction);

/// Median over the same window as time_average.
double tail_median(std::span<const TimedValue> series, double window_fraction);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace magsync
