#include "magsync/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "magsync/errors.hpp"

namespace magsync {

namespace {

constexpr double kPhaseTolerance = 1e-12;

std::vector<double> window_values(std::span<const TimedValue> series, double window_fraction) {
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw RangeError("averaging_window_fraction", "must lie in (0, 1]");
  if (series.empty()) throw EmptyWindow("time series is empty");
  const double t0 = series.front().t;
  const double t1 = series.back().t;
  const double start = t1 - window_fraction * (t1 - t0);
  std::vector<double> vals;
  for (const auto& s : series)
    if (s.t >= start) vals.push_back(s.value);
  if (vals.empty()) throw EmptyWindow("no samples in averaging window");
  return vals;
}

}  // namespace

double wrap_angle(double a) {
  constexpr double pi = std::numbers::pi;
  a = std::remainder(a, 2.0 * pi);  // [-pi, pi]
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

ClassicalSync classical_sync(const MeanQuadratures& quads) {
  const double dq = quads.q1 - quads.q2;
  const double dp = quads.p1 - quads.p2;
  ClassicalSync out;
  out.eps_c = 0.5 * dq * dq + 0.5 * dp * dp;
  out.s_c = out.eps_c == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / out.eps_c;
  return out;
}

PhaseSample limit_cycle_phase(const MeanQuadratures& quads) {
  if (std::hypot(quads.q1, quads.p1) <= kPhaseTolerance)
    throw PhaseUndefined("magnon 1 has no limit-cycle amplitude");
  if (std::hypot(quads.q2, quads.p2) <= kPhaseTolerance)
    throw PhaseUndefined("magnon 2 has no limit-cycle amplitude");
  PhaseSample s;
  s.phi1 = std::atan2(quads.p1, quads.q1);
  s.phi2 = std::atan2(quads.p2, quads.q2);
  s.phi = wrap_angle(s.phi2 - s.phi1);
  return s;
}

double quantum_sync_phi(const Mat6& c, double phi) {
  const double bracket = c(0, 0) + c(1, 1) + c(2, 2) + c(3, 3)
                         + 2.0 * std::sin(phi) * (c(1, 2) - c(0, 3))
                         - 2.0 * std::cos(phi) * (c(0, 2) + c(1, 3));
  if (!(bracket > 0.0))
    throw DenominatorNonpositive("synchronization bracket is not positive");
  return 2.0 / bracket;
}

double time_average(std::span<const TimedValue> series, double window_fraction) {
  const auto vals = window_values(series, window_fraction);
  double sum = 0.0;
  for (double v : vals) sum += v;
  return sum / static_cast<double>(vals.size());
}

double tail_median(std::span<const TimedValue> series, double window_fraction) {
  auto vals = window_values(series, window_fraction);
  const auto mid = vals.size() / 2;
  std::nth_element(vals.begin(), vals.begin() + mid, vals.end());
  const double upper = vals[mid];
  if (vals.size() % 2 == 1) return upper;
  const double lower = *std::max_element(vals.begin(), vals.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace magsync
