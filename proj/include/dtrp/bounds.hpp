#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dtrp/dynamics.hpp"
#include "dtrp/geometry.hpp"

namespace dtrp {

// Closed-form bounds on the steady-state wait time of the light-load
// coverage policies.  Values flagged `asymptotic` are leading-order terms
// that hold in the large-fleet limit and are reported for comparison only;
// `exact` values hold for every fleet size at the stated inputs.

enum class BoundKind { exact, asymptotic };

/// Finite-fleet expression of a policy bound together with its leading
/// large-fleet term.
struct AsymptoticBound {
  double finite_m = 0.0;
  double asymptotic = 0.0;
};

/// Universal lower bound: no policy can beat covering the optimal mean
/// distance at top speed.  `mean_distance` is the caller's mean-distance
/// value for the fleet size of interest; pass the analytic lower bound
/// (weber_bounds(m, env).lower) to keep the result a true lower bound, or a
/// realized placement's value to bound that placement.
double wait_lower_mean_distance(const RobotModel& model, double mean_distance);

/// Asymptotic lower bound on the wait of any policy, decaying as m^{-1/3}.
/// Derived from the area every robot can reach shortly after starting from
/// rest (or from an unknown heading), so it holds regardless of strategy.
double wait_lower_asymptotic(const RobotModel& model, std::size_t m,
                             const Environment& env);

/// Upper bound on the wait of the median-stationing policy given the mean
/// distance of its stations: travel distance at top speed plus the cost of
/// starting from rest (acceleration-limited robots) or of the worst
/// heading correction (differential-drive robots).
double ms_wait_upper(const RobotModel& model, double mean_distance,
                     const Environment& env);

/// Lower bound on the wait of stationing policies for dense fleets: an
/// m^{-1/4} floor for acceleration-limited robots, and an m-independent
/// turn-radius plateau for differential-drive robots.
double ms_dense_wait_lower(const RobotModel& model, std::size_t m,
                           const Environment& env);

/// Upper bound on the wait of the strip-loitering policy for
/// acceleration-limited robots: the full finite-m expression evaluated at
/// the policy's strip width, and the leading m^{-1/3} term.
AsymptoticBound sl_wait_upper(std::size_t m, const DIParams& params,
                              const Environment& env);

/// Upper bound on the wait of the fanned-heading team policy for
/// differential-drive robots: the finite-m expression at the policy's
/// integer team size, and the leading m^{-1/3} term.
AsymptoticBound mc_wait_upper(std::size_t m, const DDParams& params,
                              const Environment& env);

struct BoundReport {
  std::string name;
  std::string model;  // "di" or "dd"
  std::size_t m = 0;
  double value = 0.0;
  BoundKind kind = BoundKind::exact;
};

const char* to_string(BoundKind kind);

/// Every bound applicable to `model` at fleet size `m`, using
/// `mean_distance` wherever a mean-distance estimate is required.
std::vector<BoundReport> collect_bounds(const RobotModel& model, std::size_t m,
                                        const Environment& env,
                                        double mean_distance);

}  // namespace dtrp
