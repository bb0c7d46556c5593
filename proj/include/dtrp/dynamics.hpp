#pragma once

#include "dtrp/geometry.hpp"

#include <array>
#include <variant>
#include <vector>

namespace dtrp {

/// Double-integrator robot: planar acceleration bounded by u_max, speed
/// bounded by v_max.
struct DIParams {
  double v_max = 1.0;
  double u_max = 1.0;
};

/// Differential-drive robot: two wheels at distance rho from the axle
/// midpoint, each wheel speed bounded by w_max.  Body speed is bounded by
/// w_max and turning in place costs rho * angle / w_max.
struct DDParams {
  double rho = 0.1;
  double w_max = 1.0;
};

using RobotModel = std::variant<DIParams, DDParams>;

void validate(const DIParams& p);  // throws std::invalid_argument
void validate(const DDParams& p);

/// State of a differential drive: position and heading in (-pi, pi].
struct DDState {
  Vec2 position{0.0, 0.0};
  double heading = 0.0;
};

/// Pose in the plane, for shortest bounded-curvature paths.
struct Pose {
  Vec2 position{0.0, 0.0};
  double heading = 0.0;
};

/// Minimum time for a double integrator at rest to reach a point at distance
/// d >= 0: accelerate flat out, saturating at v_max when the distance allows.
double di_time_from_rest(double d, const DIParams& p);

/// Fold a raw heading error into [0, pi/2]: the drive may rotate either way
/// and roll either forwards or backwards, so only the folded angle matters.
double dd_heading_fold(double raw_error);

/// Travel time of the rotate-then-roll primitive: turn in place through the
/// folded heading error, then roll straight to the target.
double dd_travel_time(const DDState& from, const Vec2& to, const DDParams& p);

struct AreaBounds {
  double lower = 0.0;
  double upper = 0.0;
  bool valid = true;  // false once t leaves the window where `lower` holds
};

/// Bounds on the area reachable within time t by a double integrator that
/// starts at speed v0 (any maneuver, not just a fixed primitive).  The lower
/// bound holds while t <= (pi/2) v0^2 / u_max.
AreaBounds di_reachable_area_bounds(double v0, double t, const DIParams& p);

/// Bounds on the area reachable within time t by a differential drive.
/// Valid while w_max * t <= rho * pi / 2.
AreaBounds dd_reachable_area_bounds(double t, const DDParams& p);

/// Exact area covered within time t by the rotate-then-roll primitive; equals
/// the reachable-area lower bound while w_max * t <= rho * pi / 2.
double dd_primitive_reachable_area(double t, const DDParams& p);

struct TimeIntegralBound {
  double value = 0.0;
  bool valid = true;
};

/// Lower bound on the integral, over the time-t reachable set, of the minimum
/// time to reach each point, for a double integrator entering at speed v0.
/// Valid while t <= (pi/2) v0^2 / u_max.
TimeIntegralBound di_travel_time_integral(double v0, double t,
                                          const DIParams& p);

/// The same integral bound for a differential drive (no time window).
double dd_travel_time_integral(double t, const DDParams& p);

/// One candidate bounded-curvature path: a word over {'L','R','S'} and the
/// three segment lengths (arc lengths measured along the path).
struct DubinsPath {
  std::array<char, 3> word{{'?', '?', '?'}};
  std::array<double, 3> lengths{{0.0, 0.0, 0.0}};
  double total = 0.0;
};

/// All feasible three-segment candidates between two poses for minimum
/// turning radius rho, sorted by total length (shortest first; never empty).
std::vector<DubinsPath> dubins_path_options(const Pose& a, const Pose& b,
                                            double rho);

/// Length of the shortest bounded-curvature path between two poses.
double dubins_shortest_path_length(const Pose& a, const Pose& b, double rho);

}  // namespace dtrp
