#pragma once

#include "dtrp/dynamics.hpp"
#include "dtrp/geometry.hpp"
#include "dtrp/median.hpp"

#include <cstdint>
#include <random>
#include <string_view>
#include <variant>
#include <vector>

namespace dtrp {

/// Index of the closest point to q (strict comparison; the lowest index wins
/// ties).  Throws std::invalid_argument on an empty set.
std::size_t nearest_index(std::span<const Vec2> points, const Vec2& q);

// ---------------------------------------------------------------------------
// Median stationing: one robot parked at each optimised station.  A request
// is served by the station closest to it; a double integrator starts from
// rest, a differential drive starts from its parked heading.

struct MSPolicy {
  RobotModel model;
  std::vector<Vec2> stations;
  std::vector<double> headings;  // differential drive only; empty otherwise
  MedianSolution median;         // descent that produced the stations
};

/// Stations come from the canonical descent (they depend only on m and the
/// environment); parked headings are drawn from the seed.
MSPolicy ms_build(std::size_t m, const RobotModel& model,
                  const Environment& env, std::uint64_t seed);

double ms_wait_time(const MSPolicy& policy, const Vec2& q);

// ---------------------------------------------------------------------------
// Strip loitering (double integrator): the robots circulate along a closed
// serpentine tour of horizontal strips at a reduced loiter speed, so each can
// peel off toward a request without stopping.

struct SLPolicy {
  DIParams params;
  std::size_t robot_count = 0;
  double loiter_speed = 0.0;   // v*, the constant speed along the tour
  double turn_radius = 0.0;    // rho* = v*^2 / u_max
  double strip_width = 0.0;
  std::size_t n_strips = 0;
  std::vector<double> strip_y;  // strip bisector heights, top to bottom
  double x0 = 0.0, x1 = 0.0;    // horizontal strip extent
  double strip_total = 0.0;     // sum of straight segments
  double uturn_total = 0.0;     // sum of U-turn bulbs
  double closure_length = 0.0;  // shortest curvature-bounded return leg
  double path_length = 0.0;     // total closed-tour length
};

/// The environment must be an axis-aligned square.
SLPolicy sl_build(std::size_t m, const DIParams& params,
                  const Environment& env);

/// Loiter speed v* = min(v_max, sqrt(sqrt(A) u_max) / 3.22).
double sl_loiter_speed(const DIParams& params, double area);
/// Strip width: min of the sweep-optimal width and the kinematic cap 2 rho*.
double sl_strip_width(std::size_t m, double area, double turn_radius);

/// Arc length consumed along the tour before the robot leaves toward a
/// target at lateral offset delta from the strip bisector.  Requires
/// 0 <= delta <= rho* (throws std::domain_error otherwise).
double sl_departure_arc_length(double delta, double turn_radius);

/// Wait for a request at q: the distance along the tour to the departure
/// point of the nearest robot (uniform on a tour interval of length
/// path_length / robot_count) plus the departure arc, at the loiter speed.
double sl_wait_time(const SLPolicy& policy, const Vec2& q,
                    std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Multi-cone teams (differential drive): robots are grouped into teams
// parked at shared locations with fanned headings, so some team member is
// always nearly aligned with the request bearing.

struct MCPolicy {
  DDParams params;
  std::size_t robot_count = 0;
  std::size_t team_size = 0;          // k, the nominal robots per team
  bool single_team = false;           // m < k forced one undersized team
  std::vector<Vec2> team_locations;
  std::vector<std::size_t> team_sizes;  // leftovers join the first team
  std::vector<double> base_headings;
  MedianSolution median;
};

/// Team size k = ceil(4.09 (rho / sqrt(A))^(2/3) m^(1/3)): the fan density
/// that balances shrinking per-team cone angles against the growing mean
/// distance of a coarser team grid.
std::size_t mc_team_size(std::size_t m, const DDParams& params, double area);

/// Locations come from the canonical descent for the team count; base
/// headings are drawn from the seed.
MCPolicy mc_build(std::size_t m, const DDParams& params,
                  const Environment& env, std::uint64_t seed);

/// Heading of robot r of team j: base + r pi / team_sizes[j].
double mc_robot_heading(const MCPolicy& policy, std::size_t team,
                        std::size_t robot);

double mc_wait_time(const MCPolicy& policy, const Vec2& q);

// ---------------------------------------------------------------------------

using Policy = std::variant<MSPolicy, SLPolicy, MCPolicy>;

double wait_time(const Policy& policy, const Vec2& q, std::mt19937_64& rng);
std::string_view policy_label(const Policy& policy);
std::size_t policy_robot_count(const Policy& policy);

}  // namespace dtrp
