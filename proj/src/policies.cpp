#include "dtrp/policies.hpp"

#include "dtrp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dtrp {

namespace {

constexpr double kPi = std::numbers::pi;

// Stations and team locations depend only on the instance, not on the run
// seed, so repeated runs agree on geometry while their drawn headings differ.
constexpr std::uint64_t kCanonicalPlacementSeed = 0;

double draw_heading(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return kPi - 2.0 * kPi * u(rng);  // in (-pi, pi]
}

}  // namespace

std::size_t nearest_index(std::span<const Vec2> points, const Vec2& q) {
  if (points.empty()) {
    throw std::invalid_argument("nearest_index on an empty point set");
  }
  std::size_t best = 0;
  double best_d = (points[0] - q).squaredNorm();
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double d = (points[i] - q).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// ------------------------------------------------------------- stationing

MSPolicy ms_build(std::size_t m, const RobotModel& model,
                  const Environment& env, std::uint64_t seed) {
  std::visit([](const auto& p) { validate(p); }, model);
  MSPolicy pol;
  pol.model = model;
  pol.median = lloyd_median_descent(m, env, kCanonicalPlacementSeed);
  pol.stations = pol.median.points;
  if (std::holds_alternative<DDParams>(model)) {
    auto rng = make_engine(derive_seed(seed, "stationing-headings", m));
    pol.headings.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      pol.headings.push_back(draw_heading(rng));
    }
  }
  return pol;
}

double ms_wait_time(const MSPolicy& policy, const Vec2& q) {
  const std::size_t i = nearest_index(policy.stations, q);
  if (const auto* di = std::get_if<DIParams>(&policy.model)) {
    return di_time_from_rest((q - policy.stations[i]).norm(), *di);
  }
  const auto& dd = std::get<DDParams>(policy.model);
  return dd_travel_time(DDState{policy.stations[i], policy.headings[i]}, q,
                        dd);
}

// --------------------------------------------------------- strip loitering

double sl_loiter_speed(const DIParams& params, double area) {
  validate(params);
  if (!(area > 0.0)) {
    throw std::invalid_argument("area must be positive");
  }
  return std::min(params.v_max,
                  std::sqrt(std::sqrt(area) * params.u_max) / 3.22);
}

double sl_strip_width(std::size_t m, double area, double turn_radius) {
  if (m == 0 || !(area > 0.0) || !(turn_radius > 0.0)) {
    throw std::invalid_argument("invalid strip-width arguments");
  }
  const double sweep =
      std::pow(4.0 / (3.0 * std::sqrt(turn_radius)) *
                   (area + 10.38 * turn_radius * std::sqrt(area)) /
                   static_cast<double>(m),
               2.0 / 3.0);
  return std::min(sweep, 2.0 * turn_radius);
}

double sl_departure_arc_length(double delta, double turn_radius) {
  if (!(turn_radius > 0.0)) {
    throw std::invalid_argument("turn radius must be positive");
  }
  if (!(delta >= 0.0) || delta > turn_radius * (1.0 + 1e-12)) {
    throw std::domain_error(
        "lateral offset outside [0, turn radius] for the departure arc");
  }
  const double ratio = std::min(delta / (2.0 * turn_radius), 1.0);
  return 2.0 * turn_radius * std::asin(std::sqrt(ratio));
}

SLPolicy sl_build(std::size_t m, const DIParams& params,
                  const Environment& env) {
  validate(params);
  if (m == 0) {
    throw std::invalid_argument("robot count must be positive");
  }
  const AABB& bb = env.bbox();
  const double width = bb.width();
  const double height = bb.height();
  const double area = env.area();
  if (env.boundary.vertices().size() != 4 ||
      std::abs(width * height - area) > 1e-9 * area ||
      std::abs(width - height) > 1e-9 * std::max(width, height)) {
    throw std::invalid_argument(
        "strip loitering requires an axis-aligned square environment");
  }

  SLPolicy pol;
  pol.params = params;
  pol.robot_count = m;
  pol.loiter_speed = sl_loiter_speed(params, area);
  pol.turn_radius = pol.loiter_speed * pol.loiter_speed / params.u_max;
  pol.strip_width = sl_strip_width(m, area, pol.turn_radius);
  pol.n_strips = static_cast<std::size_t>(std::ceil(width / pol.strip_width));
  pol.x0 = bb.lo.x();
  pol.x1 = bb.hi.x();
  pol.strip_y.reserve(pol.n_strips);
  for (std::size_t i = 0; i < pol.n_strips; ++i) {
    pol.strip_y.push_back(bb.hi.y() -
                          (static_cast<double>(i) + 0.5) * pol.strip_width);
  }

  // U-turn bulb between adjacent strips: a turn of pi + gamma one way and
  // gamma back, displacing the tour by one strip width; gamma = 0 when the
  // strip width equals the full turning diameter.
  const double cos_gamma =
      std::clamp(pol.strip_width / (2.0 * pol.turn_radius), 0.0, 1.0);
  const double gamma = std::acos(cos_gamma);
  const double uturn = pol.turn_radius * (kPi + 2.0 * gamma);

  pol.strip_total = static_cast<double>(pol.n_strips) * width;
  pol.uturn_total = static_cast<double>(pol.n_strips - 1) * uturn;

  const bool last_rightward = (pol.n_strips % 2 == 1);
  const Pose tour_end{
      Vec2{last_rightward ? pol.x1 : pol.x0, pol.strip_y.back()},
      last_rightward ? 0.0 : kPi};
  const Pose tour_start{Vec2{pol.x0, pol.strip_y.front()}, 0.0};
  pol.closure_length =
      dubins_shortest_path_length(tour_end, tour_start, pol.turn_radius);
  pol.path_length = pol.strip_total + pol.uturn_total + pol.closure_length;
  return pol;
}

double sl_wait_time(const SLPolicy& policy, const Vec2& q,
                    std::mt19937_64& rng) {
  const double w = policy.strip_width;
  const double top = policy.strip_y.front();
  const double raw = std::round((top - q.y()) / w);
  const auto idx = static_cast<std::size_t>(std::clamp(
      raw, 0.0, static_cast<double>(policy.n_strips - 1)));
  const double delta = std::abs(q.y() - policy.strip_y[idx]);
  const double depart = sl_departure_arc_length(delta, policy.turn_radius);
  std::uniform_real_distribution<double> gap(
      0.0, policy.path_length / static_cast<double>(policy.robot_count));
  return (gap(rng) + depart) / policy.loiter_speed;
}

// --------------------------------------------------------- multi-cone teams

std::size_t mc_team_size(std::size_t m, const DDParams& params, double area) {
  validate(params);
  if (m == 0) {
    throw std::invalid_argument("robot count must be positive");
  }
  if (!(area > 0.0) || !std::isfinite(area)) {
    throw std::invalid_argument("area must be positive and finite");
  }
  return static_cast<std::size_t>(
      std::ceil(4.09 * std::pow(params.rho / std::sqrt(area), 2.0 / 3.0) *
                std::cbrt(static_cast<double>(m))));
}

MCPolicy mc_build(std::size_t m, const DDParams& params,
                  const Environment& env, std::uint64_t seed) {
  validate(params);
  if (m == 0) {
    throw std::invalid_argument("robot count must be positive");
  }
  const double area = env.area();
  MCPolicy pol;
  pol.params = params;
  pol.robot_count = m;
  pol.team_size = mc_team_size(m, params, area);

  std::size_t n_teams = 0;
  if (m < pol.team_size) {
    pol.single_team = true;
    n_teams = 1;
    pol.team_sizes.assign(1, m);
  } else {
    n_teams = m / pol.team_size;
    pol.team_sizes.assign(n_teams, pol.team_size);
    pol.team_sizes[0] += m - n_teams * pol.team_size;
  }

  pol.median = lloyd_median_descent(n_teams, env, kCanonicalPlacementSeed);
  pol.team_locations = pol.median.points;

  auto rng = make_engine(derive_seed(seed, "cone-headings", m));
  pol.base_headings.reserve(n_teams);
  for (std::size_t j = 0; j < n_teams; ++j) {
    pol.base_headings.push_back(draw_heading(rng));
  }
  return pol;
}

double mc_robot_heading(const MCPolicy& policy, std::size_t team,
                        std::size_t robot) {
  return policy.base_headings[team] +
         static_cast<double>(robot) * kPi /
             static_cast<double>(policy.team_sizes[team]);
}

double mc_wait_time(const MCPolicy& policy, const Vec2& q) {
  const std::size_t j = nearest_index(policy.team_locations, q);
  const Vec2 delta = q - policy.team_locations[j];
  const double d = delta.norm();
  if (d == 0.0) {
    return 0.0;
  }
  const double bearing = std::atan2(delta.y(), delta.x());
  const std::size_t members = policy.team_sizes[j];
  double best_fold = dd_heading_fold(bearing - mc_robot_heading(policy, j, 0));
  for (std::size_t r = 1; r < members; ++r) {
    const double fold =
        dd_heading_fold(bearing - mc_robot_heading(policy, j, r));
    if (fold < best_fold) {
      best_fold = fold;
    }
  }
  return (policy.params.rho * best_fold + d) / policy.params.w_max;
}

// ------------------------------------------------------------------ variant

double wait_time(const Policy& policy, const Vec2& q, std::mt19937_64& rng) {
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MSPolicy>) {
          return ms_wait_time(p, q);
        } else if constexpr (std::is_same_v<T, SLPolicy>) {
          return sl_wait_time(p, q, rng);
        } else {
          return mc_wait_time(p, q);
        }
      },
      policy);
}

std::string_view policy_label(const Policy& policy) {
  return std::visit(
      [](const auto& p) -> std::string_view {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MSPolicy>) {
          (void)p;
          return "ms";
        } else if constexpr (std::is_same_v<T, SLPolicy>) {
          (void)p;
          return "sl";
        } else {
          (void)p;
          return "mc";
        }
      },
      policy);
}

std::size_t policy_robot_count(const Policy& policy) {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MSPolicy>) {
          return p.stations.size();
        } else {
          return p.robot_count;
        }
      },
      policy);
}

}  // namespace dtrp
