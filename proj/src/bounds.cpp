#include "dtrp/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "dtrp/policies.hpp"

namespace dtrp {

namespace {

void check_mean_distance(double mean_distance) {
  if (!(mean_distance >= 0.0) || !std::isfinite(mean_distance)) {
    throw std::invalid_argument("mean distance must be non-negative and finite");
  }
}

void check_fleet_size(std::size_t m) {
  if (m == 0) {
    throw std::invalid_argument("fleet size must be positive");
  }
}

}  // namespace

double wait_lower_mean_distance(const RobotModel& model, double mean_distance) {
  check_mean_distance(mean_distance);
  return std::visit(
      [&](const auto& p) {
        validate(p);
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DIParams>) {
          return mean_distance / p.v_max;
        } else {
          return mean_distance / p.w_max;
        }
      },
      model);
}

double wait_lower_asymptotic(const RobotModel& model, std::size_t m,
                             const Environment& env) {
  check_fleet_size(m);
  const double area = env.area();
  const double m_third = std::cbrt(static_cast<double>(m));
  return std::visit(
      [&](const auto& p) {
        validate(p);
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DIParams>) {
          return std::cbrt(area / (2.0 * p.v_max * p.u_max)) / (24.0 * m_third);
        } else {
          return std::cbrt(6.0 * p.rho * area / 5.0) / (5.0 * p.w_max * m_third);
        }
      },
      model);
}

double ms_wait_upper(const RobotModel& model, double mean_distance,
                     const Environment& env) {
  check_mean_distance(mean_distance);
  const double area = env.area();
  return std::visit(
      [&](const auto& p) {
        validate(p);
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DIParams>) {
          // Travel at top speed, plus the one-time cost of accelerating from
          // rest: v/(2u) once cruising speed is reachable, and the worst-case
          // short-trip term over the environment diameter scale.
          return mean_distance / p.v_max + p.v_max / (2.0 * p.u_max) +
                 std::sqrt(2.0 * std::sqrt(2.0 * area) / p.u_max);
        } else {
          // Drive distance at wheel speed plus the worst heading correction,
          // a quarter turn of the turning circle in place of forward motion.
          return mean_distance / p.w_max +
                 p.rho * std::numbers::pi / (2.0 * p.w_max);
        }
      },
      model);
}

double ms_dense_wait_lower(const RobotModel& model, std::size_t m,
                           const Environment& env) {
  check_fleet_size(m);
  const double area = env.area();
  return std::visit(
      [&](const auto& p) {
        validate(p);
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, DIParams>) {
          return 0.321 * std::pow(area / (p.u_max * p.u_max), 0.25) /
                 std::pow(static_cast<double>(m), 0.25);
        } else {
          // Heading corrections do not average away no matter how dense the
          // stations get: the expected turn cost is a fixed fraction of a
          // quarter turn.
          return std::numbers::pi * p.rho / (4.0 * p.w_max);
        }
      },
      model);
}

AsymptoticBound sl_wait_upper(std::size_t m, const DIParams& params,
                              const Environment& env) {
  check_fleet_size(m);
  validate(params);
  const double area = env.area();
  const double md = static_cast<double>(m);
  const double v_star = sl_loiter_speed(params, area);
  const double rho_star = v_star * v_star / params.u_max;
  const double w = sl_strip_width(m, area, rho_star);
  const double root_a = std::sqrt(area);

  AsymptoticBound out;
  // Mean tour distance to the nearest departure point (strip sweep plus
  // turn-around overhead), plus the mean departure-arc detour, all at the
  // loiter speed.
  out.finite_m = (area + 10.38 * rho_star * root_a) / (2.0 * md * w * v_star) +
                 (2.0 * root_a + 6.19 * rho_star) / (md * v_star) +
                 0.75 * std::sqrt(rho_star * w) / v_star;
  out.asymptotic =
      1.238 *
      std::cbrt(rho_star * area + 10.38 * rho_star * rho_star * root_a) /
      (v_star * std::cbrt(md));
  return out;
}

AsymptoticBound mc_wait_upper(std::size_t m, const DDParams& params,
                              const Environment& env) {
  check_fleet_size(m);
  validate(params);
  const double area = env.area();
  const double md = static_cast<double>(m);
  const double k = static_cast<double>(mc_team_size(m, params, area));

  AsymptoticBound out;
  // Mean distance of a grid of m/k team locations, plus the worst residual
  // heading correction for a fan of k headings.
  out.finite_m = 0.38 * std::sqrt(area * k / md) / params.w_max +
                 std::numbers::pi * params.rho / (2.0 * params.w_max * k);
  out.asymptotic =
      1.15 * std::cbrt(params.rho * area) / (params.w_max * std::cbrt(md));
  return out;
}

const char* to_string(BoundKind kind) {
  return kind == BoundKind::exact ? "exact" : "asymptotic";
}

std::vector<BoundReport> collect_bounds(const RobotModel& model, std::size_t m,
                                        const Environment& env,
                                        double mean_distance) {
  check_fleet_size(m);
  const bool is_di = std::holds_alternative<DIParams>(model);
  const std::string label = is_di ? "di" : "dd";
  std::vector<BoundReport> out;
  auto add = [&](std::string name, double value, BoundKind kind) {
    out.push_back(BoundReport{std::move(name), label, m, value, kind});
  };

  add("wait-lower/mean-distance",
      wait_lower_mean_distance(model, mean_distance), BoundKind::exact);
  add("wait-lower/any-policy", wait_lower_asymptotic(model, m, env),
      BoundKind::asymptotic);
  add("ms-upper", ms_wait_upper(model, mean_distance, env), BoundKind::exact);
  add("ms-dense-lower", ms_dense_wait_lower(model, m, env),
      BoundKind::asymptotic);
  if (is_di) {
    const auto sl = sl_wait_upper(m, std::get<DIParams>(model), env);
    add("sl-upper", sl.finite_m, BoundKind::exact);
    add("sl-upper/leading-term", sl.asymptotic, BoundKind::asymptotic);
  } else {
    const auto mc = mc_wait_upper(m, std::get<DDParams>(model), env);
    add("mc-upper", mc.finite_m, BoundKind::exact);
    add("mc-upper/leading-term", mc.asymptotic, BoundKind::asymptotic);
  }
  return out;
}

}  // namespace dtrp
