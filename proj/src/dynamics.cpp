#include "dtrp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dtrp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double mod2pi(double x) {
  const double r = std::fmod(x, kTwoPi);
  return r < 0.0 ? r + kTwoPi : r;
}

void require_nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) +
                                " must be finite and non-negative");
  }
}

}  // namespace

void validate(const DIParams& p) {
  if (!(p.v_max > 0.0) || !std::isfinite(p.v_max) || !(p.u_max > 0.0) ||
      !std::isfinite(p.u_max)) {
    throw std::invalid_argument(
        "double-integrator parameters must be finite and positive");
  }
}

void validate(const DDParams& p) {
  if (!(p.rho > 0.0) || !std::isfinite(p.rho) || !(p.w_max > 0.0) ||
      !std::isfinite(p.w_max)) {
    throw std::invalid_argument(
        "differential-drive parameters must be finite and positive");
  }
}

double di_time_from_rest(double d, const DIParams& p) {
  validate(p);
  require_nonnegative(d, "distance");
  const double d_sat = p.v_max * p.v_max / (2.0 * p.u_max);
  if (d <= d_sat) {
    return std::sqrt(2.0 * d / p.u_max);
  }
  return d / p.v_max + p.v_max / (2.0 * p.u_max);
}

double dd_heading_fold(double raw_error) {
  double a = std::abs(std::remainder(raw_error, kTwoPi));
  if (a > kPi / 2.0) {
    a = kPi - a;
  }
  return a;
}

double dd_travel_time(const DDState& from, const Vec2& to,
                      const DDParams& p) {
  validate(p);
  const Vec2 delta = to - from.position;
  const double d = delta.norm();
  if (d == 0.0) {
    return 0.0;
  }
  const double bearing = std::atan2(delta.y(), delta.x());
  const double alpha = dd_heading_fold(bearing - from.heading);
  return (p.rho * alpha + d) / p.w_max;
}

AreaBounds di_reachable_area_bounds(double v0, double t, const DIParams& p) {
  validate(p);
  require_nonnegative(v0, "speed");
  require_nonnegative(t, "time");
  const double u = p.u_max;
  return AreaBounds{
      v0 * u * t * t * t / 3.0,
      2.0 * v0 * u * t * t * t + u * u * t * t * t * t,
      t <= kPi / 2.0 * v0 * v0 / u,
  };
}

AreaBounds dd_reachable_area_bounds(double t, const DDParams& p) {
  validate(p);
  require_nonnegative(t, "time");
  const double wt = p.w_max * t;
  const double cube = wt * wt * wt;
  return AreaBounds{
      2.0 / (3.0 * p.rho) * cube,
      5.0 / (6.0 * p.rho) * cube,
      wt <= p.rho * kPi / 2.0,
  };
}

double dd_primitive_reachable_area(double t, const DDParams& p) {
  validate(p);
  require_nonnegative(t, "time");
  const double wt = p.w_max * t;
  const double alpha_max = std::min(kPi / 2.0, wt / p.rho);
  const double rest = wt - p.rho * alpha_max;
  return 2.0 / (3.0 * p.rho) * (wt * wt * wt - rest * rest * rest);
}

TimeIntegralBound di_travel_time_integral(double v0, double t,
                                          const DIParams& p) {
  validate(p);
  require_nonnegative(v0, "speed");
  require_nonnegative(t, "time");
  return TimeIntegralBound{
      v0 * p.u_max / 12.0 * t * t * t * t,
      t <= kPi / 2.0 * v0 * v0 / p.u_max,
  };
}

double dd_travel_time_integral(double t, const DDParams& p) {
  validate(p);
  require_nonnegative(t, "time");
  const double w = p.w_max;
  return w * w * w / (6.0 * p.rho) * t * t * t * t;
}

namespace {

// Normalised three-segment candidates between (0,0,alpha) and (d,0,beta):
// segment lengths in units of the turning radius.
struct Word {
  std::array<char, 3> word;
  std::array<double, 3> seg;
};

void push_word(std::vector<Word>& out, const char (&w)[4], double t, double p,
               double q) {
  out.push_back(Word{{w[0], w[1], w[2]}, {t, p, q}});
}

std::vector<Word> dubins_words(double alpha, double beta, double d) {
  std::vector<Word> out;
  const double sa = std::sin(alpha);
  const double sb = std::sin(beta);
  const double ca = std::cos(alpha);
  const double cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);

  {  // LSL
    const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sa - sb);
    if (p_sq >= 0.0) {
      const double tmp = std::atan2(cb - ca, d + sa - sb);
      push_word(out, "LSL", mod2pi(-alpha + tmp), std::sqrt(p_sq),
                mod2pi(beta - tmp));
    }
  }
  {  // RSR
    const double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sb - sa);
    if (p_sq >= 0.0) {
      const double tmp = std::atan2(ca - cb, d - sa + sb);
      push_word(out, "RSR", mod2pi(alpha - tmp), std::sqrt(p_sq),
                mod2pi(-beta + tmp));
    }
  }
  {  // LSR
    const double p_sq = -2.0 + d * d + 2.0 * c_ab + 2.0 * d * (sa + sb);
    if (p_sq >= 0.0) {
      const double p = std::sqrt(p_sq);
      const double tmp =
          std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
      push_word(out, "LSR", mod2pi(-alpha + tmp), p, mod2pi(-beta + tmp));
    }
  }
  {  // RSL
    const double p_sq = d * d - 2.0 + 2.0 * c_ab - 2.0 * d * (sa + sb);
    if (p_sq >= 0.0) {
      const double p = std::sqrt(p_sq);
      const double tmp =
          std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
      push_word(out, "RSL", mod2pi(alpha - tmp), p, mod2pi(beta - tmp));
    }
  }
  {  // RLR
    const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
    if (std::abs(tmp) <= 1.0) {
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double t = mod2pi(alpha - std::atan2(ca - cb, d - sa + sb) +
                              mod2pi(p / 2.0));
      push_word(out, "RLR", t, p, mod2pi(alpha - beta - t + mod2pi(p)));
    }
  }
  {  // LRL
    const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
    if (std::abs(tmp) <= 1.0) {
      const double p = mod2pi(kTwoPi - std::acos(tmp));
      const double t = mod2pi(-alpha - std::atan2(ca - cb, d + sa - sb) +
                              p / 2.0);
      push_word(out, "LRL", t, p,
                mod2pi(mod2pi(beta) - alpha - t + mod2pi(p)));
    }
  }
  return out;
}

}  // namespace

std::vector<DubinsPath> dubins_path_options(const Pose& a, const Pose& b,
                                            double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::invalid_argument("turning radius must be finite and positive");
  }
  const Vec2 delta = b.position - a.position;
  const double dist = delta.norm();
  // Coincident poses: the canonical word parameters would wrap a full turn,
  // but the true shortest path is empty.
  if (dist <= 1e-14 * rho &&
      std::abs(std::remainder(b.heading - a.heading, kTwoPi)) <= 1e-14) {
    return {DubinsPath{{'L', 'S', 'L'}, {0.0, 0.0, 0.0}, 0.0}};
  }
  const double theta = std::atan2(delta.y(), delta.x());
  const double alpha = mod2pi(a.heading - theta);
  const double beta = mod2pi(b.heading - theta);
  const auto words = dubins_words(alpha, beta, dist / rho);

  std::vector<DubinsPath> out;
  out.reserve(words.size());
  for (const Word& w : words) {
    DubinsPath path;
    path.word = w.word;
    for (int i = 0; i < 3; ++i) {
      path.lengths[static_cast<std::size_t>(i)] =
          rho * w.seg[static_cast<std::size_t>(i)];
    }
    path.total = path.lengths[0] + path.lengths[1] + path.lengths[2];
    out.push_back(path);
  }
  std::sort(out.begin(), out.end(), [](const DubinsPath& x,
                                       const DubinsPath& y) {
    return x.total < y.total;
  });
  if (out.empty()) {
    throw std::logic_error("no feasible bounded-curvature path");
  }
  return out;
}

double dubins_shortest_path_length(const Pose& a, const Pose& b, double rho) {
  return dubins_path_options(a, b, rho).front().total;
}

}  // namespace dtrp
