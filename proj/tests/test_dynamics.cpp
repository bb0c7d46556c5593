#include "dtrp/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"

namespace {

using dtrp::DDParams;
using dtrp::DDState;
using dtrp::DIParams;
using dtrp::Pose;
using dtrp::Vec2;

constexpr double kPi = std::numbers::pi;

// Follow a three-segment word from pose `a` and return the end pose.
Pose roll_out(const dtrp::DubinsPath& path, const Pose& a, double rho) {
  Pose pose = a;
  for (int k = 0; k < 3; ++k) {
    const double len = path.lengths[static_cast<std::size_t>(k)];
    const char seg = path.word[static_cast<std::size_t>(k)];
    const double theta = pose.heading;
    if (seg == 'S') {
      pose.position += len * Vec2{std::cos(theta), std::sin(theta)};
    } else if (seg == 'L') {
      const double phi = len / rho;
      pose.position += rho * Vec2{std::sin(theta + phi) - std::sin(theta),
                                  std::cos(theta) - std::cos(theta + phi)};
      pose.heading += phi;
    } else {
      const double phi = len / rho;
      pose.position += rho * Vec2{std::sin(theta) - std::sin(theta - phi),
                                  std::cos(theta - phi) - std::cos(theta)};
      pose.heading -= phi;
    }
  }
  return pose;
}

double angle_gap(double a, double b) {
  return std::abs(std::remainder(a - b, 2.0 * kPi));
}

}  // namespace

TEST_CASE("double-integrator time from rest") {
  const DIParams p{1.0, 1.0};
  CHECK(dtrp::di_time_from_rest(0.0, p) == 0.0);
  // Below saturation: pure acceleration.
  CHECK(dtrp::di_time_from_rest(0.125, p) == doctest::Approx(0.5));
  // Continuity at the saturation distance v^2 / (2u) = 0.5.
  CHECK(dtrp::di_time_from_rest(0.5, p) == doctest::Approx(1.0));
  CHECK(dtrp::di_time_from_rest(0.5 + 1e-12, p) == doctest::Approx(1.0));
  // Beyond: cruise term plus the acceleration penalty v / (2u).
  CHECK(dtrp::di_time_from_rest(2.0, p) == doctest::Approx(2.5));

  const DIParams strong{2.0, 4.0};
  CHECK(dtrp::di_time_from_rest(0.5, strong) == doctest::Approx(0.5));
  CHECK(dtrp::di_time_from_rest(3.0, strong) == doctest::Approx(1.75));

  CHECK_THROWS_AS(dtrp::di_time_from_rest(-1.0, p), std::invalid_argument);
  CHECK_THROWS_AS(dtrp::di_time_from_rest(1.0, DIParams{0.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("heading fold covers both driving directions") {
  CHECK(dtrp::dd_heading_fold(0.0) == 0.0);
  CHECK(dtrp::dd_heading_fold(kPi / 2.0) == doctest::Approx(kPi / 2.0));
  CHECK(dtrp::dd_heading_fold(3.0 * kPi / 4.0) == doctest::Approx(kPi / 4.0));
  CHECK(dtrp::dd_heading_fold(kPi) == doctest::Approx(0.0));
  CHECK(dtrp::dd_heading_fold(-kPi / 3.0) == doctest::Approx(kPi / 3.0));
  CHECK(dtrp::dd_heading_fold(2.0 * kPi + 0.3) == doctest::Approx(0.3));

  // Mean fold over uniformly distributed bearings is pi/4.
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += dtrp::dd_heading_fold(-kPi + 2.0 * kPi * (i + 0.5) / n);
  }
  CHECK(sum / n == doctest::Approx(kPi / 4.0).epsilon(1e-6));
}

TEST_CASE("differential-drive travel time") {
  const DDParams p{0.1, 1.0};
  const DDState s{Vec2{0.0, 0.0}, 0.0};
  CHECK(dtrp::dd_travel_time(s, Vec2{0.0, 0.0}, p) == 0.0);
  CHECK(dtrp::dd_travel_time(s, Vec2{1.0, 0.0}, p) == doctest::Approx(1.0));
  // Straight behind: drive backwards, no rotation.
  CHECK(dtrp::dd_travel_time(s, Vec2{-1.0, 0.0}, p) == doctest::Approx(1.0));
  // Sideways: quarter-turn penalty.
  CHECK(dtrp::dd_travel_time(s, Vec2{0.0, 1.0}, p) ==
        doctest::Approx(0.1 * kPi / 2.0 + 1.0));
  CHECK(dtrp::dd_travel_time(s, Vec2{0.0, -2.0}, p) ==
        doctest::Approx(0.1 * kPi / 2.0 + 2.0));
  // Slower wheels scale the whole time.
  const DDParams slow{0.1, 0.5};
  CHECK(dtrp::dd_travel_time(s, Vec2{0.0, 1.0}, slow) ==
        doctest::Approx((0.1 * kPi / 2.0 + 1.0) / 0.5));
  const DDState tilted{Vec2{1.0, 1.0}, kPi / 4.0};
  CHECK(dtrp::dd_travel_time(tilted, Vec2{2.0, 1.0}, p) ==
        doctest::Approx(0.1 * kPi / 4.0 + 1.0));
}

TEST_CASE("reachable-area bounds for the double integrator") {
  const DIParams p{1.0, 1.0};
  const auto b = dtrp::di_reachable_area_bounds(1.0, 1.0, p);
  CHECK(b.valid);  // 1 <= pi/2
  CHECK(b.lower == doctest::Approx(1.0 / 3.0));
  CHECK(b.upper == doctest::Approx(3.0));
  CHECK(b.lower <= b.upper);
  const auto late = dtrp::di_reachable_area_bounds(1.0, 2.0, p);
  CHECK_FALSE(late.valid);
  // Slow entry speed shrinks the window.
  CHECK_FALSE(dtrp::di_reachable_area_bounds(0.1, 0.5, p).valid);
  CHECK(dtrp::di_reachable_area_bounds(0.1, 0.01, p).valid);
}

TEST_CASE("reachable-area bounds for the differential drive") {
  const DDParams p{0.5, 1.0};
  const double t = 0.5;  // w t = 0.5 <= rho pi / 2 ~ 0.785
  const auto b = dtrp::dd_reachable_area_bounds(t, p);
  CHECK(b.valid);
  CHECK(b.lower == doctest::Approx(2.0 / (3.0 * 0.5) * 0.125));
  CHECK(b.upper == doctest::Approx(5.0 / (6.0 * 0.5) * 0.125));
  CHECK_FALSE(dtrp::dd_reachable_area_bounds(1.0, p).valid);

  // Within the window the rotate-then-roll primitive attains the lower bound
  // exactly.
  CHECK(dtrp::dd_primitive_reachable_area(t, p) ==
        doctest::Approx(b.lower).epsilon(1e-12));
  // Beyond it the primitive covers less than proportionally.
  const double big_t = 2.0;
  const double wt = big_t * p.w_max;
  const double rest = wt - p.rho * kPi / 2.0;
  CHECK(dtrp::dd_primitive_reachable_area(big_t, p) ==
        doctest::Approx(2.0 / (3.0 * p.rho) * (wt * wt * wt -
                                               rest * rest * rest)));
}

TEST_CASE("primitive reachable area matches a rasterisation") {
  const DDParams p{0.5, 1.0};
  for (const double t : {0.3, 0.5, 0.75}) {
    const double wt = p.w_max * t;
    const int n = 500;
    const double h = 2.0 * wt / n;
    int hits = 0;
    const DDState rest{Vec2{0.0, 0.0}, 0.0};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Vec2 q{-wt + (i + 0.5) * h, -wt + (j + 0.5) * h};
        if (dtrp::dd_travel_time(rest, q, p) <= t) {
          ++hits;
        }
      }
    }
    const double raster = hits * h * h;
    const double exact = dtrp::dd_primitive_reachable_area(t, p);
    CHECK(raster == doctest::Approx(exact).epsilon(0.02));
  }
}

TEST_CASE("travel-time integral bounds") {
  const DIParams p{1.0, 2.0};
  const auto di = dtrp::di_travel_time_integral(1.0, 0.5, p);
  CHECK(di.valid);  // 0.5 <= pi/4
  CHECK(di.value == doctest::Approx(1.0 * 2.0 / 12.0 * 0.0625));
  CHECK_FALSE(dtrp::di_travel_time_integral(1.0, 1.0, p).valid);

  const DDParams q{0.25, 2.0};
  CHECK(dtrp::dd_travel_time_integral(0.5, q) ==
        doctest::Approx(8.0 / 1.5 * 0.0625));
}

TEST_CASE("shortest bounded-curvature paths on known cases") {
  // Aligned poses: a straight segment.
  CHECK(dtrp::dubins_shortest_path_length(Pose{Vec2{0, 0}, 0.0},
                                          Pose{Vec2{5, 0}, 0.0}, 1.0) ==
        doctest::Approx(5.0));
  // Half-circle onto the parallel opposite lane.
  const double rho = 0.7;
  CHECK(dtrp::dubins_shortest_path_length(Pose{Vec2{0, 0}, 0.0},
                                          Pose{Vec2{0, 2 * rho}, kPi}, rho) ==
        doctest::Approx(kPi * rho));
  // Identical poses: zero length.
  CHECK(dtrp::dubins_shortest_path_length(Pose{Vec2{1, 2}, 0.3},
                                          Pose{Vec2{1, 2}, 0.3}, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK_THROWS_AS(dtrp::dubins_shortest_path_length(Pose{}, Pose{}, 0.0),
                  std::invalid_argument);
}

TEST_CASE("every candidate word reconstructs its goal pose") {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int trial = 0; trial < 500; ++trial) {
    const double rho = (trial % 2 == 0) ? 1.0 : 0.3;
    const Pose a{Vec2{pos(rng), pos(rng)}, ang(rng)};
    const Pose b{Vec2{pos(rng), pos(rng)}, ang(rng)};
    const auto options = dtrp::dubins_path_options(a, b, rho);
    REQUIRE(!options.empty());
    for (const auto& path : options) {
      const Pose end = roll_out(path, a, rho);
      CHECK((end.position - b.position).norm() < 1e-6);
      CHECK(angle_gap(end.heading, b.heading) < 1e-6);
    }
    // Sorted, and never shorter than the straight-line distance.
    for (std::size_t i = 1; i < options.size(); ++i) {
      CHECK(options[i - 1].total <= options[i].total);
    }
    CHECK(options.front().total >=
          (b.position - a.position).norm() - 1e-9);
    // Time-reversal symmetry: flip both headings and swap endpoints.
    const Pose ra{b.position, b.heading + kPi};
    const Pose rb{a.position, a.heading + kPi};
    CHECK(dtrp::dubins_shortest_path_length(ra, rb, rho) ==
          doctest::Approx(options.front().total).epsilon(1e-9));
  }
}
