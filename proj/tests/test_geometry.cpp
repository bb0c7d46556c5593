#include "dtrp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"

namespace {

using dtrp::ConvexPolygon;
using dtrp::Environment;
using dtrp::Vec2;

std::vector<Vec2> unit_square() {
  return {Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{1.0, 1.0}, Vec2{0.0, 1.0}};
}

// Random strictly convex polygon: convex hull of random points in a square
// (Andrew's monotone chain).
std::vector<Vec2> random_convex_polygon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  std::vector<Vec2> pts(12);
  for (Vec2& p : pts) {
    p = Vec2{cd(rng), cd(rng)};
  }
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  const auto turn = [](const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x() - a.x()) * (c.y() - a.y()) -
           (b.y() - a.y()) * (c.x() - a.x());
  };
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) {
      --k;
    }
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0) {
      --k;
    }
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

// Reference Voronoi cell: clip the hull against every bisector.
std::vector<dtrp::ConvexPolygon> brute_voronoi(const std::vector<Vec2>& pts,
                                               const Environment& env) {
  std::vector<dtrp::ConvexPolygon> cells;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<Vec2> cell = env.boundary.vertices();
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) {
        continue;
      }
      const Vec2 d = pts[j] - pts[i];
      cell = dtrp::clip_half_plane(cell, d, d.dot(0.5 * (pts[i] + pts[j])));
    }
    cells.emplace_back(std::move(cell));
  }
  return cells;
}

}  // namespace

TEST_CASE("signed area and centroid") {
  const auto sq = unit_square();
  CHECK(dtrp::polygon_signed_area(sq) == doctest::Approx(1.0));
  auto rev = sq;
  std::reverse(rev.begin(), rev.end());
  CHECK(dtrp::polygon_signed_area(rev) == doctest::Approx(-1.0));
  const Vec2 c = dtrp::polygon_centroid(sq);
  CHECK(c.x() == doctest::Approx(0.5));
  CHECK(c.y() == doctest::Approx(0.5));

  const std::vector<Vec2> tri{Vec2{0.0, 0.0}, Vec2{3.0, 0.0}, Vec2{0.0, 3.0}};
  CHECK(dtrp::polygon_signed_area(tri) == doctest::Approx(4.5));
  const Vec2 tc = dtrp::polygon_centroid(tri);
  CHECK(tc.x() == doctest::Approx(1.0));
  CHECK(tc.y() == doctest::Approx(1.0));

  CHECK_THROWS_AS(dtrp::polygon_signed_area(
                      std::vector<Vec2>{Vec2{0, 0}, Vec2{1, 0}}),
                  std::invalid_argument);
}

TEST_CASE("convex polygon construction and cleanup") {
  // Clockwise input is normalised to counter-clockwise.
  ConvexPolygon cw{{Vec2{0, 0}, Vec2{0, 1}, Vec2{1, 1}, Vec2{1, 0}}};
  CHECK(cw.area() == doctest::Approx(1.0));
  CHECK(dtrp::polygon_signed_area(cw.vertices()) > 0.0);

  // Duplicate and collinear vertices are removed.
  ConvexPolygon messy{{Vec2{0, 0}, Vec2{0.5, 0.0}, Vec2{1, 0}, Vec2{1, 0},
                       Vec2{1, 1}, Vec2{0, 1}, Vec2{0, 1e-14}}};
  CHECK(messy.vertices().size() == 4);
  CHECK(messy.area() == doctest::Approx(1.0));

  CHECK_THROWS_AS(ConvexPolygon({Vec2{0, 0}, Vec2{1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ConvexPolygon({Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}}),
                  std::invalid_argument);
  // Reflex corner.
  CHECK_THROWS_AS(ConvexPolygon({Vec2{0, 0}, Vec2{2, 0}, Vec2{2, 2},
                                 Vec2{1, 0.5}, Vec2{0, 2}}),
                  std::invalid_argument);
}

TEST_CASE("containment with tolerance") {
  const Environment env = Environment::square(1.0);
  CHECK(env.contains(Vec2{0.5, 0.5}));
  CHECK(env.contains(Vec2{0.0, 0.0}));
  CHECK(env.contains(Vec2{-1e-10, 0.5}));
  CHECK_FALSE(env.contains(Vec2{-1e-3, 0.5}));
  CHECK_FALSE(env.contains(Vec2{0.5, 1.1}));
  CHECK(env.boundary.contains(Vec2{0.5, 1.0 + 1e-4}, 1e-3));
}

TEST_CASE("distance integral closed form matches known values") {
  const auto sq = unit_square();
  // Unit square about its centre: (sqrt(2) + asinh(1)) / 6.
  CHECK(dtrp::first_moment(sq, Vec2{0.5, 0.5}) ==
        doctest::Approx(0.3825978582321063).epsilon(1e-12));
  // About a corner: twice the centre value by a scaling argument.
  CHECK(dtrp::first_moment(sq, Vec2{0.0, 0.0}) ==
        doctest::Approx(0.7651957164642127).epsilon(1e-12));
  // Right triangle about the right-angle corner:
  // (1 + ln(1 + sqrt(2)) / sqrt(2)) / 6.
  const std::vector<Vec2> tri{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  CHECK(dtrp::first_moment(tri, Vec2{0.0, 0.0}) ==
        doctest::Approx(0.2705375400233718).epsilon(1e-12));
  // Translation invariance.
  std::vector<Vec2> shifted = sq;
  for (Vec2& v : shifted) {
    v += Vec2{3.0, -2.0};
  }
  CHECK(dtrp::first_moment(shifted, Vec2{3.5, -1.5}) ==
        doctest::Approx(0.3825978582321063).epsilon(1e-12));
  // Scaling: lengths scale linearly, areas quadratically.
  std::vector<Vec2> scaled = sq;
  for (Vec2& v : scaled) {
    v *= 4.0;
  }
  CHECK(dtrp::first_moment(scaled, Vec2{2.0, 2.0}) ==
        doctest::Approx(64.0 * 0.3825978582321063).epsilon(1e-12));
}

TEST_CASE("distance integral is additive over a split") {
  const std::vector<Vec2> left{Vec2{0, 0}, Vec2{0.37, 0}, Vec2{0.37, 1},
                               Vec2{0, 1}};
  const std::vector<Vec2> right{Vec2{0.37, 0}, Vec2{1, 0}, Vec2{1, 1},
                                Vec2{0.37, 1}};
  const auto sq = unit_square();
  for (const Vec2& p : {Vec2{0.2, 0.8}, Vec2{0.37, 0.5}, Vec2{2.5, -1.0}}) {
    const double whole = dtrp::first_moment(sq, p);
    const double parts =
        dtrp::first_moment(left, p) + dtrp::first_moment(right, p);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
  }
}

TEST_CASE("distance integral agrees with Monte Carlo on random polygons") {
  std::mt19937_64 rng(20260822);
  for (int trial = 0; trial < 3; ++trial) {
    const auto poly = random_convex_polygon(rng);
    const ConvexPolygon cp{poly};
    std::uniform_real_distribution<double> pd(-1.5, 1.5);
    const Vec2 p{pd(rng), pd(rng)};
    const double exact = dtrp::first_moment(cp.vertices(), p);

    const auto& bb = cp.bbox();
    std::uniform_real_distribution<double> ux(bb.lo.x(), bb.hi.x());
    std::uniform_real_distribution<double> uy(bb.lo.y(), bb.hi.y());
    const int n = 200000;
    double sum = 0.0;
    double sum_sq = 0.0;
    int hits = 0;
    while (hits < n) {
      const Vec2 q{ux(rng), uy(rng)};
      if (!cp.contains(q, 0.0)) {
        continue;
      }
      const double r = (q - p).norm();
      sum += r;
      sum_sq += r * r;
      ++hits;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    const double se = std::sqrt(var / n) * cp.area();
    const double estimate = mean * cp.area();
    CHECK(std::abs(exact - estimate) < 4.0 * se + 1e-9);
  }
}

TEST_CASE("half-plane clipping") {
  const auto sq = unit_square();
  const auto halved = dtrp::clip_half_plane(sq, Vec2{1.0, 0.0}, 0.5);
  CHECK(dtrp::polygon_signed_area(halved) == doctest::Approx(0.5));
  const auto all = dtrp::clip_half_plane(sq, Vec2{1.0, 0.0}, 2.0);
  CHECK(all.size() == 4);
  const auto none = dtrp::clip_half_plane(sq, Vec2{1.0, 0.0}, -1.0);
  CHECK(none.empty());
}

TEST_CASE("Voronoi partition of two generators") {
  const Environment env = Environment::square(1.0);
  const std::vector<Vec2> pts{Vec2{0.25, 0.5}, Vec2{0.75, 0.5}};
  const auto cells = dtrp::voronoi_partition(pts, env);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].area() == doctest::Approx(0.5));
  CHECK(cells[1].area() == doctest::Approx(0.5));
  CHECK(cells[0].contains(pts[0]));
  CHECK(cells[1].contains(pts[1]));
  CHECK(cells[0].contains(Vec2{0.1, 0.9}));
  CHECK_FALSE(cells[0].contains(Vec2{0.9, 0.9}));
}

TEST_CASE("Voronoi input validation") {
  const Environment env = Environment::square(1.0);
  CHECK_THROWS_AS(dtrp::voronoi_partition(std::vector<Vec2>{}, env),
                  std::invalid_argument);
  CHECK_THROWS_AS(dtrp::voronoi_partition(
                      std::vector<Vec2>{Vec2{0.5, 0.5}, Vec2{1.5, 0.5}}, env),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      dtrp::voronoi_partition(
          std::vector<Vec2>{Vec2{0.5, 0.5}, Vec2{0.5, 0.5 + 1e-12}}, env),
      std::invalid_argument);
}

TEST_CASE("Voronoi grid path matches the brute-force reference") {
  const Environment env = Environment::square(1.0);
  std::mt19937_64 rng(7);
  for (const std::size_t m : {40UL, 100UL, 500UL}) {
    std::vector<Vec2> pts;
    pts.reserve(m);
    while (pts.size() < m) {
      pts.push_back(dtrp::sample_uniform(env, rng));
    }
    const auto fast = dtrp::voronoi_partition(pts, env);
    const auto slow = brute_voronoi(pts, env);
    REQUIRE(fast.size() == m);
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(fast[i].area() ==
            doctest::Approx(slow[i].area()).epsilon(1e-9));
      total += fast[i].area();
    }
    CHECK(total == doctest::Approx(env.area()).epsilon(1e-9));
  }
}

TEST_CASE("Voronoi cells tile the environment at larger scale") {
  const Environment env = Environment::square(2.0);
  std::mt19937_64 rng(11);
  std::vector<Vec2> pts;
  while (pts.size() < 1024) {
    pts.push_back(dtrp::sample_uniform(env, rng));
  }
  const auto cells = dtrp::voronoi_partition(pts, env);
  double total = 0.0;
  for (const auto& c : cells) {
    total += c.area();
  }
  CHECK(total == doctest::Approx(env.area()).epsilon(1e-6));

  // The cell of the nearest generator contains the query point.
  for (int t = 0; t < 2000; ++t) {
    const Vec2 q = dtrp::sample_uniform(env, rng);
    std::size_t best = 0;
    double best_d = (pts[0] - q).squaredNorm();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d = (pts[i] - q).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    CHECK(cells[best].contains(q, 1e-9));
  }
}

TEST_CASE("uniform sampling stays inside and is unbiased") {
  const Environment env = Environment::square(3.0);
  std::mt19937_64 rng(5);
  Vec2 mean{0.0, 0.0};
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Vec2 q = dtrp::sample_uniform(env, rng);
    CHECK(env.contains(q));
    mean += q;
  }
  mean /= static_cast<double>(n);
  CHECK(mean.x() == doctest::Approx(1.5).epsilon(0.02));
  CHECK(mean.y() == doctest::Approx(1.5).epsilon(0.02));
}
