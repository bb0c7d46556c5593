#pragma once

#include "dtrp/geometry.hpp"

#include <cstdint>
#include <vector>

namespace dtrp {

struct WeiszfeldResult {
  Vec2 point{0.0, 0.0};
  int iterations = 0;
  bool converged = false;
};

/// Geometric median of a convex region: the point p minimising the distance
/// integral over the region.  Uses the continuous Weiszfeld fixed-point
/// iteration with closed-form region integrals of 1/r and of the unit
/// direction field; stops when the update step falls below tol times the
/// region diameter.
WeiszfeldResult weiszfeld_median(const ConvexPolygon& region, const Vec2& init,
                                 int max_iterations = 200, double tol = 1e-10);

struct HoneycombPlacement {
  std::vector<Vec2> points;
  double pitch = 0.0;       // lattice spacing after scaling
  bool exact_count = true;  // false if a symmetry tie had to be broken
};

/// Deterministic hexagonal-lattice seeding of exactly m points inside the
/// environment: a triangular lattice with density m/area is centred on the
/// region centroid and scaled about it until exactly m sites fall inside.
/// Symmetry ties are broken deterministically.
HoneycombPlacement honeycomb_placement(std::size_t m, const Environment& env);

struct MedianSolution {
  std::vector<Vec2> points;
  double value = 0.0;  // mean distance to the nearest point
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;  // objective after the initial placement and
                              // after each sweep; non-increasing
  int collapse_events = 0;    // times coincident points had to be re-separated
};

/// Multi-point continuous median descent.  Minimises the mean distance from a
/// uniform point of the environment to its nearest representative by
/// alternating Voronoi partition and per-cell geometric-median updates,
/// seeded from a jittered honeycomb placement.  A per-cell update is only
/// accepted when it does not increase that cell's distance integral, so the
/// objective trace is non-increasing.  Stops when the relative decrease per
/// sweep falls below rel_tol.
MedianSolution lloyd_median_descent(std::size_t m, const Environment& env,
                                    std::uint64_t seed,
                                    int max_iterations = 200,
                                    double rel_tol = 1e-6);

/// Mean distance from a uniform point of the environment to the nearest of
/// the given points: (1/A) * sum_i of the distance integral over cell i of
/// the points' Voronoi partition.
double evaluate_mean_distance(std::span<const Vec2> points,
                              const Environment& env);

struct WeberBounds {
  double lower = 0.0;  // valid for every m
  double upper = 0.0;  // asymptotic hexagonal-tiling value
};

/// Bounds on the optimal m-point mean distance for a convex region of area A:
/// lower (2/3) sqrt(A / (pi m)) (disc rearrangement, valid for all m) and
/// upper 0.38 sqrt(A / m) (hexagonal tiling, asymptotic in m).
WeberBounds weber_bounds(std::size_t m, const Environment& env);

}  // namespace dtrp
