#pragma once

#include <Eigen/Core>

#include <random>
#include <span>
#include <vector>

namespace dtrp {

using Vec2 = Eigen::Vector2d;

/// Axis-aligned bounding box.
struct AABB {
  Vec2 lo{0.0, 0.0};
  Vec2 hi{0.0, 0.0};

  double width() const { return hi.x() - lo.x(); }
  double height() const { return hi.y() - lo.y(); }
};

/// Signed area of a simple polygon (positive for counter-clockwise order).
/// Throws std::invalid_argument for fewer than three vertices.
double polygon_signed_area(std::span<const Vec2> vertices);

/// Area centroid of a simple polygon with nonzero area.
Vec2 polygon_centroid(std::span<const Vec2> vertices);

/// Integral of the Euclidean distance ||q - p|| over the polygon interior,
/// evaluated in closed form via a signed fan decomposition around p.  The
/// polygon must be simple; p may lie anywhere (inside, outside, or on the
/// boundary).
double first_moment(std::span<const Vec2> vertices, const Vec2& p);

/// Clip a convex polygon against the half plane { q : n.dot(q) <= c }.
/// Returns the (possibly empty) clipped vertex loop in the original order.
std::vector<Vec2> clip_half_plane(std::span<const Vec2> vertices,
                                  const Vec2& n, double c);

/// Strictly convex polygon with counter-clockwise vertex order.
///
/// The constructor removes duplicate and collinear vertices, normalises the
/// orientation to counter-clockwise, and throws std::invalid_argument if the
/// result is degenerate (fewer than three vertices, zero area, or a reflex
/// corner).
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return verts_; }
  double area() const { return area_; }
  const Vec2& centroid() const { return centroid_; }
  const AABB& bbox() const { return bbox_; }

  /// True if q lies inside or within distance `tol` of the boundary.
  bool contains(const Vec2& q, double tol = 1e-9) const;

  /// Integral of ||q - p|| over the polygon.
  double first_moment(const Vec2& p) const;

 private:
  std::vector<Vec2> verts_;
  double area_ = 0.0;
  Vec2 centroid_{0.0, 0.0};
  AABB bbox_;
};

/// Workspace: a bounded convex region in the plane.
struct Environment {
  ConvexPolygon boundary;

  explicit Environment(ConvexPolygon b) : boundary(std::move(b)) {}

  double area() const { return boundary.area(); }
  const AABB& bbox() const { return boundary.bbox(); }
  bool contains(const Vec2& q, double tol = 1e-9) const {
    return boundary.contains(q, tol);
  }

  /// Axis-aligned square [0, side] x [0, side].
  static Environment square(double side);
};

/// Voronoi partition of the environment induced by the given generator
/// points.  Returns one convex cell per generator, in input order; the cells
/// tile the environment.  Throws std::invalid_argument if the generator list
/// is empty, contains (near-)duplicates, or contains points outside the
/// environment.
std::vector<ConvexPolygon> voronoi_partition(std::span<const Vec2> points,
                                             const Environment& env);

/// Uniform sample from the environment (rejection from the bounding box).
Vec2 sample_uniform(const Environment& env, std::mt19937_64& rng);

}  // namespace dtrp
