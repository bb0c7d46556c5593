#include "dtrp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dtrp {

namespace {

double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace

double polygon_signed_area(std::span<const Vec2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw std::invalid_argument("polygon needs at least three vertices");
  }
  // Work relative to the first vertex to keep the shoelace sum well
  // conditioned for polygons far from the origin.
  const Vec2 o = vertices[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    twice += cross2(vertices[i] - o, vertices[i + 1] - o);
  }
  return 0.5 * twice;
}

Vec2 polygon_centroid(std::span<const Vec2> vertices) {
  const std::size_t n = vertices.size();
  const double area = polygon_signed_area(vertices);
  if (area == 0.0) {
    throw std::invalid_argument("centroid of a zero-area polygon");
  }
  const Vec2 o = vertices[0];
  Vec2 acc{0.0, 0.0};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const Vec2 a = vertices[i] - o;
    const Vec2 b = vertices[i + 1] - o;
    acc += (a + b) * cross2(a, b);
  }
  return o + acc / (6.0 * area);
}

double first_moment(std::span<const Vec2> vertices, const Vec2& p) {
  const std::size_t n = vertices.size();
  if (n < 3) {
    throw std::invalid_argument("polygon needs at least three vertices");
  }
  double scale2 = 0.0;
  for (const Vec2& v : vertices) {
    scale2 = std::max(scale2, (v - p).squaredNorm());
  }
  if (scale2 == 0.0) {
    return 0.0;
  }

  // Signed fan decomposition around p.  For the triangle (p, a+p, b+p) the
  // distance integral has the closed form
  //   (h (r_v t_v - r_u t_u) + h^3 (asinh(t_v/h) - asinh(t_u/h))) / 6,
  // where t is the coordinate along the opposite edge, r the distance from p,
  // and h the distance from p to the edge's supporting line.
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices[i] - p;
    const Vec2 b = vertices[(i + 1) % n] - p;
    const double cr = cross2(a, b);
    if (std::abs(cr) <= 1e-15 * scale2) {
      continue;  // degenerate triangle, zero contribution
    }
    const Vec2 d = b - a;
    const double inv_len = 1.0 / d.norm();
    const double tu = a.dot(d) * inv_len;
    const double tv = b.dot(d) * inv_len;
    const double h = std::abs(cr) * inv_len;
    const double ru = a.norm();
    const double rv = b.norm();
    const double integral =
        (h * (rv * tv - ru * tu) +
         h * h * h * (std::asinh(tv / h) - std::asinh(tu / h))) /
        6.0;
    total += (cr > 0.0) ? integral : -integral;
  }
  return total;
}

std::vector<Vec2> clip_half_plane(std::span<const Vec2> vertices,
                                  const Vec2& n, double c) {
  std::vector<Vec2> out;
  const std::size_t count = vertices.size();
  out.reserve(count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    const Vec2& cur = vertices[i];
    const Vec2& nxt = vertices[(i + 1) % count];
    const double dc = n.dot(cur) - c;
    const double dn = n.dot(nxt) - c;
    if (dc <= 0.0) {
      out.push_back(cur);
    }
    if ((dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) {
    throw std::invalid_argument("polygon needs at least three vertices");
  }
  Vec2 lo = vertices[0];
  Vec2 hi = vertices[0];
  for (const Vec2& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double diam = (hi - lo).norm();
  if (!(diam > 0.0)) {
    throw std::invalid_argument("degenerate polygon");
  }
  const double eps_len = 1e-12 * diam;
  const double eps_cross = 1e-12 * diam * diam;

  const double signed_area = polygon_signed_area(vertices);
  if (std::abs(signed_area) <= eps_cross) {
    throw std::invalid_argument("polygon has negligible area");
  }
  if (signed_area < 0.0) {
    std::reverse(vertices.begin(), vertices.end());
  }

  // Drop consecutive duplicates (including across the wrap-around).
  std::vector<Vec2> w;
  w.reserve(vertices.size());
  for (const Vec2& v : vertices) {
    if (w.empty() || (v - w.back()).norm() > eps_len) {
      w.push_back(v);
    }
  }
  while (w.size() >= 2 && (w.front() - w.back()).norm() <= eps_len) {
    w.pop_back();
  }

  // Drop collinear vertices until stable.
  bool changed = true;
  while (changed && w.size() >= 3) {
    changed = false;
    std::vector<Vec2> kept;
    kept.reserve(w.size());
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = w[(i + n - 1) % n];
      const Vec2& cur = w[i];
      const Vec2& nxt = w[(i + 1) % n];
      if (std::abs(cross2(cur - prev, nxt - cur)) <= eps_cross) {
        changed = true;
      } else {
        kept.push_back(cur);
      }
    }
    w.swap(kept);
  }
  if (w.size() < 3) {
    throw std::invalid_argument("polygon degenerates after cleanup");
  }
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& prev = w[(i + n - 1) % n];
    const Vec2& cur = w[i];
    const Vec2& nxt = w[(i + 1) % n];
    if (cross2(cur - prev, nxt - cur) < 0.0) {
      throw std::invalid_argument("polygon is not convex");
    }
  }

  verts_ = std::move(w);
  area_ = polygon_signed_area(verts_);
  if (!(area_ > 0.0)) {
    throw std::invalid_argument("polygon has non-positive area");
  }
  centroid_ = polygon_centroid(verts_);
  lo = verts_[0];
  hi = verts_[0];
  for (const Vec2& v : verts_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  bbox_ = AABB{lo, hi};
}

bool ConvexPolygon::contains(const Vec2& q, double tol) const {
  const std::size_t n = verts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = verts_[i];
    const Vec2& b = verts_[(i + 1) % n];
    const Vec2 e = b - a;
    const double signed_dist = cross2(e, q - a) / e.norm();
    if (signed_dist < -tol) {
      return false;
    }
  }
  return true;
}

double ConvexPolygon::first_moment(const Vec2& p) const {
  return dtrp::first_moment(verts_, p);
}

Environment Environment::square(double side) {
  if (!(side > 0.0)) {
    throw std::invalid_argument("square side must be positive");
  }
  return Environment{ConvexPolygon{{Vec2{0.0, 0.0}, Vec2{side, 0.0},
                                    Vec2{side, side}, Vec2{0.0, side}}}};
}

namespace {

constexpr double kDuplicateTol = 1e-9;

void check_generators(std::span<const Vec2> points, const Environment& env) {
  if (points.empty()) {
    throw std::invalid_argument("at least one generator point is required");
  }
  for (const Vec2& p : points) {
    if (!env.contains(p)) {
      throw std::invalid_argument("generator point outside the environment");
    }
  }
  // Near-duplicate scan over a lexicographic order: any pair closer than the
  // tolerance is also within the tolerance in x, so a sliding window works.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x() < points[b].x() ||
           (points[a].x() == points[b].x() && points[a].y() < points[b].y());
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (points[order[j]].x() - points[order[i]].x() >= kDuplicateTol) {
        break;
      }
      if ((points[order[j]] - points[order[i]]).norm() < kDuplicateTol) {
        throw std::invalid_argument("duplicate generator points");
      }
    }
  }
}

double max_squared_radius(std::span<const Vec2> cell, const Vec2& p) {
  double r2 = 0.0;
  for (const Vec2& v : cell) {
    r2 = std::max(r2, (v - p).squaredNorm());
  }
  return r2;
}

// Clip the cell of generator p against the bisector with generator q,
// keeping the side of p.
std::vector<Vec2> clip_bisector(std::span<const Vec2> cell, const Vec2& p,
                                const Vec2& q) {
  const Vec2 d = q - p;
  const double c = d.dot(0.5 * (p + q));
  return clip_half_plane(cell, d, c);
}

}  // namespace

std::vector<ConvexPolygon> voronoi_partition(std::span<const Vec2> points,
                                             const Environment& env) {
  check_generators(points, env);
  const std::size_t n = points.size();
  const std::vector<Vec2>& hull = env.boundary.vertices();

  std::vector<ConvexPolygon> cells;
  cells.reserve(n);

  if (n <= 32) {
    // Brute force: clip against every other generator, nearest first so the
    // cell radius shrinks quickly and distant generators can be skipped.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      const Vec2 p = points[i];
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (points[a] - p).squaredNorm() < (points[b] - p).squaredNorm();
      });
      std::vector<Vec2> cell(hull.begin(), hull.end());
      double r2 = max_squared_radius(cell, p);
      for (std::size_t j : order) {
        if (j == i) {
          continue;
        }
        if ((points[j] - p).squaredNorm() > 4.0 * r2) {
          break;
        }
        cell = clip_bisector(cell, p, points[j]);
        r2 = max_squared_radius(cell, p);
      }
      cells.emplace_back(std::move(cell));
    }
    return cells;
  }

  // Bucket the generators on a uniform grid over the environment's bounding
  // box and visit candidates ring by ring.  A generator q can only cut the
  // cell of p if |q - p| <= 2 max_{x in cell} |x - p|, which bounds how many
  // rings must be visited once the cell has shrunk.
  const AABB& bb = env.bbox();
  const std::size_t g = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::sqrt(static_cast<double>(n) / 2.0)), 1,
      4096);
  const double hx = bb.width() / static_cast<double>(g);
  const double hy = bb.height() / static_cast<double>(g);
  const double h_min = std::min(hx, hy);
  const auto bucket_of = [&](const Vec2& q) {
    const auto ix = std::clamp<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>((q.x() - bb.lo.x()) / hx), 0,
        static_cast<std::ptrdiff_t>(g) - 1);
    const auto iy = std::clamp<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>((q.y() - bb.lo.y()) / hy), 0,
        static_cast<std::ptrdiff_t>(g) - 1);
    return std::pair<std::ptrdiff_t, std::ptrdiff_t>{ix, iy};
  };
  std::vector<std::vector<std::uint32_t>> buckets(g * g);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [ix, iy] = bucket_of(points[i]);
    buckets[static_cast<std::size_t>(iy) * g + static_cast<std::size_t>(ix)]
        .push_back(static_cast<std::uint32_t>(i));
  }

  std::vector<std::uint32_t> ring;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = points[i];
    const auto [ci, cj] = bucket_of(p);
    const auto gi = static_cast<std::ptrdiff_t>(g);
    const std::ptrdiff_t max_ring =
        std::max(std::max(ci, gi - 1 - ci), std::max(cj, gi - 1 - cj));

    std::vector<Vec2> cell(hull.begin(), hull.end());
    double r2 = max_squared_radius(cell, p);

    for (std::ptrdiff_t k = 0; k <= max_ring; ++k) {
      if (k >= 1) {
        const double reach = static_cast<double>(k - 1) * h_min;
        if (reach * reach > 4.0 * r2) {
          break;
        }
      }
      ring.clear();
      const auto add_bucket = [&](std::ptrdiff_t ix, std::ptrdiff_t iy) {
        if (ix < 0 || iy < 0 || ix >= gi || iy >= gi) {
          return;
        }
        const auto& bucket =
            buckets[static_cast<std::size_t>(iy) * g +
                    static_cast<std::size_t>(ix)];
        ring.insert(ring.end(), bucket.begin(), bucket.end());
      };
      if (k == 0) {
        add_bucket(ci, cj);
      } else {
        for (std::ptrdiff_t ix = ci - k; ix <= ci + k; ++ix) {
          add_bucket(ix, cj - k);
          add_bucket(ix, cj + k);
        }
        for (std::ptrdiff_t iy = cj - k + 1; iy <= cj + k - 1; ++iy) {
          add_bucket(ci - k, iy);
          add_bucket(ci + k, iy);
        }
      }
      std::sort(ring.begin(), ring.end(),
                [&](std::uint32_t a, std::uint32_t b) {
                  return (points[a] - p).squaredNorm() <
                         (points[b] - p).squaredNorm();
                });
      for (std::uint32_t j : ring) {
        if (j == i) {
          continue;
        }
        if ((points[j] - p).squaredNorm() > 4.0 * r2) {
          break;  // sorted by distance, so the rest of the ring is farther
        }
        cell = clip_bisector(cell, p, points[j]);
        r2 = max_squared_radius(cell, p);
      }
    }
    cells.emplace_back(std::move(cell));
  }
  return cells;
}

Vec2 sample_uniform(const Environment& env, std::mt19937_64& rng) {
  const AABB& bb = env.bbox();
  std::uniform_real_distribution<double> ux(bb.lo.x(), bb.hi.x());
  std::uniform_real_distribution<double> uy(bb.lo.y(), bb.hi.y());
  for (;;) {
    const Vec2 q{ux(rng), uy(rng)};
    if (env.contains(q)) {
      return q;
    }
  }
}

}  // namespace dtrp
