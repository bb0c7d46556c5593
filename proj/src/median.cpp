#include "dtrp/median.hpp"

#include "dtrp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dtrp {

namespace {

double cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

// Closed-form region integrals of 1/r and of the unit direction (q - p)/r
// over a polygon, via the signed fan decomposition around p.  For a fan
// triangle whose opposite edge has inward normal direction n_hat at distance
// h, with edge coordinates t in [t_u, t_v]:
//   integral of 1/r  dA = h * (asinh(t_v/h) - asinh(t_u/h))
//   integral of u(q) dA = (h^2/2) (asinh(t_v/h) - asinh(t_u/h)) n_hat
//                         + (h/2) (r_v - r_u) e_hat.
struct InverseDistanceMoments {
  double m0 = 0.0;      // integral of 1/r
  Vec2 m1{0.0, 0.0};    // integral of (q - p)/r
};

InverseDistanceMoments inverse_distance_moments(std::span<const Vec2> verts,
                                                const Vec2& p) {
  const std::size_t n = verts.size();
  double scale2 = 0.0;
  for (const Vec2& v : verts) {
    scale2 = std::max(scale2, (v - p).squaredNorm());
  }
  InverseDistanceMoments out;
  if (scale2 == 0.0) {
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = verts[i] - p;
    const Vec2 b = verts[(i + 1) % n] - p;
    const double cr = cross2(a, b);
    if (std::abs(cr) <= 1e-15 * scale2) {
      continue;
    }
    const Vec2 d = b - a;
    const double inv_len = 1.0 / d.norm();
    const Vec2 e_hat = d * inv_len;
    const double tu = a.dot(e_hat);
    const double tv = b.dot(e_hat);
    const double h = std::abs(cr) * inv_len;
    const double ru = a.norm();
    const double rv = b.norm();
    const double dasinh = std::asinh(tv / h) - std::asinh(tu / h);
    const Vec2 n_hat = (a - tu * e_hat) / h;
    const double m0 = h * dasinh;
    const Vec2 m1 = 0.5 * h * h * dasinh * n_hat + 0.5 * h * (rv - ru) * e_hat;
    if (cr > 0.0) {
      out.m0 += m0;
      out.m1 += m1;
    } else {
      out.m0 -= m0;
      out.m1 -= m1;
    }
  }
  return out;
}

}  // namespace

WeiszfeldResult weiszfeld_median(const ConvexPolygon& region, const Vec2& init,
                                 int max_iterations, double tol) {
  if (max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be positive");
  }
  const double diam =
      (region.bbox().hi - region.bbox().lo).norm();
  WeiszfeldResult res;
  res.point = init;
  for (int it = 1; it <= max_iterations; ++it) {
    res.iterations = it;
    const auto mom = inverse_distance_moments(region.vertices(), res.point);
    if (!(mom.m0 > 0.0) || !std::isfinite(mom.m0)) {
      break;  // degenerate region; keep the current point
    }
    const Vec2 step = mom.m1 / mom.m0;
    res.point += step;
    if (step.norm() <= tol * diam) {
      res.converged = true;
      break;
    }
  }
  return res;
}

HoneycombPlacement honeycomb_placement(std::size_t m, const Environment& env) {
  if (m == 0) {
    throw std::invalid_argument("point count must be positive");
  }
  const double area = env.area();
  const Vec2 center = env.boundary.centroid();
  const double pitch0 = std::sqrt(2.0 * area / (std::sqrt(3.0) *
                                                static_cast<double>(m)));

  // Distance from the centroid to the boundary along a unit direction.
  const auto& hull = env.boundary.vertices();
  const auto ray_exit = [&](const Vec2& dir) {
    double t_exit = std::numeric_limits<double>::infinity();
    const std::size_t n = hull.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 e = hull[(i + 1) % n] - hull[i];
      const Vec2 normal{e.y(), -e.x()};  // outward for counter-clockwise order
      const double denom = normal.dot(dir);
      if (denom > 0.0) {
        const double t = normal.dot(hull[i] - center) / denom;
        t_exit = std::min(t_exit, std::max(t, 0.0));
      }
    }
    return t_exit;
  };

  double circumradius = 0.0;
  for (const Vec2& v : hull) {
    circumradius = std::max(circumradius, (v - center).norm());
  }

  // Candidate lattice sites with their scale thresholds: site u stays inside
  // the environment for every lattice scale c <= s(u).
  struct Candidate {
    Vec2 u;
    double s;
  };
  std::vector<Candidate> cands;
  double reach = 3.0 * circumradius;
  for (int attempt = 0; attempt < 4; ++attempt) {
    cands.clear();
    const double row = pitch0 * std::sqrt(3.0) / 2.0;
    const int j_max = static_cast<int>(std::ceil(reach / row));
    for (int j = -j_max; j <= j_max; ++j) {
      const double y = row * static_cast<double>(j);
      const double x_off = (j & 1) ? 0.5 * pitch0 : 0.0;
      const int i_max =
          static_cast<int>(std::ceil((reach + std::abs(x_off)) / pitch0));
      for (int i = -i_max; i <= i_max; ++i) {
        const Vec2 u{pitch0 * static_cast<double>(i) + x_off, y};
        const double norm = u.norm();
        if (norm > reach) {
          continue;
        }
        const double s = (norm == 0.0)
                             ? std::numeric_limits<double>::infinity()
                             : ray_exit(u / norm) / norm;
        cands.push_back({u, s});
      }
    }
    if (cands.size() >= m + 1) {
      break;
    }
    reach *= 2.0;
  }
  if (cands.size() < m) {
    throw std::invalid_argument("point count too large for the environment");
  }

  std::sort(cands.begin(), cands.end(), [](const Candidate& a,
                                           const Candidate& b) {
    if (a.s != b.s) {
      return a.s > b.s;
    }
    if (a.u.x() != b.u.x()) {
      return a.u.x() < b.u.x();
    }
    return a.u.y() < b.u.y();
  });

  const double t_m = cands[m - 1].s;
  const double t_next = (m < cands.size()) ? cands[m].s : 0.0;
  const double tie_tol =
      1e-9 * std::max(std::isinf(t_m) ? t_next : t_m, 1e-300);
  const bool clean_gap =
      std::isinf(t_m) ? !std::isinf(t_next) : (t_m - t_next > tie_tol);

  HoneycombPlacement out;
  double scale = 0.0;
  if (clean_gap) {
    // Clean gap: any scale strictly between the two thresholds selects
    // exactly the first m sites.
    scale = std::isinf(t_m) ? t_next + 1.0 : 0.5 * (t_m + t_next);
    out.exact_count = true;
  } else {
    // A symmetry orbit straddles the cut.  Take the whole tied block and
    // trim it deterministically (largest angle first).
    std::size_t hi = m;
    while (hi < cands.size() && t_m - cands[hi].s <= tie_tol) {
      ++hi;
    }
    std::size_t lo = m - 1;
    while (lo > 0 && cands[lo - 1].s - t_m <= tie_tol) {
      --lo;
    }
    const double below = (hi < cands.size()) ? cands[hi].s : 0.0;
    scale = 0.5 * (t_m + below);
    std::sort(cands.begin() + static_cast<std::ptrdiff_t>(lo),
              cands.begin() + static_cast<std::ptrdiff_t>(hi),
              [](const Candidate& a, const Candidate& b) {
                const double aa = std::atan2(a.u.y(), a.u.x());
                const double ab = std::atan2(b.u.y(), b.u.x());
                if (aa != ab) {
                  return aa < ab;
                }
                if (a.u.x() != b.u.x()) {
                  return a.u.x() < b.u.x();
                }
                return a.u.y() < b.u.y();
              });
    out.exact_count = false;
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("degenerate lattice scaling");
  }

  out.points.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.points.push_back(center + scale * cands[i].u);
  }
  out.pitch = scale * pitch0;
  for (const Vec2& p : out.points) {
    if (!env.contains(p)) {
      throw std::logic_error("lattice site escaped the environment");
    }
  }
  return out;
}

namespace {

// Nudge apart any pair of points closer than the Voronoi duplicate
// tolerance.  Returns the number of nudges applied.
int separate_coincident(std::vector<Vec2>& pts, const Environment& env,
                        std::mt19937_64& rng) {
  constexpr double kTol = 1e-9;
  const double nudge = 1e-6 * std::sqrt(env.area());
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  int events = 0;
  for (int round = 0; round < 8; ++round) {
    bool clean = true;
    for (std::size_t i = 0; i < pts.size() && clean; ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if ((pts[i] - pts[j]).norm() < kTol) {
          clean = false;
          const double a = angle(rng);
          Vec2 moved = pts[j] + nudge * Vec2{std::cos(a), std::sin(a)};
          for (int tries = 0; tries < 64 && !env.contains(moved); ++tries) {
            const double b = angle(rng);
            moved = pts[j] + nudge * Vec2{std::cos(b), std::sin(b)};
          }
          pts[j] = moved;
          ++events;
          break;
        }
      }
    }
    if (clean) {
      return events;
    }
  }
  return events;
}

}  // namespace

MedianSolution lloyd_median_descent(std::size_t m, const Environment& env,
                                    std::uint64_t seed, int max_iterations,
                                    double rel_tol) {
  if (m == 0) {
    throw std::invalid_argument("point count must be positive");
  }
  if (max_iterations < 0) {
    throw std::invalid_argument("max_iterations must be non-negative");
  }
  const double area = env.area();
  const auto seeding = honeycomb_placement(m, env);

  std::mt19937_64 rng = make_engine(derive_seed(seed, "median-jitter"));
  const double jitter = 0.1 * std::sqrt(area / static_cast<double>(m));
  std::uniform_real_distribution<double> jd(-jitter, jitter);

  MedianSolution sol;
  sol.points.reserve(m);
  for (const Vec2& p : seeding.points) {
    Vec2 q = p;
    for (int tries = 0; tries < 64; ++tries) {
      const Vec2 cand = p + Vec2{jd(rng), jd(rng)};
      if (env.contains(cand)) {
        q = cand;
        break;
      }
    }
    sol.points.push_back(q);
  }
  sol.collapse_events += separate_coincident(sol.points, env, rng);

  auto cells = voronoi_partition(sol.points, env);
  std::vector<double> cell_cost(m);
  double objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    cell_cost[i] = cells[i].first_moment(sol.points[i]);
    objective += cell_cost[i];
  }
  objective /= area;
  sol.trace.push_back(objective);

  for (int it = 1; it <= max_iterations; ++it) {
    sol.iterations = it;
    std::vector<Vec2> next = sol.points;
    for (std::size_t i = 0; i < m; ++i) {
      const auto res =
          weiszfeld_median(cells[i], sol.points[i], 100, 1e-9);
      // Accept only if the exact cell objective does not get worse, so the
      // sweep objective is guaranteed non-increasing.
      if (cells[i].first_moment(res.point) <= cell_cost[i]) {
        next[i] = res.point;
      }
    }
    const int nudges = separate_coincident(next, env, rng);
    if (nudges > 0) {
      sol.collapse_events += nudges;
      std::cerr << "median descent: re-separated " << nudges
                << " coincident point(s) at sweep " << it << "\n";
    }

    cells = voronoi_partition(next, env);
    double next_objective = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      cell_cost[i] = cells[i].first_moment(next[i]);
      next_objective += cell_cost[i];
    }
    next_objective /= area;

    sol.points = std::move(next);
    sol.trace.push_back(next_objective);
    const double decrease = objective - next_objective;
    objective = next_objective;
    if (decrease <= rel_tol * std::abs(objective)) {
      sol.converged = true;
      break;
    }
  }
  sol.value = objective;
  return sol;
}

double evaluate_mean_distance(std::span<const Vec2> points,
                              const Environment& env) {
  const auto cells = voronoi_partition(points, env);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    total += cells[i].first_moment(points[i]);
  }
  return total / env.area();
}

WeberBounds weber_bounds(std::size_t m, const Environment& env) {
  if (m == 0) {
    throw std::invalid_argument("point count must be positive");
  }
  const double ratio = env.area() / static_cast<double>(m);
  return WeberBounds{
      (2.0 / 3.0) * std::sqrt(ratio / std::numbers::pi),
      0.38 * std::sqrt(ratio),
  };
}

}  // namespace dtrp
