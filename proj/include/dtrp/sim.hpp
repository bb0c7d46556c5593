#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtrp/policies.hpp"

namespace dtrp {

// Monte Carlo evaluation of coverage policies: mean-wait estimation,
// log-log scaling sweeps over the fleet size, and location of the fleet
// size at which one policy overtakes another.
//
// Determinism contract: every sample i draws from its own counter-derived
// substream make_engine(seed, i), and reductions are fixed-shape pairwise
// sums over the per-sample results, so estimates are bitwise reproducible
// for a fixed seed regardless of the worker count or thread schedule.

struct CoverageEstimate {
  double mean = 0.0;
  double ci95_half_width = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Worker count actually used: `requested`, or the hardware concurrency
/// when 0; capped by the DTRP_THREADS environment variable when set, and
/// clamped to [1, 256].
std::size_t resolve_worker_count(std::size_t requested);

/// Mean wait over n_samples uniform requests (n_samples >= 100), with a
/// 95% normal-approximation confidence half-width.
CoverageEstimate estimate_coverage_cost(const Policy& policy,
                                        const Environment& env,
                                        std::size_t n_samples,
                                        std::uint64_t seed,
                                        std::size_t n_workers = 0);

// ---------------------------------------------------------------------------
// Policy families.

enum class PolicyFamily { ms, sl, mc };

const char* to_string(PolicyFamily family);
PolicyFamily policy_family_from_string(std::string_view name);

/// Construct a policy of the family for the model.  Throws
/// std::invalid_argument for impossible pairings (strip loitering needs the
/// acceleration-limited model, fanned teams need differential drive).
Policy build_policy(PolicyFamily family, std::size_t m, const RobotModel& model,
                    const Environment& env, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Scaling sweeps.

struct SweepPoint {
  std::size_t m = 0;
  CoverageEstimate estimate;
};

struct SweepResult {
  PolicyFamily family = PolicyFamily::ms;
  std::string model;  // "di" or "dd"
  std::vector<SweepPoint> points;
  double slope = 0.0;        ///< d log(mean) / d log(m), ordinary least squares
  double intercept = 0.0;    ///< log(mean) at log(m) = 0
  double slope_stderr = 0.0;
};

/// Estimate the policy family at each fleet size and fit log(mean) against
/// log(m).  Requires at least four distinct fleet sizes spanning at least a
/// decade.  Each row is re-seeded from (seed, family label, m), so any row
/// can be reproduced in isolation.
SweepResult scaling_sweep(PolicyFamily family, const RobotModel& model,
                          const Environment& env,
                          std::vector<std::size_t> m_list,
                          std::size_t n_samples, std::uint64_t seed,
                          std::size_t n_workers = 0);

// ---------------------------------------------------------------------------
// Crossover search.

/// Head-to-head estimates for the two policies at one fleet size.
struct CrossoverPoint {
  std::size_t m = 0;
  CoverageEstimate first;
  CoverageEstimate second;
};

struct CrossoverResult {
  std::size_t m_star = 0;  ///< midpoint of the final bracket
  std::size_t m_low = 0;
  std::size_t m_high = 0;
  CrossoverPoint low;
  CrossoverPoint high;
  /// True when the bracket was narrowed to width <= 2 with confident signs
  /// at both ends; false when overlapping confidence intervals stopped the
  /// bisection early.
  bool confident = false;
};

/// Raised when the two policies do not confidently swap order between the
/// ends of the requested fleet-size range.
class NoCrossoverError : public std::runtime_error {
 public:
  NoCrossoverError(const std::string& message, CrossoverPoint low,
                   CrossoverPoint high);
  const CrossoverPoint& low() const { return low_; }
  const CrossoverPoint& high() const { return high_; }

 private:
  CrossoverPoint low_;
  CrossoverPoint high_;
};

/// Locate the fleet size where policy `second` overtakes policy `first` (or
/// vice versa) by integer bisection on the sign of the mean-wait difference.
/// A comparison is confident when |mean difference| exceeds the combined
/// ci95 half-widths in quadrature; ties are retried with 4x and then 16x the
/// sample count before the bracket is declared indeterminate.
CrossoverResult find_crossover(PolicyFamily first, PolicyFamily second,
                               const RobotModel& model, const Environment& env,
                               std::size_t m_low, std::size_t m_high,
                               std::size_t n_samples, std::uint64_t seed,
                               std::size_t n_workers = 0);

}  // namespace dtrp
