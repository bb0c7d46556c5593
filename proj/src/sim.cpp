#include "dtrp/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <thread>
#include <variant>

#include "dtrp/rng.hpp"

namespace dtrp {

namespace {

constexpr double kZ95 = 1.959963984540054;  // 97.5% normal quantile

// Fixed-shape pairwise summation: the reduction tree depends only on the
// index range, never on the thread schedule, so results are bitwise
// reproducible.  Proj maps a stored sample to the summand.
template <typename Proj>
double pairwise_sum(const std::vector<double>& values, std::size_t begin,
                    std::size_t end, Proj proj) {
  const std::size_t n = end - begin;
  if (n <= 16) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      sum += proj(values[i]);
    }
    return sum;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum(values, begin, mid, proj) +
         pairwise_sum(values, mid, end, proj);
}

const char* model_label(const RobotModel& model) {
  return std::holds_alternative<DIParams>(model) ? "di" : "dd";
}

}  // namespace

std::size_t resolve_worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) {
      n = 1;
    }
  }
  if (const char* cap_text = std::getenv("DTRP_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(cap_text, &end, 10);
    if (end != cap_text && *end == '\0' && cap > 0) {
      n = std::min<std::size_t>(n, cap);
    }
  }
  return std::clamp<std::size_t>(n, 1, 256);
}

CoverageEstimate estimate_coverage_cost(const Policy& policy,
                                        const Environment& env,
                                        std::size_t n_samples,
                                        std::uint64_t seed,
                                        std::size_t n_workers) {
  if (n_samples < 100) {
    throw std::invalid_argument("need at least 100 samples");
  }
  const std::size_t workers =
      std::min(resolve_worker_count(n_workers), n_samples);

  std::vector<double> waits(n_samples);
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto rng = make_engine(seed, i);
      const Vec2 q = sample_uniform(env, rng);
      waits[i] = wait_time(policy, q, rng);
    }
  };

  if (workers == 1) {
    run_range(0, n_samples);
  } else {
    const std::size_t chunk = (n_samples + workers - 1) / workers;
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n_samples, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
    for (const auto& err : errors) {
      if (err) {
        std::rethrow_exception(err);
      }
    }
  }

  const double n = static_cast<double>(n_samples);
  const double mean =
      pairwise_sum(waits, 0, n_samples, [](double w) { return w; }) / n;
  const double ss = pairwise_sum(waits, 0, n_samples, [mean](double w) {
    const double d = w - mean;
    return d * d;
  });
  const double variance = ss / (n - 1.0);
  return CoverageEstimate{mean, kZ95 * std::sqrt(variance / n), n_samples,
                          seed};
}

const char* to_string(PolicyFamily family) {
  switch (family) {
    case PolicyFamily::ms:
      return "ms";
    case PolicyFamily::sl:
      return "sl";
    case PolicyFamily::mc:
      return "mc";
  }
  throw std::logic_error("unknown policy family");
}

PolicyFamily policy_family_from_string(std::string_view name) {
  if (name == "ms") {
    return PolicyFamily::ms;
  }
  if (name == "sl") {
    return PolicyFamily::sl;
  }
  if (name == "mc") {
    return PolicyFamily::mc;
  }
  throw std::invalid_argument("unknown policy family: " + std::string(name));
}

Policy build_policy(PolicyFamily family, std::size_t m, const RobotModel& model,
                    const Environment& env, std::uint64_t seed) {
  switch (family) {
    case PolicyFamily::ms:
      return ms_build(m, model, env, seed);
    case PolicyFamily::sl: {
      const auto* di = std::get_if<DIParams>(&model);
      if (di == nullptr) {
        throw std::invalid_argument(
            "strip loitering requires the acceleration-limited model");
      }
      return sl_build(m, *di, env);
    }
    case PolicyFamily::mc: {
      const auto* dd = std::get_if<DDParams>(&model);
      if (dd == nullptr) {
        throw std::invalid_argument(
            "fanned teams require the differential-drive model");
      }
      return mc_build(m, *dd, env, seed);
    }
  }
  throw std::logic_error("unknown policy family");
}

SweepResult scaling_sweep(PolicyFamily family, const RobotModel& model,
                          const Environment& env,
                          std::vector<std::size_t> m_list,
                          std::size_t n_samples, std::uint64_t seed,
                          std::size_t n_workers) {
  std::sort(m_list.begin(), m_list.end());
  m_list.erase(std::unique(m_list.begin(), m_list.end()), m_list.end());
  if (m_list.size() < 4) {
    throw std::invalid_argument("need at least 4 distinct fleet sizes");
  }
  if (m_list.front() == 0) {
    throw std::invalid_argument("fleet sizes must be positive");
  }
  if (m_list.back() < 10 * m_list.front()) {
    throw std::invalid_argument("fleet sizes must span at least a decade");
  }

  SweepResult result;
  result.family = family;
  result.model = model_label(model);
  result.points.reserve(m_list.size());
  for (const std::size_t m : m_list) {
    const std::uint64_t row_seed = derive_seed(seed, to_string(family), m);
    const Policy policy = build_policy(family, m, model, env, row_seed);
    result.points.push_back(SweepPoint{
        m, estimate_coverage_cost(policy, env, n_samples, row_seed, n_workers)});
  }

  const std::size_t k = result.points.size();
  std::vector<double> xs(k);
  std::vector<double> ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double mean = result.points[i].estimate.mean;
    if (!(mean > 0.0)) {
      throw std::logic_error("non-positive mean wait in sweep");
    }
    xs[i] = std::log(static_cast<double>(result.points[i].m));
    ys[i] = std::log(mean);
  }
  double x_bar = 0.0;
  double y_bar = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    x_bar += xs[i];
    y_bar += ys[i];
  }
  x_bar /= static_cast<double>(k);
  y_bar /= static_cast<double>(k);
  double s_xx = 0.0;
  double s_xy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    s_xx += (xs[i] - x_bar) * (xs[i] - x_bar);
    s_xy += (xs[i] - x_bar) * (ys[i] - y_bar);
  }
  result.slope = s_xy / s_xx;
  result.intercept = y_bar - result.slope * x_bar;
  double sse = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ys[i] - result.intercept - result.slope * xs[i];
    sse += r * r;
  }
  result.slope_stderr =
      std::sqrt(sse / static_cast<double>(k - 2) / s_xx);
  return result;
}

NoCrossoverError::NoCrossoverError(const std::string& message,
                                   CrossoverPoint low, CrossoverPoint high)
    : std::runtime_error(message), low_(std::move(low)), high_(std::move(high)) {}

namespace {

struct Comparison {
  CrossoverPoint point;
  int sign = 0;  // sign of mean(first) - mean(second)
  bool confident = false;
};

}  // namespace

CrossoverResult find_crossover(PolicyFamily first, PolicyFamily second,
                               const RobotModel& model, const Environment& env,
                               std::size_t m_low, std::size_t m_high,
                               std::size_t n_samples, std::uint64_t seed,
                               std::size_t n_workers) {
  if (first == second) {
    throw std::invalid_argument("crossover needs two distinct policies");
  }
  if (m_low == 0 || m_low >= m_high) {
    throw std::invalid_argument("need 0 < m_low < m_high");
  }

  // Compare the two policies at one fleet size, escalating the sample count
  // (x4, twice) while the mean difference stays inside the combined
  // confidence width.
  auto compare_at = [&](std::size_t m) {
    Comparison cmp;
    const std::uint64_t seed_first = derive_seed(seed, to_string(first), m);
    const std::uint64_t seed_second = derive_seed(seed, to_string(second), m);
    const Policy policy_first = build_policy(first, m, model, env, seed_first);
    const Policy policy_second =
        build_policy(second, m, model, env, seed_second);
    std::size_t n = n_samples;
    for (int attempt = 0; attempt < 3; ++attempt) {
      cmp.point.m = m;
      cmp.point.first =
          estimate_coverage_cost(policy_first, env, n, seed_first, n_workers);
      cmp.point.second =
          estimate_coverage_cost(policy_second, env, n, seed_second, n_workers);
      const double diff = cmp.point.first.mean - cmp.point.second.mean;
      const double width = std::hypot(cmp.point.first.ci95_half_width,
                                      cmp.point.second.ci95_half_width);
      cmp.sign = diff < 0.0 ? -1 : 1;
      cmp.confident = std::abs(diff) > width;
      if (cmp.confident) {
        break;
      }
      n *= 4;
    }
    return cmp;
  };

  Comparison low = compare_at(m_low);
  Comparison high = compare_at(m_high);
  if (!low.confident || !high.confident || low.sign == high.sign) {
    throw NoCrossoverError(
        "policies do not confidently swap order on the given range", low.point,
        high.point);
  }

  std::size_t lo = m_low;
  std::size_t hi = m_high;
  bool confident = true;
  while (hi - lo > 2) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const Comparison probe = compare_at(mid);
    if (!probe.confident) {
      confident = false;
      break;
    }
    if (probe.sign == low.sign) {
      lo = mid;
      low = probe;
    } else {
      hi = mid;
      high = probe;
    }
  }

  CrossoverResult result;
  result.m_star = lo + (hi - lo) / 2;
  result.m_low = lo;
  result.m_high = hi;
  result.low = low.point;
  result.high = high.point;
  result.confident = confident;
  return result;
}

}  // namespace dtrp
