// Command-line front end for the coverage-policy library: continuous-median
// solves, Monte Carlo wait estimates, scaling sweeps, crossover search,
// bound tables, and reachable-area tables.  Results are CSV (stdout or
// --out); diagnostics and summaries go to stderr; sweeps can also render a
// log-log SVG plot.
//
// Exit codes: 0 success, 2 configuration error, 3 analysis-negative
// (no crossover on the requested range).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "dtrp/bounds.hpp"
#include "dtrp/dynamics.hpp"
#include "dtrp/geometry.hpp"
#include "dtrp/median.hpp"
#include "dtrp/policies.hpp"
#include "dtrp/sim.hpp"
#include "dtrp/svg.hpp"

namespace {

using namespace dtrp;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Options {
  std::string model = "di";
  double vmax = 1.0;
  double umax = 1.0;
  double rho = 0.1;
  double wmax = 1.0;

  double side = 1.0;
  std::size_t m = 1;
  std::vector<std::size_t> m_list;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::string out;
  std::string svg;
  std::string policy;
  std::string policy_a;
  std::string policy_b;
  std::string reachable_model = "dd";
  std::vector<double> t_list;

  RobotModel robot_model() const {
    if (model == "di") {
      return DIParams{vmax, umax};
    }
    if (model == "dd") {
      return DDParams{rho, wmax};
    }
    throw std::invalid_argument("unknown model: " + model +
                                " (expected di or dd)");
  }
};

const char* model_name(const RobotModel& model) {
  return std::holds_alternative<DIParams>(model) ? "di" : "dd";
}

void add_model_flags(CLI::App* sub, Options& o) {
  sub->add_option("--model", o.model, "robot model: di or dd");
  sub->add_option("--vmax", o.vmax, "top speed (di)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--umax", o.umax, "acceleration limit (di)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--rho", o.rho, "half wheelbase (dd)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--wmax", o.wmax, "wheel speed limit (dd)")
      ->check(CLI::PositiveNumber);
}

void add_run_flags(CLI::App* sub, Options& o) {
  sub->add_option("--side", o.side, "side length of the square environment")
      ->check(CLI::PositiveNumber);
  sub->add_option("--samples", o.samples, "Monte Carlo samples per estimate");
  sub->add_option("--seed", o.seed, "master random seed");
  sub->add_option("--out", o.out, "write CSV here instead of stdout");
}

/// CSV destination: --out path when given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        throw std::invalid_argument("cannot open output file: " + path);
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_estimate_header(std::ostream& os) {
  os << "m,policy,model,mean_wait,ci95_half,n_samples,seed\n";
}

void write_estimate_row(std::ostream& os, std::size_t m, const char* policy,
                        const char* model, const CoverageEstimate& est) {
  os << m << ',' << policy << ',' << model << ',' << fmt(est.mean) << ','
     << fmt(est.ci95_half_width) << ',' << est.n_samples << ',' << est.seed
     << '\n';
}

void run_median(const Options& o) {
  const Environment env = Environment::square(o.side);
  const MedianSolution sol = lloyd_median_descent(o.m, env, o.seed);
  const WeberBounds wb = weber_bounds(o.m, env);

  OutputTarget out(o.out);
  out.stream() << "index,x,y\n";
  for (std::size_t i = 0; i < sol.points.size(); ++i) {
    out.stream() << i << ',' << fmt(sol.points[i].x()) << ','
                 << fmt(sol.points[i].y()) << '\n';
  }
  std::cerr << "median: m=" << o.m << " side=" << fmt(o.side)
            << " seed=" << o.seed << '\n';
  std::cerr << "median: value=" << fmt(sol.value)
            << " weber_lower=" << fmt(wb.lower)
            << " weber_upper=" << fmt(wb.upper)
            << " iterations=" << sol.iterations
            << " converged=" << (sol.converged ? 1 : 0) << '\n';
}

void run_estimate(const Options& o) {
  const Environment env = Environment::square(o.side);
  const RobotModel model = o.robot_model();
  const PolicyFamily family = policy_family_from_string(o.policy);
  const Policy policy = build_policy(family, o.m, model, env, o.seed);
  const CoverageEstimate est =
      estimate_coverage_cost(policy, env, o.samples, o.seed);

  OutputTarget out(o.out);
  write_estimate_header(out.stream());
  write_estimate_row(out.stream(), o.m, to_string(family), model_name(model),
                     est);

  const double lower =
      wait_lower_mean_distance(model, weber_bounds(o.m, env).lower);
  double upper = 0.0;
  switch (family) {
    case PolicyFamily::ms:
      upper = ms_wait_upper(
          model, evaluate_mean_distance(std::get<MSPolicy>(policy).stations, env),
          env);
      break;
    case PolicyFamily::sl:
      upper = sl_wait_upper(o.m, std::get<DIParams>(model), env).finite_m;
      break;
    case PolicyFamily::mc:
      upper = mc_wait_upper(o.m, std::get<DDParams>(model), env).finite_m;
      break;
  }
  std::cerr << "estimate: policy=" << to_string(family)
            << " model=" << model_name(model) << " m=" << o.m
            << " samples=" << o.samples << " seed=" << o.seed
            << " workers=" << resolve_worker_count(0) << '\n';
  std::cerr << "estimate: mean=" << fmt(est.mean)
            << " ci95=" << fmt(est.ci95_half_width) << '\n';
  std::cerr << "estimate: bound_lower=" << fmt(lower)
            << " bound_upper=" << fmt(upper) << '\n';
}

void run_sweep(const Options& o) {
  const Environment env = Environment::square(o.side);
  const RobotModel model = o.robot_model();
  const PolicyFamily family = policy_family_from_string(o.policy);
  const SweepResult res =
      scaling_sweep(family, model, env, o.m_list, o.samples, o.seed);

  OutputTarget out(o.out);
  write_estimate_header(out.stream());
  for (const SweepPoint& point : res.points) {
    write_estimate_row(out.stream(), point.m, to_string(family),
                       res.model.c_str(), point.estimate);
  }
  std::cerr << "sweep: policy=" << to_string(family) << " model=" << res.model
            << " rows=" << res.points.size() << " samples=" << o.samples
            << " seed=" << o.seed << '\n';
  std::cerr << "sweep: slope=" << fmt(res.slope)
            << " slope_stderr=" << fmt(res.slope_stderr)
            << " intercept=" << fmt(res.intercept) << '\n';

  if (!o.svg.empty()) {
    LogLogPlot plot;
    char title[128];
    std::snprintf(title, sizeof title,
                  "%s/%s mean wait vs fleet size (fit slope %.3g)",
                  to_string(family), res.model.c_str(), res.slope);
    plot.title = title;
    plot.x_label = "fleet size m";
    plot.y_label = "mean wait";
    for (const SweepPoint& point : res.points) {
      plot.points.emplace_back(static_cast<double>(point.m),
                               point.estimate.mean);
    }
    plot.reference_slopes = {{0.0, "0"},
                             {-0.25, "-1/4"},
                             {-1.0 / 3.0, "-1/3"},
                             {-0.5, "-1/2"}};
    std::ofstream svg_file(o.svg);
    if (!svg_file) {
      throw std::invalid_argument("cannot open SVG file: " + o.svg);
    }
    svg_file << render_loglog_svg(plot);
    std::cerr << "sweep: svg=" << o.svg << '\n';
  }
}

void run_crossover(const Options& o) {
  if (o.m_list.size() < 2) {
    throw std::invalid_argument(
        "crossover needs --m-list with at least two fleet sizes");
  }
  const Environment env = Environment::square(o.side);
  const RobotModel model = o.robot_model();
  const PolicyFamily first = policy_family_from_string(o.policy_a);
  const PolicyFamily second = policy_family_from_string(o.policy_b);
  const std::size_t m_low = *std::min_element(o.m_list.begin(), o.m_list.end());
  const std::size_t m_high =
      *std::max_element(o.m_list.begin(), o.m_list.end());

  const CrossoverResult res = find_crossover(first, second, model, env, m_low,
                                             m_high, o.samples, o.seed);

  OutputTarget out(o.out);
  write_estimate_header(out.stream());
  write_estimate_row(out.stream(), res.low.m, to_string(first),
                     model_name(model), res.low.first);
  write_estimate_row(out.stream(), res.low.m, to_string(second),
                     model_name(model), res.low.second);
  write_estimate_row(out.stream(), res.high.m, to_string(first),
                     model_name(model), res.high.first);
  write_estimate_row(out.stream(), res.high.m, to_string(second),
                     model_name(model), res.high.second);
  std::cerr << "crossover: first=" << to_string(first)
            << " second=" << to_string(second) << " model=" << model_name(model)
            << " range=[" << m_low << ',' << m_high << "]" << '\n';
  std::cerr << "crossover: m_star=" << res.m_star << " bracket=[" << res.m_low
            << ',' << res.m_high << "] confident=" << (res.confident ? 1 : 0)
            << '\n';
}

void run_bounds(const Options& o) {
  const Environment env = Environment::square(o.side);
  const RobotModel model = o.robot_model();
  const double hm = weber_bounds(o.m, env).lower;
  const auto rows = collect_bounds(model, o.m, env, hm);

  OutputTarget out(o.out);
  out.stream() << "name,model,m,value,kind\n";
  for (const BoundReport& row : rows) {
    out.stream() << row.name << ',' << row.model << ',' << row.m << ','
                 << fmt(row.value) << ',' << to_string(row.kind) << '\n';
  }
  std::cerr << "bounds: model=" << model_name(model) << " m=" << o.m
            << " side=" << fmt(o.side);
  if (std::holds_alternative<DIParams>(model)) {
    const auto& p = std::get<DIParams>(model);
    std::cerr << " vmax=" << fmt(p.v_max) << " umax=" << fmt(p.u_max);
  } else {
    const auto& p = std::get<DDParams>(model);
    std::cerr << " rho=" << fmt(p.rho) << " wmax=" << fmt(p.w_max);
  }
  std::cerr << " mean_distance_input=" << fmt(hm) << " (analytic lower)\n";
}

void run_reachable(const Options& o) {
  if (o.reachable_model != "dd") {
    throw std::invalid_argument(
        "reachable tabulates the differential-drive primitive; only --model "
        "dd is supported");
  }
  const DDParams params{o.rho, o.wmax};
  validate(params);

  std::vector<double> ts = o.t_list;
  if (ts.empty()) {
    // Default: eight times spanning the small-time window of the bounds.
    const double t_window =
        params.rho * std::numbers::pi / (2.0 * params.w_max);
    for (int i = 1; i <= 8; ++i) {
      ts.push_back(t_window * static_cast<double>(i) / 8.0);
    }
  }

  OutputTarget out(o.out);
  out.stream() << "t,primitive_area,lower_bound,upper_bound,within_window\n";
  for (const double t : ts) {
    if (!(t > 0.0)) {
      throw std::invalid_argument("times must be positive");
    }
    const double area = dd_primitive_reachable_area(t, params);
    const AreaBounds bounds = dd_reachable_area_bounds(t, params);
    out.stream() << fmt(t) << ',' << fmt(area) << ',' << fmt(bounds.lower)
                 << ',' << fmt(bounds.upper) << ','
                 << (bounds.valid ? 1 : 0) << '\n';
  }
  std::cerr << "reachable: model=dd rho=" << fmt(params.rho)
            << " wmax=" << fmt(params.w_max) << " rows=" << ts.size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coverage-policy toolbox: continuous medians, Monte Carlo wait "
      "estimates, scaling sweeps, crossover search, and analytic bounds for "
      "robot fleets under light load"};
  app.set_config("--config", "",
                 "INI config file; put keys in [subcommand] sections, "
                 "command-line flags override");
  app.require_subcommand(1);

  Options o;

  CLI::App* median =
      app.add_subcommand("median", "solve the continuous m-median problem");
  median->add_option("--m", o.m, "number of median points")
      ->check(CLI::PositiveNumber);
  median->add_option("--side", o.side, "side length of the square environment")
      ->check(CLI::PositiveNumber);
  median->add_option("--seed", o.seed, "master random seed");
  median->add_option("--out", o.out, "write CSV here instead of stdout");

  CLI::App* estimate = app.add_subcommand(
      "estimate", "Monte Carlo mean-wait estimate for one policy");
  estimate->add_option("--policy", o.policy, "policy family: ms, sl, or mc")
      ->required();
  estimate->add_option("--m", o.m, "fleet size")->check(CLI::PositiveNumber);
  add_model_flags(estimate, o);
  add_run_flags(estimate, o);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "estimate a policy across fleet sizes and fit the log-log slope");
  sweep->add_option("--policy", o.policy, "policy family: ms, sl, or mc")
      ->required();
  sweep->add_option("--m-list", o.m_list, "comma-separated fleet sizes")
      ->required()
      ->delimiter(',');
  sweep->add_option("--svg", o.svg, "also render a log-log plot to this file");
  add_model_flags(sweep, o);
  add_run_flags(sweep, o);

  CLI::App* crossover = app.add_subcommand(
      "crossover", "locate the fleet size where one policy overtakes another");
  crossover->add_option("--policy-a", o.policy_a, "first policy family")
      ->required();
  crossover->add_option("--policy-b", o.policy_b, "second policy family")
      ->required();
  crossover
      ->add_option("--m-list", o.m_list,
                   "fleet sizes; the search runs on [min, max]")
      ->required()
      ->delimiter(',');
  add_model_flags(crossover, o);
  add_run_flags(crossover, o);

  CLI::App* bounds =
      app.add_subcommand("bounds", "print the analytic wait bounds for a model");
  bounds->add_option("--m", o.m, "fleet size")->check(CLI::PositiveNumber);
  bounds->add_option("--side", o.side, "side length of the square environment")
      ->check(CLI::PositiveNumber);
  bounds->add_option("--out", o.out, "write CSV here instead of stdout");
  add_model_flags(bounds, o);

  CLI::App* reachable = app.add_subcommand(
      "reachable",
      "tabulate the differential-drive reachable area against its bounds");
  reachable->add_option("--model", o.reachable_model, "must be dd");
  reachable->add_option("--rho", o.rho, "half wheelbase")
      ->check(CLI::PositiveNumber);
  reachable->add_option("--wmax", o.wmax, "wheel speed limit")
      ->check(CLI::PositiveNumber);
  reachable->add_option("--t-list", o.t_list, "comma-separated times")
      ->delimiter(',');
  reachable->add_option("--out", o.out, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(median)) {
      run_median(o);
    } else if (app.got_subcommand(estimate)) {
      run_estimate(o);
    } else if (app.got_subcommand(sweep)) {
      run_sweep(o);
    } else if (app.got_subcommand(crossover)) {
      run_crossover(o);
    } else if (app.got_subcommand(bounds)) {
      run_bounds(o);
    } else if (app.got_subcommand(reachable)) {
      run_reachable(o);
    }
    return 0;
  } catch (const NoCrossoverError& e) {
    std::cerr << "crossover: " << e.what() << '\n';
    std::cerr << "crossover: at m=" << e.low().m
              << " first mean=" << fmt(e.low().first.mean)
              << " second mean=" << fmt(e.low().second.mean) << '\n';
    std::cerr << "crossover: at m=" << e.high().m
              << " first mean=" << fmt(e.high().first.mean)
              << " second mean=" << fmt(e.high().second.mean) << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
