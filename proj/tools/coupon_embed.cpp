// coupon_embed: analyze, evaluate and simulate multiple coupon collection
// processes, and decide embeddability into continuous-time semigroups.
//
// Exit codes: 0 success / embeddable, 1 input error, 2 not embeddable
// (or not a generator), 3 singular, 4 verification failures.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mccp/embedding.hpp"
#include "mccp/report.hpp"
#include "mccp/star_algebra.hpp"
#include "mccp/semigroup.hpp"
#include "mccp/sim.hpp"
#include "mccp/spec_io.hpp"
#include "mccp/verify.hpp"
#include "mccp/version.hpp"

namespace {

using nlohmann::json;

struct GlobalOptions {
  std::string output = "text";  // text | json
  bool quiet = false;
  double tolerance = mccp::kVerdictTol;
  double singular_tolerance = mccp::kSingularTol;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
};

int exit_code_for(const mccp::Error& e) {
  switch (e.code()) {
    case mccp::ErrorCode::NotEmbeddable:
    case mccp::ErrorCode::NotGenerator:
      return 2;
    case mccp::ErrorCode::SingularMatrix:
      return 3;
    default:
      return 1;
  }
}

// Distribution carried by the spec; rates specs map through Exp, which is
// the time-1 law of the schedule they describe.
mccp::CouponDistribution spec_distribution(const mccp::ModelSpec& spec) {
  if (mccp::spec_defines_distribution(spec)) {
    return mccp::distribution_from_spec(spec);
  }
  const mccp::RateVector r = mccp::rates_from_spec(spec);
  return mccp::CouponDistribution(mccp::exp_closed(r.rates()), 1e-9);
}

// Generator parameters carried by the spec: direct rates, or the log
// parameters of an embeddable distribution.
mccp::RateVector spec_generator(const mccp::ModelSpec& spec, double tol,
                                double tol_singular) {
  if (spec.rates) {
    mccp::RateVector r = mccp::rates_from_spec(spec);
    if (!r.is_generator()) {
      mccp::fail(mccp::ErrorCode::NotGenerator,
                 "the listed rates are not a Markov generator");
    }
    return r;
  }
  const mccp::CouponDistribution p = mccp::distribution_from_spec(spec);
  const mccp::EmbeddabilityVerdict verdict =
      mccp::embeddability_verdict(p, tol, tol_singular);
  if (verdict.outcome == mccp::Embeddability::SingularNotEmbeddable) {
    mccp::fail(mccp::ErrorCode::SingularMatrix,
               "singular distribution: no generator exists");
  }
  if (verdict.outcome == mccp::Embeddability::NotEmbeddable) {
    mccp::fail(mccp::ErrorCode::NotEmbeddable,
               "distribution is not embeddable; witness " +
                   mccp::format_subset(verdict.witnesses.front()));
  }
  return *verdict.rates;
}

int run_analyze(const GlobalOptions& global, const std::string& spec_path,
                bool correlations) {
  const mccp::ModelSpec spec = mccp::load_model_spec(spec_path);
  const mccp::CouponDistribution p = spec_distribution(spec);
  mccp::AnalyzeOptions opts;
  opts.tolerance = global.tolerance;
  opts.tol_singular = global.singular_tolerance;
  opts.correlations = correlations;
  const mccp::AnalysisReport report = mccp::analyze(p, opts);
  if (!global.quiet) {
    std::cout << (global.output == "json" ? mccp::report_to_json(report)
                                          : mccp::report_to_text(report))
              << '\n';
  }
  return mccp::report_exit_code(report);
}

std::vector<double> parse_time_grid(const std::string& grid) {
  // "t0..t1:steps" -> steps+1 evenly spaced points including both ends.
  const auto dots = grid.find("..");
  const auto colon = grid.find(':', dots == std::string::npos ? 0 : dots + 2);
  if (dots == std::string::npos || colon == std::string::npos) {
    mccp::fail(mccp::ErrorCode::InvalidArgument,
               "grid format is t0..t1:steps, e.g. 0..2:8");
  }
  const double t0 = std::stod(grid.substr(0, dots));
  const double t1 = std::stod(grid.substr(dots + 2, colon - dots - 2));
  const long steps = std::stol(grid.substr(colon + 1));
  if (!(t1 > t0) || steps < 1) {
    mccp::fail(mccp::ErrorCode::InvalidArgument,
               "grid needs t1 > t0 and steps >= 1");
  }
  std::vector<double> times;
  for (long i = 0; i <= steps; ++i) {
    times.push_back(t0 + (t1 - t0) * static_cast<double>(i) /
                             static_cast<double>(steps));
  }
  return times;
}

int run_semigroup(const GlobalOptions& global, const std::string& spec_path,
                  const std::optional<double>& time,
                  const std::optional<std::string>& grid) {
  const mccp::ModelSpec spec = mccp::load_model_spec(spec_path);
  const mccp::RateVector r =
      spec_generator(spec, global.tolerance, global.singular_tolerance);

  std::vector<double> times;
  if (grid) {
    times = parse_time_grid(*grid);
  } else {
    times.push_back(time.value_or(1.0));
  }
  if (times.empty() || times.front() != 0.0) {
    times.insert(times.begin(), 0.0);  // the unit row is always included
  }

  const std::vector<mccp::Subset> order = mccp::subsets_by_cardinality(r.n());
  if (global.output == "json") {
    json doc;
    doc["tool"] = mccp::kToolName;
    doc["version"] = mccp::kToolVersion;
    doc["n"] = r.n();
    json cols = json::array();
    for (mccp::Subset k : order) {
      cols.push_back({{"mask", k}, {"elements", mccp::elements_of(k)}});
    }
    doc["subsets"] = std::move(cols);
    json rows = json::array();
    for (double t : times) {
      const mccp::CouponDistribution pt = mccp::semigroup_params(r, t);
      json row;
      row["t"] = t;
      json vals = json::array();
      for (mccp::Subset k : order) vals.push_back(pt[k]);
      row["p"] = std::move(vals);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    if (!global.quiet) std::cout << doc.dump(2) << '\n';
  } else {
    std::ostringstream out;
    out << "t";
    for (mccp::Subset k : order) {
      out << ",p(";
      const std::vector<int> elems = mccp::elements_of(k);
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out << '|';
        out << elems[i];
      }
      out << ')';
    }
    out << '\n' << std::setprecision(17);
    for (double t : times) {
      const mccp::CouponDistribution pt = mccp::semigroup_params(r, t);
      out << t;
      for (mccp::Subset k : order) out << ',' << pt[k];
      out << '\n';
    }
    if (!global.quiet) std::cout << out.str();
  }
  return 0;
}

void dump_trajectories(const std::string& path, bool continuous,
                       const mccp::ModelSpec& spec, const GlobalOptions& global,
                       std::size_t count, std::size_t steps, double horizon) {
  std::ofstream out(path);
  if (!out) {
    mccp::fail(mccp::ErrorCode::InvalidArgument,
               "cannot write trajectory file '" + path + "'");
  }
  // Trajectory dumps use a stream range disjoint from the estimators.
  for (std::size_t trial = 0; trial < count; ++trial) {
    mccp::Rng rng(global.seed, 0x7a000000ull + trial);
    if (continuous) {
      const mccp::RateVector r =
          spec_generator(spec, global.tolerance, global.singular_tolerance);
      mccp::write_trajectory_csv(out, mccp::run_continuous(r, horizon, 0, rng));
    } else {
      const mccp::CouponDistribution p = spec_distribution(spec);
      mccp::write_trajectory_csv(out, mccp::run_discrete(p, steps, 0, rng));
    }
  }
}

int run_simulate(const GlobalOptions& global, const std::string& spec_path,
                 const std::string& mode, std::size_t steps, double horizon,
                 const std::optional<std::string>& trajectory_path,
                 std::size_t trajectory_count) {
  const mccp::ModelSpec spec = mccp::load_model_spec(spec_path);
  json doc;
  doc["tool"] = mccp::kToolName;
  doc["version"] = mccp::kToolVersion;
  doc["mode"] = mode;
  doc["trials"] = global.trials;
  doc["seed"] = global.seed;
  std::ostringstream text;

  if (mode == "discrete") {
    const mccp::CouponDistribution p = spec_distribution(spec);
    const mccp::DenseMatrix estimate =
        mccp::empirical_transition(p, global.trials, global.seed);
    const double transition_dev =
        mccp::max_abs_diff(estimate, mccp::cm_from_params(p).to_dense());
    const mccp::SubsetVector marginal = mccp::empirical_discrete_marginal(
        p, steps, global.trials, global.seed ^ 0x9e3779b9ull);
    const double marginal_dev = mccp::max_abs_diff(
        marginal, mccp::cm_power_params_spectral(p, static_cast<long>(steps))
                      .probs());
    doc["transition_max_abs_deviation"] = transition_dev;
    doc["marginal_steps"] = steps;
    doc["marginal_max_abs_deviation"] = marginal_dev;
    text << "discrete simulation: " << global.trials << " trials, seed "
         << global.seed << '\n'
         << "one-step transition max |M_hat - M| = " << transition_dev << '\n'
         << "state law after " << steps << " steps, max deviation = "
         << marginal_dev << '\n';
  } else if (mode == "continuous") {
    const mccp::RateVector r =
        spec_generator(spec, global.tolerance, global.singular_tolerance);
    const mccp::SubsetVector marginal = mccp::empirical_continuous_marginal(
        r, horizon, global.trials, global.seed);
    const double marginal_dev =
        mccp::max_abs_diff(marginal, mccp::semigroup_params(r, horizon).probs());
    doc["horizon"] = horizon;
    doc["marginal_max_abs_deviation"] = marginal_dev;
    text << "continuous simulation: " << global.trials << " trials, seed "
         << global.seed << ", horizon " << horizon << '\n'
         << "state law at the horizon, max deviation = " << marginal_dev
         << '\n';
  } else {
    mccp::fail(mccp::ErrorCode::InvalidArgument,
               "mode must be 'discrete' or 'continuous'");
  }

  if (trajectory_path) {
    dump_trajectories(*trajectory_path, mode == "continuous", spec, global,
                      trajectory_count, steps, horizon);
    text << "wrote " << trajectory_count << " trajectories to "
         << *trajectory_path << '\n';
    doc["trajectory_file"] = *trajectory_path;
    doc["trajectory_count"] = trajectory_count;
  }

  if (!global.quiet) {
    std::cout << (global.output == "json" ? doc.dump(2) : text.str());
    if (global.output == "json") std::cout << '\n';
  }
  return 0;
}

int run_verify(const GlobalOptions& global,
               const std::optional<std::string>& spec_path,
               const std::vector<std::string>& random_args,
               const std::string& level, bool inject_fault) {
  mccp::VerifyOptions opts;
  opts.full = (level == "full");
  opts.inject_fault = inject_fault;

  std::vector<mccp::CheckResult> results;
  if (spec_path) {
    const mccp::ModelSpec spec = mccp::load_model_spec(*spec_path);
    results = mccp::verify_distribution(spec_distribution(spec), opts);
  } else if (random_args.size() == 3) {
    const int n = std::stoi(random_args[0]);
    const int count = std::stoi(random_args[1]);
    const std::uint64_t seed = std::stoull(random_args[2]);
    results = mccp::verify_random(n, count, seed, opts);
  } else {
    mccp::fail(mccp::ErrorCode::InvalidArgument,
               "verify needs a spec file or --random N COUNT SEED");
  }

  std::size_t failures = 0;
  for (const mccp::CheckResult& r : results) {
    if (!r.pass) ++failures;
    if (!global.quiet) std::cout << mccp::format_check_line(r) << '\n';
  }
  if (!global.quiet) {
    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " check(s) failed")
              << '\n';
  }
  return failures == 0 ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiple coupon collection processes: embeddability analysis, "
               "semigroups and simulation"};
  app.set_version_flag("--version", std::string(mccp::kToolVersion));
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--output", global.output, "report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--quiet", global.quiet, "suppress stdout reports");
  app.add_option("--tolerance", global.tolerance,
                 "verdict tolerance for the positivity test")
      ->capture_default_str();
  app.add_option("--singular-tolerance", global.singular_tolerance,
                 "threshold below which p_empty counts as 0")
      ->capture_default_str();
  app.add_option("--seed", global.seed, "simulation seed")
      ->capture_default_str();
  app.add_option("--trials", global.trials, "simulation trials")
      ->capture_default_str();

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "embeddability verdict and generator for a model spec");
  std::string analyze_spec;
  bool correlations = false;
  analyze->add_option("spec", analyze_spec, "JSON model spec file")->required();
  analyze->add_flag("--correlations", correlations,
                    "include the correlation table");

  // semigroup
  auto* semigroup = app.add_subcommand(
      "semigroup", "table of p(t) along the semigroup or flow");
  std::string semigroup_spec;
  double semigroup_time = 1.0;
  bool semigroup_time_set = false;
  std::string semigroup_grid;
  semigroup->add_option("spec", semigroup_spec, "JSON model spec file")
      ->required();
  auto* time_opt = semigroup->add_option("--time", semigroup_time,
                                         "single evaluation time");
  semigroup->add_option("--grid", semigroup_grid,
                        "time grid t0..t1:steps (e.g. 0..2:8)");
  semigroup->callback([&] { semigroup_time_set = time_opt->count() > 0; });

  // simulate
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo estimates against the exact laws");
  std::string simulate_spec;
  std::string mode = "discrete";
  std::size_t steps = 1;
  double horizon = 1.0;
  std::string trajectory_path;
  std::size_t trajectory_count = 10;
  simulate->add_option("spec", simulate_spec, "JSON model spec file")
      ->required();
  simulate->add_option("--mode", mode, "discrete or continuous")
      ->check(CLI::IsMember({"discrete", "continuous"}))
      ->capture_default_str();
  simulate->add_option("--steps", steps, "steps for the discrete marginal")
      ->capture_default_str();
  simulate->add_option("--horizon", horizon, "horizon for continuous mode")
      ->capture_default_str();
  simulate->add_option("--trajectories", trajectory_path,
                       "write sample trajectories to this CSV file");
  simulate->add_option("--trajectory-count", trajectory_count,
                       "number of trajectories to dump")
      ->capture_default_str();

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run the cross-check ledger (combinatorial vs series "
                "logarithms, partition identities, algebra laws)");
  std::string verify_spec;
  std::vector<std::string> random_args;
  std::string level = "quick";
  bool inject_fault = false;
  verify->add_option("spec", verify_spec, "JSON model spec file");
  verify->add_option("--random", random_args,
                     "N COUNT SEED: check random distributions on {1..N}")
      ->expected(3);
  verify->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt the generator parameters (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(analyze)) {
      return run_analyze(global, analyze_spec, correlations);
    }
    if (app.got_subcommand(semigroup)) {
      std::optional<double> t;
      if (semigroup_time_set) t = semigroup_time;
      std::optional<std::string> grid;
      if (!semigroup_grid.empty()) grid = semigroup_grid;
      return run_semigroup(global, semigroup_spec, t, grid);
    }
    if (app.got_subcommand(simulate)) {
      std::optional<std::string> traj;
      if (!trajectory_path.empty()) traj = trajectory_path;
      return run_simulate(global, simulate_spec, mode, steps, horizon, traj,
                          trajectory_count);
    }
    if (app.got_subcommand(verify)) {
      std::optional<std::string> spec;
      if (!verify_spec.empty()) spec = verify_spec;
      return run_verify(global, spec, random_args, level, inject_fault);
    }
  } catch (const mccp::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
