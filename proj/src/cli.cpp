#include "assign/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "assign/analysis.hpp"
#include "assign/csv.hpp"
#include "assign/error.hpp"
#include "assign/oracle.hpp"
#include "assign/policy_engine.hpp"
#include "assign/service.hpp"
#include "assign/simulator.hpp"

namespace assign {

namespace {

struct Options {
  std::string dist_path;
  std::vector<std::size_t> horizons;
  std::size_t n = 0;
  std::string rewards = "linear";
  std::string policy = "optimal";
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t index = 2;
  std::size_t points = 101;
  double lo = 0.0;
  double hi = 1.0;
  std::string out = "-";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  std::string journal;
};

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out == "-") {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt.out);
  file << text;
}

std::vector<PolicyKind> parse_policies(const std::string& text) {
  std::vector<PolicyKind> kinds;
  std::stringstream list(text);
  std::string item;
  while (std::getline(list, item, ',')) {
    if (item == "all") {
      kinds = {PolicyKind::optimal, PolicyKind::dprofile, PolicyKind::uniform_random};
      continue;
    }
    kinds.push_back(parse_policy_kind(item));
  }
  if (kinds.empty()) throw Error(ErrorCode::UnknownKind, "no policy given");
  return kinds;
}

std::string run_simulate(const Options& opt, const DiscreteDistribution& dist) {
  const auto rewards = make_rewards(opt.rewards, opt.n);
  std::vector<SimulationRow> rows;
  for (PolicyKind kind : parse_policies(opt.policy)) {
    const PolicySpec spec = kind == PolicyKind::dprofile ? PolicySpec::dprofile(dist)
                                                         : PolicySpec{kind, {}};
    SimulationRow row;
    row.policy = kind;
    row.stats = monte_carlo(dist, rewards, spec, opt.trials, opt.seed);
    if (kind == PolicyKind::optimal) {
      row.has_target = true;
      row.target = remaining_value(dist, rewards);
    }
    rows.push_back(row);
  }
  return simulation_csv(rows);
}

std::string run_oracle(const Options& opt, const DiscreteDistribution& dist) {
  const auto rewards = make_rewards(opt.rewards, opt.n);
  const auto agreement = oracle_agreement(dist, rewards);
  return "oracle,engine,rel_gap\n" + format_real(agreement.oracle) + "," +
         format_real(agreement.engine) + "," + format_real(agreement.rel_gap) + "\n";
}

int run_serve(const Options& opt, std::ostream& err) {
  std::unique_ptr<SessionStore> store =
      opt.journal.empty() ? std::make_unique<SessionStore>()
                          : std::make_unique<SessionStore>(opt.journal);
  HttpServer server(*store, opt.static_dir);
  if (!server.bind(opt.host, opt.port)) {
    err << "error: cannot bind " << opt.host << ":" << opt.port << "\n";
    return 1;
  }
  err << "listening on http://" << opt.host << ":" << opt.port << "\n";
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Exact optimal policies for the discrete sequential assignment problem",
               "assign"};
  app.require_subcommand(1, 1);
  Options opt;

  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--dist", opt.dist_path, "distribution JSON file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "output path, - for standard output");
  };
  auto add_n = [&](CLI::App* sub, const char* help) {
    sub->add_option("--n", opt.n, help)->required()->check(CLI::PositiveNumber);
  };

  auto* profile = app.add_subcommand("profile", "asymptotic profile d_i as `i,d_i` lines");
  add_dist(profile);
  add_out(profile);

  auto* thresholds = app.add_subcommand("thresholds", "threshold row a_{N,n} as CSV");
  add_dist(thresholds);
  add_n(thresholds, "number of empty slots N");
  add_out(thresholds);

  auto* locs = app.add_subcommand("locations", "optimal ranks ell_N(i) as CSV");
  add_dist(locs);
  add_n(locs, "number of empty slots N");
  add_out(locs);

  auto* converge = app.add_subcommand("converge", "ell_N(i)/N against d_i");
  add_dist(converge);
  converge->add_option("--n", opt.horizons, "increasing horizons, e.g. 100,1000")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  add_out(converge);

  auto* rates = app.add_subcommand("rates", "large-deviation rates on a grid");
  add_dist(rates);
  rates->add_option("--index", opt.index, "interior support index i (2..k-1)")
      ->check(CLI::PositiveNumber);
  rates->add_option("--points", opt.points, "grid size")->check(CLI::PositiveNumber);
  rates->add_option("--lo", opt.lo, "grid start")->check(CLI::Range(0.0, 1.0));
  rates->add_option("--hi", opt.hi, "grid end")->check(CLI::Range(0.0, 1.0));
  add_out(rates);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo policy evaluation");
  add_dist(simulate);
  add_n(simulate, "number of slots N");
  simulate->add_option("--rewards", opt.rewards, "linear | geometric:B | PATH");
  simulate->add_option("--policy", opt.policy, "optimal | dprofile | random | all (comma list)");
  simulate->add_option("--trials", opt.trials, "number of games")->check(CLI::Range(2, 1 << 30));
  simulate->add_option("--seed", opt.seed, "base seed");
  add_out(simulate);

  auto* oracle = app.add_subcommand("oracle", "brute-force value vs threshold engine");
  add_dist(oracle);
  add_n(oracle, "number of slots (at most 12)");
  oracle->add_option("--rewards", opt.rewards, "linear | geometric:B | PATH");
  add_out(oracle);

  auto* audit = app.add_subcommand("audit", "ell_N(i) increments outside {0,+1}");
  add_dist(audit);
  add_n(audit, "largest horizon (>= 2)");
  add_out(audit);

  auto* serve = app.add_subcommand("serve", "HTTP game advisor");
  serve->add_option("--port", opt.port, "TCP port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", opt.host, "bind address");
  serve->add_option("--static", opt.static_dir, "web client directory")
      ->check(CLI::ExistingDirectory);
  serve->add_option("--journal", opt.journal, "append-only session journal");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (serve->parsed()) return run_serve(opt, err);

    const auto dist = load_distribution(opt.dist_path);
    std::string text;
    if (profile->parsed()) {
      text = profile_csv(asymptotic_profile(dist));
    } else if (thresholds->parsed()) {
      text = thresholds_csv(build_table(dist, opt.n, Retention::last).last());
    } else if (locs->parsed()) {
      text = locations_csv(dist, locations(dist, opt.n));
    } else if (converge->parsed()) {
      text = convergence_csv(convergence_study(dist, opt.horizons));
    } else if (rates->parsed()) {
      text = rate_csv(rate_table(dist, opt.index, linear_grid(opt.lo, opt.hi, opt.points)));
    } else if (simulate->parsed()) {
      text = run_simulate(opt, dist);
    } else if (oracle->parsed()) {
      text = run_oracle(opt, dist);
    } else if (audit->parsed()) {
      text = audit_csv(continuity_audit(dist, opt.n));
    }
    emit(opt, text, out);
    return 0;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace assign
