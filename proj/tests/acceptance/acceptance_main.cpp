// Prints one PASS/FAIL line per acceptance criterion; exit status is the
// number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance_config.hpp"
#include "assign/analysis.hpp"
#include "assign/cli.hpp"
#include "assign/csv.hpp"
#include "assign/oracle.hpp"
#include "assign/policy_engine.hpp"
#include "assign/simulator.hpp"
#include "test_support.hpp"

using namespace assign;
namespace cfg = assign::acceptance;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.ok) ++failures;
  std::printf("%s %d %s: %s\n", out.ok ? "PASS" : "FAIL", id, name, out.detail.c_str());
  std::fflush(stdout);
}

Outcome criterion_profile() {
  const std::vector<double> expected{0.0,
                                     std::log(4.0 / 5) / std::log(2.0 / 5),
                                     std::log(3.0 / 4) / std::log(1.0 / 2),
                                     std::log(2.0 / 3) / std::log(1.0 / 2),
                                     std::log(1.0 / 2) / std::log(2.0 / 5),
                                     1.0};
  const std::string path = std::string(ASSIGN_DATA_DIR) + "/dice.json";
  const auto dist = load_distribution(path);

  const auto start = Clock::now();
  const auto text = profile_csv(asymptotic_profile(dist));
  const double elapsed = seconds_since(start);

  // the same computation through the command-line front end
  std::ostringstream out, err;
  const int code = run_command({"assign", "profile", "--dist", path}, out, err);
  if (code != 0 || out.str() != text) return {false, "profile subcommand disagrees"};

  std::istringstream lines(text);
  std::string line;
  double worst = 0.0;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto comma = line.find(',');
    const double d = std::stod(line.substr(comma + 1));
    if (count < expected.size()) worst = std::max(worst, std::abs(d - expected[count]));
    ++count;
  }
  const bool ok = count == 6 && worst < cfg::kProfileTol && elapsed < cfg::kProfileSeconds;
  return {ok, fmt("max |d - closed form| = %.3g, %.3g s", worst, elapsed)};
}

Outcome criterion_rates() {
  std::mt19937_64 rng(cfg::kInstanceSeed);
  std::uniform_int_distribution<std::size_t> pick_k(3, 8);
  const auto start = Clock::now();
  double worst = 0.0;
  bool bracketed = true;
  for (std::size_t t = 0; t < cfg::kRateDistributions; ++t) {
    const auto dist = testing::random_distribution(rng, pick_k(rng));
    const auto d = asymptotic_profile(dist).d;
    for (std::size_t i = 2; i < dist.size(); ++i) {
      worst = std::max(worst, std::abs(rate_minus(dist, i, d[i - 1]) - rate_plus(dist, i, d[i - 1])));
      bracketed = bracketed && dist.f(i - 1) < d[i - 1] && d[i - 1] < dist.f(i);
    }
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst < cfg::kRateTol && bracketed && elapsed < cfg::kRateSeconds;
  return {ok, fmt("max |I- - I+| = %.3g, bracketed = %s, %.3g s", worst,
                  bracketed ? "yes" : "no", elapsed)};
}

Outcome criterion_oracle() {
  std::mt19937_64 rng(cfg::kInstanceSeed + 1);
  std::uniform_int_distribution<std::size_t> pick_k(2, cfg::kOracleMaxK);
  std::uniform_int_distribution<std::size_t> pick_m(1, cfg::kOracleMaxM);
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::size_t t = 0; t < cfg::kOracleInstances; ++t) {
    const auto dist = testing::random_distribution(rng, pick_k(rng));
    // the last few instances always use the full slot count
    const std::size_t m = t + 5 >= cfg::kOracleInstances ? cfg::kOracleMaxM : pick_m(rng);
    const auto rewards = testing::random_rewards(rng, m);
    worst = std::max(worst, oracle_agreement(dist, rewards).rel_gap);
  }
  const double elapsed = seconds_since(start);
  const bool ok = worst < cfg::kOracleRelTol && elapsed < cfg::kOracleSeconds;
  return {ok, fmt("%zu instances, max relative gap = %.3g, %.3g s", cfg::kOracleInstances,
                  worst, elapsed)};
}

Outcome criterion_hand() {
  const auto dice = DiscreteDistribution::fair_die();
  const auto table = build_table(dice, 3, Retention::all);
  const auto& two = table.row(2);
  const auto& three = table.row(3);
  const std::vector<double> rewards{1, 2};
  double worst = std::abs(two.at(1) - 3.5);
  worst = std::max(worst, std::abs(three.at(1) - 2.75));
  worst = std::max(worst, std::abs(three.at(2) - 4.25));
  worst = std::max(worst, std::abs(remaining_value(dice, rewards) - 11.25));
  const bool ok = two.interior().size() == 1 && three.interior().size() == 2 && worst < cfg::kHandTol;
  return {ok, fmt("max deviation = %.3g", worst)};
}

std::string convergence_text() {
  return convergence_csv(convergence_study(DiscreteDistribution::fair_die(), cfg::kConvergenceHorizons));
}

Outcome criterion_convergence(std::string& csv) {
  const auto dice = DiscreteDistribution::fair_die();
  const auto start = Clock::now();
  const auto report = convergence_study(dice, cfg::kConvergenceHorizons);
  const double elapsed = seconds_since(start);
  csv = convergence_csv(report);

  bool decreasing = true;
  std::string gaps;
  for (std::size_t j = 0; j < report.max_gaps.size(); ++j) {
    if (j > 0) decreasing = decreasing && report.max_gaps[j].max_gap < report.max_gaps[j - 1].max_gap;
    gaps += fmt("%sN=%zu: %.3g", j ? ", " : "", report.max_gaps[j].horizon,
                report.max_gaps[j].max_gap);
  }
  const double last = report.max_gaps.back().max_gap;
  const bool ok = decreasing && last < cfg::kConvergenceBound && elapsed < cfg::kConvergenceSeconds;
  return {ok, gaps + fmt(", %.3g s", elapsed)};
}

Outcome criterion_audit() {
  const auto start = Clock::now();
  std::size_t violations = continuity_audit(DiscreteDistribution::fair_die(),
                                            cfg::kAuditDiceHorizon).size();
  std::mt19937_64 rng(cfg::kInstanceSeed + 2);
  std::uniform_int_distribution<std::size_t> pick_k(2, 8);
  for (std::size_t t = 0; t < cfg::kAuditRandomDistributions; ++t) {
    const auto dist = testing::random_distribution(rng, pick_k(rng));
    violations += continuity_audit(dist, cfg::kAuditRandomHorizon).size();
  }
  const double elapsed = seconds_since(start);
  const bool ok = violations == 0 && elapsed < cfg::kAuditSeconds;
  return {ok, fmt("%zu violations, %.3g s", violations, elapsed)};
}

struct McResult {
  std::string csv;
  SummaryStats optimal, random;
  double target = 0.0;
};

McResult monte_carlo_run() {
  const auto dice = DiscreteDistribution::fair_die();
  const auto rewards = make_rewards("linear", cfg::kMcHorizon);
  McResult r;
  r.target = remaining_value(dice, rewards);
  r.optimal = monte_carlo(dice, rewards, PolicySpec::optimal(), cfg::kMcTrials, cfg::kMcSeed);
  r.random = monte_carlo(dice, rewards, PolicySpec::uniform_random(), cfg::kMcTrials, cfg::kMcSeed);
  const std::vector<SimulationRow> rows{
      {PolicyKind::optimal, r.optimal, true, r.target},
      {PolicyKind::uniform_random, r.random, true, cfg::kRandomBaseline}};
  r.csv = simulation_csv(rows);
  return r;
}

Outcome criterion_monte_carlo(std::string& csv) {
  const auto start = Clock::now();
  const auto r = monte_carlo_run();
  const double elapsed = seconds_since(start);
  csv = r.csv;
  const double z_opt = std::abs(r.optimal.mean - r.target) / r.optimal.std_error;
  const double z_rand = std::abs(r.random.mean - cfg::kRandomBaseline) / r.random.std_error;
  const double combined = std::hypot(r.optimal.std_error, r.random.std_error);
  const double separation = (r.optimal.mean - r.random.mean) / combined;
  const bool ok = z_opt < cfg::kMcSigmas && z_rand < cfg::kMcSigmas &&
                  separation > cfg::kMcSeparationSigmas && elapsed < cfg::kMcSeconds;
  return {ok, fmt("optimal %.2f vs %.3f (%.2f SE), random %.2f vs %.0f (%.2f SE), "
                  "separation %.0f SE, %.3g s",
                  r.optimal.mean, r.target, z_opt, r.random.mean, cfg::kRandomBaseline, z_rand,
                  separation, elapsed)};
}

}  // namespace

int main() {
  std::string convergence_first, mc_first;
  report(1, "closed-form profile", criterion_profile);
  report(2, "rate equality", criterion_rates);
  report(3, "oracle equivalence", criterion_oracle);
  report(4, "hand-checkable thresholds", criterion_hand);
  report(5, "convergence", [&] { return criterion_convergence(convergence_first); });
  report(6, "continuity audit", criterion_audit);
  report(7, "Monte Carlo agreement", [&] { return criterion_monte_carlo(mc_first); });
  report(8, "determinism", [&]() -> Outcome {
    const std::string convergence_again = convergence_text();
    const std::string mc_again = monte_carlo_run().csv;
    const bool same_conv = !convergence_first.empty() && convergence_again == convergence_first;
    const bool same_mc = !mc_first.empty() && mc_again == mc_first;
    return {same_conv && same_mc,
            fmt("convergence CSV %s (%zu bytes), simulation CSV %s (%zu bytes)",
                same_conv ? "identical" : "differs", convergence_again.size(),
                same_mc ? "identical" : "differs", mc_again.size())};
  });
  return failures;
}
