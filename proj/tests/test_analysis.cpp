#include <doctest.h>

#include <cmath>
#include <random>

#include "assign/analysis.hpp"
#include "assign/csv.hpp"
#include "assign/error.hpp"
#include "test_support.hpp"

using namespace assign;

TEST_SUITE("analysis") {

TEST_CASE("convergence study at tiny horizons") {
  const auto dice = DiscreteDistribution::fair_die();
  const std::vector<std::size_t> two{2};
  const auto report = convergence_study(dice, two);
  REQUIRE(report.rows.size() == 6);
  const std::vector<std::size_t> expected{1, 1, 1, 2, 2, 2};
  const auto d = asymptotic_profile(dice).d;
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(report.rows[i].horizon == 2);
    CHECK(report.rows[i].index == i + 1);
    CHECK(report.rows[i].ell == expected[i]);
    CHECK(report.rows[i].gap == std::abs(expected[i] / 2.0 - d[i]));
  }

  const std::vector<std::size_t> one{1};
  const auto base = convergence_study(dice, one);
  for (const auto& row : base.rows) CHECK(row.ell == 1);
  CHECK(base.rows.back().gap == 0.0);
  REQUIRE(base.max_gaps.size() == 1);
}

TEST_CASE("convergence study shape and validation") {
  const auto dice = DiscreteDistribution::fair_die();
  const std::vector<std::size_t> horizons{100, 300, 1000};
  const auto report = convergence_study(dice, horizons);
  CHECK(report.rows.size() == 18);
  REQUIRE(report.max_gaps.size() == 3);
  CHECK(report.max_gaps[0].max_gap > report.max_gaps[2].max_gap);
  for (const auto& r : report.rows) {
    CHECK(r.ell >= 1);
    CHECK(r.ell <= r.horizon);
    CHECK(r.gap >= 0.0);
  }
  const std::vector<std::size_t> bad{10, 10};
  CHECK_THROWS_AS(convergence_study(dice, bad), Error);
  const std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(convergence_study(dice, zero), Error);
}

TEST_CASE("rate table endpoints and crossing") {
  const auto dice = DiscreteDistribution::fair_die();
  const double d2 = asymptotic_profile(dice).d[1];
  const std::vector<double> grid{dice.f(1), d2, dice.f(2)};
  const auto rows = rate_table(dice, 2, grid);
  CHECK(rows[0].rate_minus == doctest::Approx(0.0));
  CHECK(rows[0].rate_plus > 0.0);
  CHECK(std::abs(rows[1].rate_minus - rows[1].rate_plus) < 1e-12);
  CHECK(rows[2].rate_minus > 0.0);
  CHECK(rows[2].rate_plus == doctest::Approx(0.0));
  CHECK_THROWS_AS(rate_table(dice, 1, grid), Error);
  CHECK_THROWS_AS(rate_table(dice, 6, grid), Error);
}

TEST_CASE("rate difference changes sign once, next to d_i") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dist = trial == 0 ? DiscreteDistribution::fair_die()
                                 : testing::random_distribution(rng, 3 + trial % 6);
    const auto d = asymptotic_profile(dist).d;
    for (std::size_t i = 2; i + 1 <= dist.size(); ++i) {
      const double lo = dist.f(i - 1), hi = dist.f(i);
      // open interval: drop the endpoints
      auto grid = linear_grid(lo, hi, 10002);
      grid.erase(grid.begin());
      grid.pop_back();
      const auto rows = rate_table(dist, i, grid);
      int changes = 0;
      std::size_t where = 0;
      for (std::size_t j = 1; j < rows.size(); ++j) {
        const double a = rows[j - 1].rate_minus - rows[j - 1].rate_plus;
        const double b = rows[j].rate_minus - rows[j].rate_plus;
        if ((a < 0) != (b < 0)) {
          ++changes;
          where = j;
        }
      }
      CHECK(changes == 1);
      const double cell = (hi - lo) / 10001;
      CHECK(grid[where - 1] - cell <= d[i - 1]);
      CHECK(d[i - 1] <= grid[where] + cell);
    }
  }
}

TEST_CASE("continuity audit") {
  const auto dice = DiscreteDistribution::fair_die();
  CHECK(continuity_audit(dice, 2).empty());
  CHECK(continuity_audit(dice, 2000).empty());
  CHECK_THROWS_AS(continuity_audit(dice, 1), Error);

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5; ++trial) {
    const auto dist = testing::random_distribution(rng, 2 + trial);
    CHECK(continuity_audit(dist, 500).empty());
  }
}

TEST_CASE("CSV emitters") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(2.75) == "2.75");
  CHECK(std::stod(format_real(1.0 / 3)) == 1.0 / 3);

  const auto dice = DiscreteDistribution::fair_die();
  CHECK(thresholds_csv(build_table(dice, 3, Retention::last).last()) == "n,a\n1,2.75\n2,4.25\n");
  CHECK(locations_csv(dice, locations(dice, 2)) ==
        "i,x_i,ell\n1,1,1\n2,2,1\n3,3,1\n4,4,2\n5,5,2\n6,6,2\n");
  const auto profile = profile_csv(asymptotic_profile(dice));
  CHECK(profile.starts_with("1,0\n2,0.2435292026339"));
  CHECK(std::count(profile.begin(), profile.end(), '\n') == 6);

  const std::vector<ContinuityViolation> v{{5, 2, -1}};
  CHECK(audit_csv(v) == "N,i,increment\n5,2,-1\n");

  SimulationRow with_target;
  with_target.stats = {4, 2.0, 1.0, 0.5};
  with_target.has_target = true;
  with_target.target = 2.25;
  SimulationRow without;
  without.policy = PolicyKind::uniform_random;
  without.stats = {4, 1.5, 1.0, 0.5};
  const std::vector<SimulationRow> rows{with_target, without};
  CHECK(simulation_csv(rows) ==
        "policy,trials,mean,variance,std_error,target,abs_gap\n"
        "optimal,4,2,1,0.5,2.25,0.25\n"
        "uniform_random,4,1.5,1,0.5,,\n");
}

}  // TEST_SUITE
