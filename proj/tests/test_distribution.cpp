#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "assign/distribution.hpp"
#include "assign/error.hpp"
#include "test_support.hpp"

using namespace assign;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an assign::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("distribution") {

TEST_CASE("construction validates and renormalizes") {
  const auto dice = make_distribution({1, 2, 3, 4, 5, 6}, std::vector<double>(6, 1.0 / 6));
  CHECK(dice.size() == 6);
  CHECK(dice.f(0) == 0.0);
  CHECK(dice.f(6) == 1.0);
  CHECK(dice.mean() == doctest::Approx(3.5).epsilon(1e-15));

  const auto coin = make_distribution({0, 1}, {0.5, 0.5});
  CHECK(coin.size() == 2);

  CHECK(code_of([] { make_distribution({1, 2}, {0.7, 0.4}); }) ==
        ErrorCode::ProbSumOutOfTolerance);
  CHECK(code_of([] { make_distribution({1, 2, 3}, {0.5, 0.5}); }) ==
        ErrorCode::LengthMismatch);
  CHECK(code_of([] { make_distribution({2, 1}, {0.5, 0.5}); }) ==
        ErrorCode::UnsortedSupport);
  CHECK(code_of([] { make_distribution({1, 1}, {0.5, 0.5}); }) ==
        ErrorCode::UnsortedSupport);
  CHECK(code_of([] { make_distribution({1, 2}, {1.0, 0.0}); }) ==
        ErrorCode::NonPositiveProb);
  CHECK(code_of([] { make_distribution({1}, {1.0}); }) == ErrorCode::LengthMismatch);

  // within the 1e-9 gate: accepted and renormalized
  const auto nearly = make_distribution({0, 1}, {0.5, 0.5 + 5e-10});
  CHECK(nearly.f(2) == 1.0);
  CHECK(nearly.p(1) + nearly.p(2) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cdf") {
  const auto dice = DiscreteDistribution::fair_die();
  CHECK(cdf(dice, 3) == doctest::Approx(0.5));
  CHECK(cdf(dice, 0.5) == 0.0);
  CHECK(cdf(dice, 6) == 1.0);
  CHECK(cdf(dice, 3.99) == doctest::Approx(0.5));
  CHECK(cdf(dice, kInf) == 1.0);
  CHECK(cdf(dice, -kInf) == 0.0);
}

TEST_CASE("truncated mean") {
  const auto dice = DiscreteDistribution::fair_die();
  CHECK(truncated_mean(dice, -kInf, kInf) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(truncated_mean(dice, 3.5, kInf) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(truncated_mean(dice, 2, 2) == 0.0);
  CHECK(truncated_mean(dice, 4, 2) == 0.0);
  // half-open (lo, hi]: 3 excluded, 5 included
  CHECK(truncated_mean(dice, 3, 5) == doctest::Approx(9.0 / 6).epsilon(1e-15));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dist = testing::random_distribution(rng, 2 + trial % 7);
    CHECK(std::abs(truncated_mean(dist, -kInf, kInf) - dist.mean()) < 1e-12);
    std::uniform_real_distribution<double> u(dist.min() - 1, dist.max() + 1);
    double a = u(rng), b = u(rng), c = u(rng);
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    CHECK(std::abs(truncated_mean(dist, a, b) + truncated_mean(dist, b, c) -
                   truncated_mean(dist, a, c)) < 1e-12);
  }
}

TEST_CASE("binary KL divergence") {
  CHECK(kl_bernoulli(0.5, 0.5) == 0.0);
  CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(kl_bernoulli(0.0, 0.25) == doctest::Approx(-std::log(0.75)).epsilon(1e-15));
  CHECK(code_of([] { kl_bernoulli(1.1, 0.5); }) == ErrorCode::DomainError);
  CHECK(code_of([] { kl_bernoulli(0.5, 0.0); }) == ErrorCode::DomainError);
  CHECK(code_of([] { kl_bernoulli(0.5, 1.0); }) == ErrorCode::DomainError);

  // nonnegative, zero only at y = p, strictly convex in y
  for (double p : {0.05, 0.3, 0.5, 0.77, 0.95}) {
    const double h = 1e-3;
    for (double y = h; y < 1.0 - h; y += 0.01) {
      CHECK(kl_bernoulli(y, p) >= 0.0);
      if (std::abs(y - p) > 1e-9) CHECK(kl_bernoulli(y, p) > 0.0);
      const double second = kl_bernoulli(y + h, p) - 2 * kl_bernoulli(y, p) +
                            kl_bernoulli(y - h, p);
      CHECK(second > 0.0);
    }
    CHECK(kl_bernoulli(p, p) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("rate functions") {
  const auto dice = DiscreteDistribution::fair_die();
  const auto d = asymptotic_profile(dice).d;
  CHECK(rate_minus(dice, 2, dice.f(1)) == doctest::Approx(0.0));
  CHECK(rate_plus(dice, 2, dice.f(2)) == doctest::Approx(0.0));
  CHECK(std::abs(rate_minus(dice, 3, d[2]) - rate_plus(dice, 3, d[2])) < 1e-12);
  CHECK(std::abs(kl_bernoulli(d[1], 1.0 / 6) - kl_bernoulli(d[1], 1.0 / 3)) < 1e-12);
  CHECK(code_of([&] { rate_minus(dice, 1, 0.5); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { rate_plus(dice, 6, 0.5); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("asymptotic profile of the fair die") {
  const auto d = asymptotic_profile(DiscreteDistribution::fair_die()).d;
  REQUIRE(d.size() == 6);
  CHECK(d[0] == 0.0);
  CHECK(std::abs(d[1] - std::log(4.0 / 5) / std::log(2.0 / 5)) < 1e-12);
  CHECK(std::abs(d[2] - std::log(3.0 / 4) / std::log(1.0 / 2)) < 1e-12);
  CHECK(std::abs(d[3] - std::log(2.0 / 3) / std::log(1.0 / 2)) < 1e-12);
  CHECK(std::abs(d[4] - std::log(1.0 / 2) / std::log(2.0 / 5)) < 1e-12);
  CHECK(d[5] == 1.0);
  CHECK(d[1] == doctest::Approx(0.243529).epsilon(1e-6));
  CHECK(d[4] == doctest::Approx(0.756471).epsilon(1e-6));
}

TEST_CASE("asymptotic profile edge cases") {
  const auto three = make_distribution({1, 2, 3}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(std::abs(asymptotic_profile(three).d[1] - 0.5) < 1e-12);

  const auto coin = make_distribution({0, 1}, {0.3, 0.7});
  const auto d = asymptotic_profile(coin).d;
  CHECK(d == std::vector<double>{0.0, 1.0});
}

TEST_CASE("profile properties over random distributions") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 3 + trial % 6;
    const auto dist = testing::random_distribution(rng, k);
    const auto d = asymptotic_profile(dist).d;
    CHECK(d.front() == 0.0);
    CHECK(d.back() == 1.0);
    for (std::size_t i = 2; i + 1 <= k; ++i) {
      const double di = d[i - 1];
      CHECK(dist.f(i - 1) < di);
      CHECK(di < dist.f(i));
      CHECK(std::abs(rate_minus(dist, i, di) - rate_plus(dist, i, di)) < 1e-12);
    }
    for (std::size_t i = 1; i < k; ++i) CHECK(d[i - 1] < d[i]);
  }
}

TEST_CASE("profile symmetry for mirrored masses") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 3 + trial % 6;
    std::vector<double> probs(k), support(k);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    for (std::size_t i = 0; i < (k + 1) / 2; ++i) probs[i] = probs[k - 1 - i] = mass(rng);
    double total = 0;
    for (double p : probs) total += p;
    for (std::size_t i = 0; i < k; ++i) {
      probs[i] /= total;
      support[i] = static_cast<double>(i) * 1.5;
    }
    const auto d = asymptotic_profile(make_distribution(support, probs)).d;
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(d[k - 1 - i] - (1.0 - d[i])) < 1e-12);
  }
}

TEST_CASE("JSON distribution files") {
  const auto dist = distribution_from_json(R"({"support":[0,1],"probs":[0.25,0.75]})");
  CHECK(dist.p(2) == doctest::Approx(0.75));
  CHECK(code_of([] { distribution_from_json("{"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { distribution_from_json(R"({"support":[0,1]})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { distribution_from_json(R"({"support":[0,"a"],"probs":[0.5,0.5]})"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { distribution_from_json(R"({"support":[1,2],"probs":[0.7,0.4]})"); }) ==
        ErrorCode::ProbSumOutOfTolerance);
  CHECK(code_of([] { distribution_from_json(R"({"support":[3,2],"probs":[0.5,0.5]})"); }) ==
        ErrorCode::UnsortedSupport);
  const auto again = distribution_from_json(distribution_to_json(dist));
  CHECK(again.p(1) == dist.p(1));
  CHECK(again.x(2) == dist.x(2));
}

}  // TEST_SUITE
