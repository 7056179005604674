#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace assign {

/// A finitely supported distribution on x_1 < ... < x_k with p_i > 0.
///
/// Probabilities are renormalized on construction so that the cumulative
/// array ends at exactly 1. Prefix sums of p_i and x_i p_i make every
/// interval query O(log k). Immutable after construction.
class DiscreteDistribution {
 public:
  /// Validates and renormalizes. Throws Error with LengthMismatch,
  /// UnsortedSupport, NonPositiveProb or ProbSumOutOfTolerance.
  DiscreteDistribution(std::vector<double> support, std::vector<double> probs);

  static DiscreteDistribution fair_die(int sides = 6);

  std::size_t size() const noexcept { return support_.size(); }
  std::span<const double> support() const noexcept { return support_; }
  std::span<const double> probs() const noexcept { return probs_; }
  /// f_0 = 0, f_i = p_1 + ... + p_i, f_k = 1. Length k + 1.
  std::span<const double> cum() const noexcept { return cum_; }
  /// Prefix sums of x_j p_j. Length k + 1.
  std::span<const double> cum_xp() const noexcept { return cum_xp_; }
  /// P[X > x_i] accumulated from the top, so surv()[k] = 0 exactly and small
  /// tails keep full relative precision. Length k + 1.
  std::span<const double> surv() const noexcept { return surv_; }

  double x(std::size_t i) const { return support_.at(i - 1); }  // 1-based
  double p(std::size_t i) const { return probs_.at(i - 1); }    // 1-based
  double f(std::size_t i) const { return cum_.at(i); }          // 0..k

  double min() const noexcept { return support_.front(); }
  double max() const noexcept { return support_.back(); }
  double mean() const noexcept { return cum_xp_.back(); }

  /// Number of atoms with x_i <= x. Infinite arguments are allowed.
  std::size_t count_at_or_below(double x) const noexcept;

  /// 1-based index of x in the support, or 0 when x is not an atom.
  std::size_t index_of(double x) const noexcept;

 private:
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> cum_;
  std::vector<double> cum_xp_;
  std::vector<double> surv_;
};

DiscreteDistribution make_distribution(std::vector<double> support,
                                       std::vector<double> probs);

/// P[X <= x].
double cdf(const DiscreteDistribution& dist, double x) noexcept;

/// E[X 1{lo < X <= hi}]; zero for an empty interval. lo and hi may be
/// infinite.
double truncated_mean(const DiscreteDistribution& dist, double lo,
                      double hi) noexcept;

/// Binary relative entropy y log(y/p) + (1-y) log((1-y)/(1-p)) with the
/// 0 log 0 = 0 convention. Throws DomainError outside y in [0,1], p in (0,1).
double kl_bernoulli(double y, double p);

/// Large-deviation rate for "at least yN draws fall strictly below x_i".
double rate_minus(const DiscreteDistribution& dist, std::size_t i, double y);
/// Large-deviation rate for "at least (1-y)N draws fall strictly above x_i".
double rate_plus(const DiscreteDistribution& dist, std::size_t i, double y);

struct AsymptoticProfile {
  std::vector<double> d;  // d[0] = d_1 = 0, d[k-1] = d_k = 1
};

/// Limit of ell_N(i)/N: the crossing point of rate_minus and rate_plus for
/// interior i, with d_1 = 0 and d_k = 1.
AsymptoticProfile asymptotic_profile(const DiscreteDistribution& dist);

/// Parses {"support": [...], "probs": [...]}. Malformed documents raise
/// ParseError; semantic failures raise the construction errors.
DiscreteDistribution distribution_from_json(const std::string& text);
DiscreteDistribution load_distribution(const std::string& path);
std::string distribution_to_json(const DiscreteDistribution& dist);

}  // namespace assign
