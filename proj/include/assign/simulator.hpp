#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assign/distribution.hpp"
#include "assign/kernels.hpp"
#include "assign/rng.hpp"

namespace assign {

enum class PolicyKind { optimal, dprofile, uniform_random };

std::string_view to_string(PolicyKind kind) noexcept;
/// Accepts optimal, dprofile, random and uniform_random; otherwise UnknownKind.
PolicyKind parse_policy_kind(std::string_view name);

struct PolicySpec {
  PolicyKind kind = PolicyKind::optimal;
  std::vector<double> profile;  // dprofile only: one fraction per support point

  static PolicySpec optimal() { return {PolicyKind::optimal, {}}; }
  static PolicySpec uniform_random() { return {PolicyKind::uniform_random, {}}; }
  static PolicySpec dprofile(std::vector<double> profile) {
    return {PolicyKind::dprofile, std::move(profile)};
  }
  /// dprofile driven by the distribution's asymptotic profile.
  static PolicySpec dprofile(const DiscreteDistribution& dist);
};

/// A placement rule for games of up to max_slots slots. Cheap to copy; the
/// optimal policy shares its location table read-only.
class Policy {
 public:
  PolicyKind kind() const noexcept { return kind_; }
  std::size_t max_slots() const noexcept { return max_slots_; }
  const DiscreteDistribution& dist() const noexcept { return *dist_; }

  /// 1-based rank among slots_left remaining rewards for the atom with
  /// 0-based index value_index. Only uniform_random touches rng.
  std::size_t choose(std::size_t value_index, std::size_t slots_left,
                     CounterRng& rng) const;

 private:
  friend Policy make_policy(const PolicySpec&, const DiscreteDistribution&,
                            std::size_t);
  PolicyKind kind_ = PolicyKind::optimal;
  std::size_t max_slots_ = 0;
  std::shared_ptr<const DiscreteDistribution> dist_;
  std::vector<double> profile_;
  // ell_m(i) for m = 1..max_slots, row-major with stride k
  std::shared_ptr<const std::vector<std::uint32_t>> ranks_;
};

/// Throws UnknownKind when kind-specific parameters are missing or
/// superfluous, and InvalidArgument for a zero slot count.
Policy make_policy(const PolicySpec& spec, const DiscreteDistribution& dist,
                   std::size_t max_slots);

struct GameRecord {
  std::vector<double> rolls;              // X_1..X_N
  std::vector<std::size_t> placements;    // J(1)..J(N), 1-based slots
  double reward = 0.0;                    // sum_t X_t r_{J(t)}, left to right
  std::uint64_t seed = 0;
};

GameRecord run_game(const Policy& policy, std::span<const double> rewards,
                    std::uint64_t seed);
GameRecord run_game(const DiscreteDistribution& dist, std::span<const double> rewards,
                    const PolicySpec& spec, std::uint64_t seed);

struct SummaryStats {
  std::size_t trials = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double std_error = 0.0;
};

SummaryStats summarize(std::span<const double> samples);

/// Trial t plays one game with seed derive_seed(seed, t). Per-trial rewards
/// are reduced in trial order, so the result does not depend on Exec or on
/// the thread count.
SummaryStats monte_carlo(const Policy& policy, std::span<const double> rewards,
                         std::size_t trials, std::uint64_t seed,
                         Exec exec = Exec::parallel);
SummaryStats monte_carlo(const DiscreteDistribution& dist,
                         std::span<const double> rewards, const PolicySpec& spec,
                         std::size_t trials, std::uint64_t seed,
                         Exec exec = Exec::parallel);

/// "linear" gives r_n = n, "geometric:B" gives r_n = B^(n-1) (B > 1);
/// anything else is a path to a JSON array or a whitespace/comma separated
/// list. Throws RewardOverflow when a reward or their sum is not finite.
std::vector<double> make_rewards(std::string_view spec, std::size_t n);

}  // namespace assign
