#include "assign/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "assign/error.hpp"
#include "assign/policy_engine.hpp"

namespace assign {

std::size_t sample_index(const DiscreteDistribution& dist, CounterRng& rng) noexcept {
  const double u = rng.uniform();
  const auto cum = dist.cum();
  // first i with f_i > u; f_k = 1 > u always
  const auto it = std::upper_bound(cum.begin() + 1, cum.end(), u);
  return static_cast<std::size_t>(it - (cum.begin() + 1));
}

std::string_view to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::optimal: return "optimal";
    case PolicyKind::dprofile: return "dprofile";
    case PolicyKind::uniform_random: return "uniform_random";
  }
  return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "optimal") return PolicyKind::optimal;
  if (name == "dprofile") return PolicyKind::dprofile;
  if (name == "random" || name == "uniform_random") return PolicyKind::uniform_random;
  throw Error(ErrorCode::UnknownKind, "unknown policy '" + std::string(name) + "'");
}

PolicySpec PolicySpec::dprofile(const DiscreteDistribution& dist) {
  return dprofile(asymptotic_profile(dist).d);
}

Policy make_policy(const PolicySpec& spec, const DiscreteDistribution& dist,
                   std::size_t max_slots) {
  if (max_slots == 0) {
    throw Error(ErrorCode::InvalidArgument, "a game needs at least one slot");
  }
  const bool wants_profile = spec.kind == PolicyKind::dprofile;
  if (wants_profile != !spec.profile.empty()) {
    throw Error(ErrorCode::UnknownKind,
                wants_profile ? "dprofile policy needs a profile vector"
                              : "only the dprofile policy takes a profile");
  }
  if (wants_profile && spec.profile.size() != dist.size()) {
    throw Error(ErrorCode::LengthMismatch,
                "profile length must equal the support size");
  }

  Policy policy;
  policy.kind_ = spec.kind;
  policy.max_slots_ = max_slots;
  policy.dist_ = std::make_shared<const DiscreteDistribution>(dist);
  policy.profile_ = spec.profile;
  if (spec.kind == PolicyKind::optimal) {
    const std::size_t k = dist.size();
    auto ranks = std::make_shared<std::vector<std::uint32_t>>(max_slots * k);
    ThresholdRow row;
    for (std::size_t m = 1; m <= max_slots; ++m) {
      if (m > 1) row = next_row(dist, row);
      for (std::size_t i = 0; i < k; ++i) {
        (*ranks)[(m - 1) * k + i] = static_cast<std::uint32_t>(row.rank_for_atom(i));
      }
    }
    policy.ranks_ = std::move(ranks);
  }
  return policy;
}

std::size_t Policy::choose(std::size_t value_index, std::size_t slots_left,
                           CounterRng& rng) const {
  switch (kind_) {
    case PolicyKind::optimal:
      return (*ranks_)[(slots_left - 1) * dist_->size() + value_index];
    case PolicyKind::dprofile: {
      const double target = std::ceil(profile_[value_index] * static_cast<double>(slots_left));
      return static_cast<std::size_t>(
          std::clamp(target, 1.0, static_cast<double>(slots_left)));
    }
    case PolicyKind::uniform_random:
      return static_cast<std::size_t>(rng.below(slots_left)) + 1;
  }
  return 1;
}

namespace {

// Plays one game; fills record when non-null. Both entry points go through
// here so Monte Carlo samples equal run_game rewards exactly.
double play(const Policy& policy, std::span<const double> rewards,
            std::uint64_t seed, std::vector<std::size_t>& remaining,
            GameRecord* record) {
  const auto& dist = policy.dist();
  const std::size_t n = rewards.size();
  remaining.resize(n);
  for (std::size_t s = 0; s < n; ++s) remaining[s] = s + 1;

  CounterRng rng(seed);
  double total = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t idx = sample_index(dist, rng);
    const double x = dist.support()[idx];
    const std::size_t rank = policy.choose(idx, remaining.size(), rng);
    const std::size_t slot = remaining[rank - 1];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(rank - 1));
    total += x * rewards[slot - 1];
    if (record) {
      record->rolls.push_back(x);
      record->placements.push_back(slot);
    }
  }
  return total;
}

void check_game(const Policy& policy, std::span<const double> rewards) {
  if (rewards.empty()) {
    throw Error(ErrorCode::EmptyRewards, "a game needs at least one slot");
  }
  check_rewards(rewards);
  if (rewards.size() > policy.max_slots()) {
    throw Error(ErrorCode::InvalidArgument,
                "policy was built for at most " + std::to_string(policy.max_slots()) +
                    " slots");
  }
}

}  // namespace

GameRecord run_game(const Policy& policy, std::span<const double> rewards,
                    std::uint64_t seed) {
  check_game(policy, rewards);
  GameRecord record;
  record.seed = seed;
  record.rolls.reserve(rewards.size());
  record.placements.reserve(rewards.size());
  std::vector<std::size_t> remaining;
  record.reward = play(policy, rewards, seed, remaining, &record);
  return record;
}

GameRecord run_game(const DiscreteDistribution& dist, std::span<const double> rewards,
                    const PolicySpec& spec, std::uint64_t seed) {
  check_rewards(rewards);
  return run_game(make_policy(spec, dist, std::max<std::size_t>(rewards.size(), 1)),
                  rewards, seed);
}

SummaryStats summarize(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "summary needs at least two samples");
  }
  const double count = static_cast<double>(samples.size());
  double sum = 0.0;
  for (double v : samples) sum += v;
  const double mean = sum / count;
  double ss = 0.0;
  for (double v : samples) ss += (v - mean) * (v - mean);
  SummaryStats stats;
  stats.trials = samples.size();
  stats.mean = mean;
  stats.variance = ss / (count - 1.0);
  stats.std_error = std::sqrt(stats.variance / count);
  return stats;
}

SummaryStats monte_carlo(const Policy& policy, std::span<const double> rewards,
                         std::size_t trials, std::uint64_t seed, Exec exec) {
  if (trials < 2) {
    throw Error(ErrorCode::InvalidArgument, "monte_carlo needs at least two trials");
  }
  check_game(policy, rewards);
  std::vector<double> samples(trials);

  if (exec == Exec::serial) {
    std::vector<std::size_t> remaining;
    for (std::size_t t = 0; t < trials; ++t) {
      samples[t] = play(policy, rewards, derive_seed(seed, t), remaining, nullptr);
    }
  } else {
    const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel
    {
      std::vector<std::size_t> remaining;
#pragma omp for schedule(static)
      for (std::int64_t t = 0; t < count; ++t) {
        const auto trial = static_cast<std::uint64_t>(t);
        samples[trial] = play(policy, rewards, derive_seed(seed, trial), remaining, nullptr);
      }
    }
  }
  return summarize(samples);
}

SummaryStats monte_carlo(const DiscreteDistribution& dist,
                         std::span<const double> rewards, const PolicySpec& spec,
                         std::size_t trials, std::uint64_t seed, Exec exec) {
  check_rewards(rewards);
  return monte_carlo(make_policy(spec, dist, std::max<std::size_t>(rewards.size(), 1)),
                     rewards, trials, seed, exec);
}

namespace {

std::vector<double> read_reward_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open rewards file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    try {
      return nlohmann::json::parse(text).get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::ParseError, std::string("bad rewards JSON: ") + e.what());
    }
  }
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream tokens(text);
  std::vector<double> out;
  std::string token;
  while (tokens >> token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::ParseError, "bad reward value '" + token + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<double> make_rewards(std::string_view spec, std::size_t n) {
  std::vector<double> rewards;
  if (spec == "linear") {
    rewards.resize(n);
    for (std::size_t i = 0; i < n; ++i) rewards[i] = static_cast<double>(i + 1);
  } else if (spec.starts_with("geometric:")) {
    const std::string base_text(spec.substr(10));
    double base = 0.0;
    auto [ptr, ec] = std::from_chars(base_text.data(), base_text.data() + base_text.size(), base);
    if (ec != std::errc() || ptr != base_text.data() + base_text.size() || !(base > 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "geometric base must be a number > 1");
    }
    rewards.resize(n);
    for (std::size_t i = 0; i < n; ++i) rewards[i] = std::pow(base, static_cast<double>(i));
  } else {
    rewards = read_reward_file(std::string(spec));
    if (n != 0 && rewards.size() != n) {
      throw Error(ErrorCode::LengthMismatch,
                  "rewards file has " + std::to_string(rewards.size()) +
                      " entries, expected " + std::to_string(n));
    }
  }
  double sum = 0.0;
  for (double r : rewards) {
    sum += std::abs(r);
    if (!std::isfinite(r) || !std::isfinite(sum)) {
      throw Error(ErrorCode::RewardOverflow,
                  "rewards overflow double precision; use fewer slots or a smaller base");
    }
  }
  check_rewards(rewards);
  return rewards;
}

}  // namespace assign
