#include "assign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "assign/error.hpp"
#include "assign/policy_engine.hpp"

namespace assign {

SubsetValueTable oracle_table(const DiscreteDistribution& dist,
                              std::span<const double> rewards) {
  const std::size_t m = rewards.size();
  if (m > kOracleMaxSlots) {
    throw Error(ErrorCode::TooManySlots,
                "oracle handles at most " + std::to_string(kOracleMaxSlots) +
                    " slots, got " + std::to_string(m));
  }
  SubsetValueTable table;
  table.rewards.assign(rewards.begin(), rewards.end());
  const std::uint32_t subsets = std::uint32_t{1} << m;
  table.values.assign(subsets, 0.0);

  const auto xs = dist.support();
  const auto ps = dist.probs();
  // S \ {s} < S numerically, so ascending masks see their dependencies first.
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    double expected = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t s = 0; s < m; ++s) {
        const std::uint32_t bit = std::uint32_t{1} << s;
        if (!(mask & bit)) continue;
        best = std::max(best, xs[j] * rewards[s] + table.values[mask ^ bit]);
      }
      expected += ps[j] * best;
    }
    table.values[mask] = expected;
  }
  return table;
}

double oracle_value(const DiscreteDistribution& dist,
                    std::span<const double> rewards) {
  return oracle_table(dist, rewards).full();
}

OracleAgreement oracle_agreement(const DiscreteDistribution& dist,
                                 std::span<const double> rewards) {
  if (rewards.size() > 12) {
    throw Error(ErrorCode::TooManySlots, "oracle_agreement handles at most 12 slots");
  }
  check_rewards(rewards);
  OracleAgreement out;
  out.oracle = oracle_value(dist, rewards);
  out.engine = remaining_value(dist, rewards);
  out.rel_gap = std::abs(out.oracle - out.engine) / std::max(1.0, std::abs(out.oracle));
  return out;
}

}  // namespace assign
