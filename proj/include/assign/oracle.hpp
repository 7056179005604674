#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "assign/distribution.hpp"

namespace assign {

// Brute-force optimal values by backward induction over subsets of the
// remaining slots. Shares nothing with the threshold engine and serves as
// its ground truth for small slot counts.

inline constexpr std::size_t kOracleMaxSlots = 14;

struct SubsetValueTable {
  std::vector<double> rewards;
  /// values[mask] is the optimal expected reward when the slots whose bits
  /// are set in mask are still empty. values[0] = 0.
  std::vector<double> values;

  double value(std::uint32_t mask) const { return values.at(mask); }
  double full() const { return values.back(); }
};

/// value(S) = sum_j p_j max_{s in S} ( x_j r_s + value(S \ {s}) ).
/// Rewards need not be sorted. Throws TooManySlots above kOracleMaxSlots.
SubsetValueTable oracle_table(const DiscreteDistribution& dist,
                              std::span<const double> rewards);

double oracle_value(const DiscreteDistribution& dist,
                    std::span<const double> rewards);

struct OracleAgreement {
  double oracle = 0.0;
  double engine = 0.0;
  double rel_gap = 0.0;  // |oracle - engine| / max(1, |oracle|)
};

/// Requires at most 12 strictly increasing rewards.
OracleAgreement oracle_agreement(const DiscreteDistribution& dist,
                                 std::span<const double> rewards);

}  // namespace assign
