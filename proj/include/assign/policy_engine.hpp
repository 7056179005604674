#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "assign/distribution.hpp"
#include "assign/kernels.hpp"

namespace assign {

/// Thresholds a_{N,0} < a_{N,1} <= ... <= a_{N,N-1} < a_{N,N} for N empty
/// slots. Only the N-1 interior values are stored; the sentinels -inf and
/// +inf are implicit. An observed value goes to the n-th smallest remaining
/// reward when a_{N,n-1} < x <= a_{N,n}.
///
/// Each threshold is held exactly as an AnchoredValue; interior() is the same
/// row rounded to doubles for arithmetic and export.
class ThresholdRow {
 public:
  /// Horizon 1: no interior entries.
  ThresholdRow() = default;

  std::size_t horizon() const noexcept { return values_.size() + 1; }
  std::span<const double> interior() const noexcept { return values_; }
  std::span<const AnchoredValue> anchored() const noexcept { return anchored_; }

  /// a_{N,n} for 0 <= n <= N, sentinels included.
  double at(std::size_t n) const;

  /// 1-based rank min{ n : x_atom <= a_{N,n} } for a 0-based atom index,
  /// decided on the exact representation.
  std::size_t rank_for_atom(std::size_t atom) const noexcept;

  /// Largest correction applied when clamping this row into its bracket,
  /// relative to x_k - x_1. Anything beyond 1e-12 is an engine defect.
  double clamp_correction() const noexcept { return clamp_; }

 private:
  friend ThresholdRow next_row(const DiscreteDistribution&, const ThresholdRow&,
                               Exec);
  std::vector<AnchoredValue> anchored_;
  std::vector<double> values_;
  double clamp_ = 0.0;
};

/// Row for horizon N+1 from the row for horizon N. Output entry n is clamped
/// into [max(a_{N,n-1}, x_1), min(a_{N,n}, x_k)], which also makes the row
/// non-decreasing.
ThresholdRow next_row(const DiscreteDistribution& dist, const ThresholdRow& prev,
                      Exec exec = Exec::parallel);

enum class Retention { all, last };

/// Rows totaling at most this many cells may be retained in Retention::all.
inline constexpr std::size_t kDefaultCellBudget = std::size_t{1} << 28;

class ThresholdTable {
 public:
  ThresholdTable(DiscreteDistribution dist, std::size_t max_horizon,
                 Retention retention, Exec exec = Exec::parallel,
                 std::size_t cell_budget = kDefaultCellBudget);

  const DiscreteDistribution& dist() const noexcept { return dist_; }
  std::size_t max_horizon() const noexcept { return max_horizon_; }
  Retention retention() const noexcept { return retention_; }

  bool has_row(std::size_t horizon) const noexcept;
  /// Throws IndexOutOfRange for horizons that were not retained.
  const ThresholdRow& row(std::size_t horizon) const;
  const ThresholdRow& last() const noexcept { return rows_.back(); }

  /// Largest clamp_correction over every row computed during the build.
  double max_clamp_correction() const noexcept { return max_clamp_; }

 private:
  DiscreteDistribution dist_;
  std::size_t max_horizon_;
  Retention retention_;
  std::vector<ThresholdRow> rows_;
  double max_clamp_ = 0.0;
};

ThresholdTable build_table(const DiscreteDistribution& dist, std::size_t n,
                           Retention retention, Exec exec = Exec::parallel,
                           std::size_t cell_budget = kDefaultCellBudget);

/// Optimal ranks ell_N(1..k) for each support value with N empty slots.
struct LocationVector {
  std::size_t horizon = 0;
  std::vector<std::size_t> ell;
};

LocationVector locations(const DiscreteDistribution& dist, const ThresholdRow& row);
LocationVector locations(const DiscreteDistribution& dist, std::size_t n);

/// Throws UnsortedRewards unless rewards are finite and strictly increasing.
void check_rewards(std::span<const double> rewards);

/// Optimal expected total for m draws onto slots with rewards s_1 < ... < s_m:
/// sum_n s_n a_{m+1,n}. row must be the horizon m+1 row.
double remaining_value(const ThresholdRow& row, std::span<const double> rewards);
double remaining_value(const DiscreteDistribution& dist,
                       std::span<const double> rewards);

struct Advice {
  std::size_t slot_rank = 0;   // 1-based rank among the remaining rewards
  std::vector<double> whatif;  // x s_j + remaining_value(rewards without s_j)
};

/// row must be the horizon m row where m = rewards.size().
Advice advise(const DiscreteDistribution& dist, const ThresholdRow& row,
              std::span<const double> rewards, double x);
Advice advise(const DiscreteDistribution& dist, std::span<const double> rewards,
              double x);

}  // namespace assign
