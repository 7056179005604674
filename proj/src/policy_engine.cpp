#include "assign/policy_engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <string>

#include "assign/error.hpp"

namespace assign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double ThresholdRow::at(std::size_t n) const {
  if (n == 0) return -kInf;
  if (n == horizon()) return kInf;
  if (n > horizon()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "threshold index " + std::to_string(n) + " exceeds horizon " +
                    std::to_string(horizon()));
  }
  return values_[n - 1];
}

std::size_t ThresholdRow::rank_for_atom(std::size_t atom) const noexcept {
  const auto it = std::partition_point(
      anchored_.begin(), anchored_.end(),
      [atom](const AnchoredValue& a) { return a.compare_atom(atom) < 0; });
  return static_cast<std::size_t>(it - anchored_.begin()) + 1;
}

ThresholdRow next_row(const DiscreteDistribution& dist, const ThresholdRow& prev,
                      Exec exec) {
  ThresholdRow row;
  row.anchored_.resize(prev.horizon());
  kernels::threshold_row(exec, dist, prev.anchored(), row.anchored_);

  const auto b = prev.anchored();
  const AnchoredValue bottom = AnchoredValue::atom(0);
  const AnchoredValue top = AnchoredValue::atom(dist.size() - 1);
  row.values_.resize(row.anchored_.size());
  double worst = 0.0;
  for (std::size_t n = 0; n < row.anchored_.size(); ++n) {
    // bracket [max(b_{n-1}, x_1), min(b_n, x_k)]
    const AnchoredValue& lo =
        n == 0 || compare(dist, b[n - 1], bottom) < 0 ? bottom : b[n - 1];
    const AnchoredValue& hi =
        n == b.size() || compare(dist, b[n], top) > 0 ? top : b[n];
    AnchoredValue& a = row.anchored_[n];
    const double raw = a.to_double(dist);
    if (compare(dist, a, lo) < 0) a = lo;
    if (compare(dist, a, hi) > 0) a = hi;
    row.values_[n] = a.to_double(dist);
    worst = std::max(worst, std::abs(row.values_[n] - raw));
  }
  row.clamp_ = worst / (dist.max() - dist.min());
  assert(row.clamp_ <= 1e-12 && "threshold recursion drifted out of bracket");
  return row;
}

ThresholdTable::ThresholdTable(DiscreteDistribution dist, std::size_t max_horizon,
                               Retention retention, Exec exec,
                               std::size_t cell_budget)
    : dist_(std::move(dist)), max_horizon_(max_horizon), retention_(retention) {
  if (max_horizon == 0) {
    throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1");
  }
  if (retention == Retention::all) {
    const double cells = 0.5 * static_cast<double>(max_horizon) *
                         static_cast<double>(max_horizon - 1);
    if (cells > static_cast<double>(cell_budget)) {
      throw Error(ErrorCode::CapacityError,
                  "retaining every row up to horizon " +
                      std::to_string(max_horizon) + " exceeds the cell budget");
    }
    rows_.reserve(max_horizon);
  }
  rows_.emplace_back();
  for (std::size_t h = 2; h <= max_horizon; ++h) {
    ThresholdRow next = next_row(dist_, rows_.back(), exec);
    max_clamp_ = std::max(max_clamp_, next.clamp_correction());
    if (retention == Retention::all) {
      rows_.push_back(std::move(next));
    } else {
      rows_.back() = std::move(next);
    }
  }
}

bool ThresholdTable::has_row(std::size_t horizon) const noexcept {
  if (retention_ == Retention::all) return horizon >= 1 && horizon <= max_horizon_;
  return horizon == max_horizon_;
}

const ThresholdRow& ThresholdTable::row(std::size_t horizon) const {
  if (!has_row(horizon)) {
    throw Error(ErrorCode::IndexOutOfRange,
                "row for horizon " + std::to_string(horizon) + " is not stored");
  }
  return retention_ == Retention::all ? rows_[horizon - 1] : rows_.back();
}

ThresholdTable build_table(const DiscreteDistribution& dist, std::size_t n,
                           Retention retention, Exec exec,
                           std::size_t cell_budget) {
  return ThresholdTable(dist, n, retention, exec, cell_budget);
}

LocationVector locations(const DiscreteDistribution& dist, const ThresholdRow& row) {
  LocationVector out;
  out.horizon = row.horizon();
  out.ell.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) out.ell.push_back(row.rank_for_atom(i));
  return out;
}

LocationVector locations(const DiscreteDistribution& dist, std::size_t n) {
  return locations(dist, build_table(dist, n, Retention::last).last());
}

void check_rewards(std::span<const double> rewards) {
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (!std::isfinite(rewards[i])) {
      throw Error(ErrorCode::UnsortedRewards, "rewards must be finite");
    }
    if (i > 0 && !(rewards[i - 1] < rewards[i])) {
      throw Error(ErrorCode::UnsortedRewards,
                  "rewards must be strictly increasing");
    }
  }
}

double remaining_value(const ThresholdRow& row, std::span<const double> rewards) {
  if (row.horizon() != rewards.size() + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "remaining_value needs the horizon m+1 row");
  }
  const auto a = row.interior();
  double total = 0.0;
  for (std::size_t n = 0; n < rewards.size(); ++n) total += rewards[n] * a[n];
  return total;
}

double remaining_value(const DiscreteDistribution& dist,
                       std::span<const double> rewards) {
  check_rewards(rewards);
  return remaining_value(build_table(dist, rewards.size() + 1, Retention::last).last(),
                         rewards);
}

Advice advise(const DiscreteDistribution& dist, const ThresholdRow& row,
              std::span<const double> rewards, double x) {
  if (rewards.empty()) {
    throw Error(ErrorCode::EmptyRewards, "no remaining slots to advise on");
  }
  const std::size_t atom = dist.index_of(x);
  if (atom == 0) {
    throw Error(ErrorCode::ValueNotInSupport, "value is not a support point");
  }
  check_rewards(rewards);
  const std::size_t m = rewards.size();
  if (row.horizon() != m) {
    throw Error(ErrorCode::InvalidArgument, "advise needs the horizon m row");
  }

  Advice advice;
  advice.slot_rank = row.rank_for_atom(atom - 1);
  advice.whatif.resize(m);
  const auto a = row.interior();
  // Summed in the same order as remaining_value over the reduced vector, so
  // whatif[j] equals x s_j + remaining_value(rest) bit for bit.
  for (std::size_t j = 0; j < m; ++j) {
    double rest = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      if (l < j) rest += rewards[l] * a[l];
      if (l > j) rest += rewards[l] * a[l - 1];
    }
    advice.whatif[j] = x * rewards[j] + rest;
  }
  return advice;
}

Advice advise(const DiscreteDistribution& dist, std::span<const double> rewards,
              double x) {
  if (rewards.empty()) {
    throw Error(ErrorCode::EmptyRewards, "no remaining slots to advise on");
  }
  return advise(dist, build_table(dist, rewards.size(), Retention::last).last(),
                rewards, x);
}

}  // namespace assign
