#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "assign/distribution.hpp"

namespace assign {

/// A real number stored as its nearest support atom plus a signed offset in
/// log form: x_anchor + sign * exp(log_offset).
///
/// Thresholds converge to the atoms exponentially fast in the horizon, so a
/// plain double rounds long runs of them onto x_i exactly and loses the
/// ordering that decides ell_N(i). Offsets down to exp(-1e308) survive here.
///
/// Invariant: |offset| is below the distance to either neighbouring atom, so
/// ordering against atoms reduces to comparing anchors, then signs.
struct AnchoredValue {
  std::uint32_t anchor = 0;  // 0-based support index
  std::int32_t sign = 0;     // -1, 0, +1
  double log_offset = -std::numeric_limits<double>::infinity();

  static AnchoredValue atom(std::size_t index) noexcept {
    return {static_cast<std::uint32_t>(index), 0,
            -std::numeric_limits<double>::infinity()};
  }

  double to_double(const DiscreteDistribution& dist) const noexcept {
    const double base = dist.support()[anchor];
    return sign == 0 ? base : base + sign * std::exp(log_offset);
  }

  /// Atoms x_j <= this value.
  std::size_t count_at_or_below() const noexcept {
    return anchor + (sign >= 0 ? 1u : 0u);
  }

  /// Sign of (this - x_atom).
  int compare_atom(std::size_t atom_index) const noexcept {
    if (anchor < atom_index) return -1;
    if (anchor > atom_index) return 1;
    return sign;
  }
};

/// Sign of (a - b).
inline int compare(const DiscreteDistribution& dist, const AnchoredValue& a,
                   const AnchoredValue& b) noexcept {
  if (a.anchor == b.anchor) {
    if (a.sign != b.sign) return a.sign < b.sign ? -1 : 1;
    if (a.sign == 0 || a.log_offset == b.log_offset) return 0;
    return (a.log_offset < b.log_offset ? -1 : 1) * a.sign;
  }
  const double da = a.to_double(dist);
  const double db = b.to_double(dist);
  if (da == db) return a.anchor < b.anchor ? -1 : 1;
  return da < db ? -1 : 1;
}

}  // namespace assign
