#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; the two produce bit-identical output for the same input,
// which the unit tests check and bench/ measures.

#include <span>

#include "assign/anchored.hpp"
#include "assign/distribution.hpp"

namespace assign {

enum class Exec { serial, parallel };

namespace kernels {

/// One backward-induction step. prev holds the N-1 interior thresholds of
/// horizon N (sorted); out receives the N interior thresholds of horizon
/// N+1, unclamped:
///
///   out[n] = E[X; b_{n-1} < X <= b_n] + b_{n-1} P[X <= b_{n-1}] + b_n P[X > b_n]
///
/// with b_0 = -inf, b_N = +inf and (+-inf) * 0 = 0. Each entry is evaluated
/// as an offset from the atom nearest to it: the weighted offsets of the
/// endpoints and of the atoms in between are summed separately by sign in
/// log space and then differenced once.
void threshold_row_serial(const DiscreteDistribution& dist,
                          std::span<const AnchoredValue> prev,
                          std::span<AnchoredValue> out);

void threshold_row_omp(const DiscreteDistribution& dist,
                       std::span<const AnchoredValue> prev,
                       std::span<AnchoredValue> out);

inline void threshold_row(Exec exec, const DiscreteDistribution& dist,
                          std::span<const AnchoredValue> prev,
                          std::span<AnchoredValue> out) {
  if (exec == Exec::serial) {
    threshold_row_serial(dist, prev, out);
  } else {
    threshold_row_omp(dist, prev, out);
  }
}

}  // namespace kernels
}  // namespace assign
