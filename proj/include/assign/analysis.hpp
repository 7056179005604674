#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "assign/distribution.hpp"
#include "assign/kernels.hpp"

namespace assign {

struct ConvergenceRow {
  std::size_t horizon = 0;  // N
  std::size_t index = 0;    // i, 1-based
  std::size_t ell = 0;
  double ell_over_n = 0.0;
  double d = 0.0;
  double gap = 0.0;  // |ell/N - d_i|
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;  // N outer, i inner
  struct MaxGap {
    std::size_t horizon;
    double max_gap;
  };
  std::vector<MaxGap> max_gaps;  // one per requested N
};

/// Compares ell_N(i)/N with d_i at every requested N. One incremental pass
/// to max(horizons) keeping a single row in memory. horizons must be
/// strictly increasing and >= 1 (InvalidArgument otherwise).
ConvergenceReport convergence_study(const DiscreteDistribution& dist,
                                    std::span<const std::size_t> horizons,
                                    Exec exec = Exec::parallel);

struct RateRow {
  double y = 0.0;
  double rate_minus = 0.0;
  double rate_plus = 0.0;
};

std::vector<RateRow> rate_table(const DiscreteDistribution& dist, std::size_t i,
                                std::span<const double> grid);

/// points equally spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

struct ContinuityViolation {
  std::size_t horizon = 0;  // N; the increment is ell_N(i) - ell_{N-1}(i)
  std::size_t index = 0;
  long long increment = 0;
};

/// Every increment ell_N(i) - ell_{N-1}(i) outside {0, +1} for 2 <= N <= n_max.
std::vector<ContinuityViolation> continuity_audit(const DiscreteDistribution& dist,
                                                  std::size_t n_max,
                                                  Exec exec = Exec::parallel);

}  // namespace assign
