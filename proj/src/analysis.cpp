#include "assign/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "assign/error.hpp"
#include "assign/policy_engine.hpp"

namespace assign {

ConvergenceReport convergence_study(const DiscreteDistribution& dist,
                                    std::span<const std::size_t> horizons,
                                    Exec exec) {
  for (std::size_t j = 0; j < horizons.size(); ++j) {
    if (horizons[j] == 0 || (j > 0 && horizons[j] <= horizons[j - 1])) {
      throw Error(ErrorCode::InvalidArgument,
                  "horizons must be strictly increasing and >= 1");
    }
  }
  const auto profile = asymptotic_profile(dist);
  ConvergenceReport report;
  ThresholdRow row;
  std::size_t next = 0;
  while (next < horizons.size()) {
    if (row.horizon() == horizons[next]) {
      const std::size_t n = row.horizon();
      const auto loc = locations(dist, row);
      double worst = 0.0;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        ConvergenceRow r;
        r.horizon = n;
        r.index = i + 1;
        r.ell = loc.ell[i];
        r.ell_over_n = static_cast<double>(r.ell) / static_cast<double>(n);
        r.d = profile.d[i];
        r.gap = std::abs(r.ell_over_n - r.d);
        worst = std::max(worst, r.gap);
        report.rows.push_back(r);
      }
      report.max_gaps.push_back({n, worst});
      ++next;
      continue;
    }
    row = next_row(dist, row, exec);
  }
  return report;
}

std::vector<RateRow> rate_table(const DiscreteDistribution& dist, std::size_t i,
                                std::span<const double> grid) {
  std::vector<RateRow> rows;
  rows.reserve(grid.size());
  for (double y : grid) {
    rows.push_back({y, rate_minus(dist, i, y), rate_plus(dist, i, y)});
  }
  return rows;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  if (points == 0) return {};
  if (points == 1) return {lo};
  std::vector<double> grid(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t j = 0; j < points; ++j) grid[j] = lo + step * static_cast<double>(j);
  grid.back() = hi;
  return grid;
}

std::vector<ContinuityViolation> continuity_audit(const DiscreteDistribution& dist,
                                                  std::size_t n_max, Exec exec) {
  if (n_max < 2) {
    throw Error(ErrorCode::InvalidArgument, "continuity audit needs n_max >= 2");
  }
  std::vector<ContinuityViolation> violations;
  ThresholdRow row;
  auto previous = locations(dist, row);
  for (std::size_t n = 2; n <= n_max; ++n) {
    row = next_row(dist, row, exec);
    auto current = locations(dist, row);
    for (std::size_t i = 0; i < dist.size(); ++i) {
      const auto increment = static_cast<long long>(current.ell[i]) -
                             static_cast<long long>(previous.ell[i]);
      if (increment != 0 && increment != 1) {
        violations.push_back({n, i + 1, increment});
      }
    }
    previous = std::move(current);
  }
  return violations;
}

}  // namespace assign
