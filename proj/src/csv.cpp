#include "assign/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace assign {

std::string format_real(double value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), ptr);
}

std::string profile_csv(const AsymptoticProfile& profile) {
  std::string out;
  for (std::size_t i = 0; i < profile.d.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_real(profile.d[i]) + "\n";
  }
  return out;
}

std::string thresholds_csv(const ThresholdRow& row) {
  std::string out = "n,a\n";
  const auto a = row.interior();
  for (std::size_t n = 0; n < a.size(); ++n) {
    out += std::to_string(n + 1) + "," + format_real(a[n]) + "\n";
  }
  return out;
}

std::string locations_csv(const DiscreteDistribution& dist, const LocationVector& loc) {
  std::string out = "i,x_i,ell\n";
  for (std::size_t i = 0; i < loc.ell.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_real(dist.support()[i]) + "," +
           std::to_string(loc.ell[i]) + "\n";
  }
  return out;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "N,i,ell,ell_over_N,d,gap\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.horizon) + "," + std::to_string(r.index) + "," +
           std::to_string(r.ell) + "," + format_real(r.ell_over_n) + "," +
           format_real(r.d) + "," + format_real(r.gap) + "\n";
  }
  return out;
}

std::string rate_csv(std::span<const RateRow> rows) {
  std::string out = "y,rate_minus,rate_plus\n";
  for (const auto& r : rows) {
    out += format_real(r.y) + "," + format_real(r.rate_minus) + "," +
           format_real(r.rate_plus) + "\n";
  }
  return out;
}

std::string audit_csv(std::span<const ContinuityViolation> violations) {
  std::string out = "N,i,increment\n";
  for (const auto& v : violations) {
    out += std::to_string(v.horizon) + "," + std::to_string(v.index) + "," +
           std::to_string(v.increment) + "\n";
  }
  return out;
}

std::string simulation_csv(std::span<const SimulationRow> rows) {
  std::string out = "policy,trials,mean,variance,std_error,target,abs_gap\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.policy)) + "," + std::to_string(r.stats.trials) +
           "," + format_real(r.stats.mean) + "," + format_real(r.stats.variance) +
           "," + format_real(r.stats.std_error) + ",";
    if (r.has_target) {
      out += format_real(r.target) + "," + format_real(std::abs(r.stats.mean - r.target));
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

}  // namespace assign
