#pragma once

#include <span>
#include <string>
#include <vector>

#include "assign/analysis.hpp"
#include "assign/distribution.hpp"
#include "assign/policy_engine.hpp"
#include "assign/simulator.hpp"

namespace assign {

/// Shortest decimal that parses back to the same double.
std::string format_real(double value);

// Every emitter produces a complete document ending in a newline. Output is
// a pure function of the arguments.

/// One `i,d_i` line per support point, no header.
std::string profile_csv(const AsymptoticProfile& profile);
/// `n,a` then n = 1..N-1.
std::string thresholds_csv(const ThresholdRow& row);
/// `i,x_i,ell`.
std::string locations_csv(const DiscreteDistribution& dist, const LocationVector& loc);
/// `N,i,ell,ell_over_N,d,gap`.
std::string convergence_csv(const ConvergenceReport& report);
/// `y,rate_minus,rate_plus`.
std::string rate_csv(std::span<const RateRow> rows);
/// `N,i,increment`.
std::string audit_csv(std::span<const ContinuityViolation> violations);

struct SimulationRow {
  PolicyKind policy = PolicyKind::optimal;
  SummaryStats stats;
  bool has_target = false;  // target and abs_gap left empty otherwise
  double target = 0.0;
};

/// `policy,trials,mean,variance,std_error,target,abs_gap`.
std::string simulation_csv(std::span<const SimulationRow> rows);

}  // namespace assign
