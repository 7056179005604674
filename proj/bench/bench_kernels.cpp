// Serial reference vs OpenMP kernels.
//
// Usage: assign_bench [horizon] [trials]
// Prints `kernel,exec,size,threads,seconds,checksum` rows. Checksums of the
// two variants must agree exactly; a mismatch exits with status 1.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "assign/csv.hpp"
#include "assign/policy_engine.hpp"
#include "assign/simulator.hpp"

using namespace assign;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  const std::chrono::duration<double> diff = std::chrono::steady_clock::now() - start;
  return diff.count();
}

const char* name(Exec exec) { return exec == Exec::serial ? "serial" : "omp"; }

}  // namespace

int main(int argc, char** argv) {
  const std::size_t horizon = argc > 1 ? std::stoul(argv[1]) : 5000;
  const std::size_t trials = argc > 2 ? std::stoul(argv[2]) : 20000;
  const auto dice = DiscreteDistribution::fair_die();
  const int threads = omp_get_max_threads();

  std::cout << "kernel,exec,size,threads,seconds,checksum\n";
  double row_check[2] = {0, 0};
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    double checksum = 0.0;
    const double t = seconds([&] {
      const auto table = build_table(dice, horizon, Retention::last, exec);
      for (double a : table.last().interior()) checksum += a;
    });
    row_check[exec == Exec::parallel] = checksum;
    std::cout << "threshold_rows," << name(exec) << "," << horizon << "," << threads << ","
              << t << "," << format_real(checksum) << "\n";
  }

  const auto rewards = make_rewards("linear", 100);
  const auto policy = make_policy(PolicySpec::optimal(), dice, rewards.size());
  double mc_check[2] = {0, 0};
  for (Exec exec : {Exec::serial, Exec::parallel}) {
    SummaryStats stats;
    const double t = seconds([&] { stats = monte_carlo(policy, rewards, trials, 1, exec); });
    mc_check[exec == Exec::parallel] = stats.mean;
    std::cout << "monte_carlo," << name(exec) << "," << trials << "," << threads << "," << t
              << "," << format_real(stats.mean) << "\n";
  }

  if (row_check[0] != row_check[1] || mc_check[0] != mc_check[1]) {
    std::cerr << "serial and parallel kernels disagree\n";
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
