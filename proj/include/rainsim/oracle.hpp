#ifndef RAINSIM_ORACLE_HPP
#define RAINSIM_ORACLE_HPP

#include <cstdint>

#include "rainsim/coalescence.hpp"

namespace rainsim {

struct OracleCompareSetup {
  std::size_t n = 10;
  double horizon = 1.0;
  std::size_t replicas = 5000;
  double dt = 0.0;  // 0: horizon / 1000
  KernelRateParams kernel{1.0, 10.0, 3.0, unit_efficiency()};
};

struct OracleComparison {
  double gillespie_mean = 0.0;  // mean number of merges by the horizon
  double stepped_mean = 0.0;
  double gillespie_std_error = 0.0;
  double stepped_std_error = 0.0;
  double relative_difference = 0.0;  // |stepped - gillespie| / gillespie
  double dt = 0.0;
  double max_step_probability = 0.0;  // largest pair rate * dt
};

/// n unit-volume particles stacked at the origin (every pair in range), positions
/// frozen. Replica r runs the exact jump process on stream 2r and the stepped
/// scheme on stream 2r + 1.
OracleComparison compare_coalescence_oracles(const OracleCompareSetup& setup, std::uint64_t seed);

}  // namespace rainsim

#endif  // RAINSIM_ORACLE_HPP
