#ifndef RAINSIM_BROWNIAN_PAIR_HPP
#define RAINSIM_BROWNIAN_PAIR_HPP

#include <cstdint>

#include "rainsim/config.hpp"

namespace rainsim {

/// Two Brownian droplets on a periodic square; the "rain" event is their first
/// contact at separation <= contact.
struct PairHittingSetup {
  double sigma = 1.0;
  double contact = 0.05;
  double half_width = 0.5;  // unit torus
  double dt = 1e-4;
  long max_iterations = 2'000'000;
};

struct PairHittingResult {
  double mean_epoch = 0.0;
  double mean_time = 0.0;
  double std_error_epoch = 0.0;
  std::size_t replicas = 0;
  std::size_t censored = 0;
};

/// Replica configuration: radii contact / 2, no settling, no random field, and a
/// rain radius between the single and merged droplet radii.
SimConfig pair_hitting_config(const PairHittingSetup& setup);

/// Mean first-contact epoch over `replicas` runs on streams 0..replicas-1.
PairHittingResult pair_hitting_study(const PairHittingSetup& setup, std::size_t replicas,
                                     std::uint64_t seed);

}  // namespace rainsim

#endif  // RAINSIM_BROWNIAN_PAIR_HPP
