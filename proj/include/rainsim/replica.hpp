#ifndef RAINSIM_REPLICA_HPP
#define RAINSIM_REPLICA_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rainsim/config.hpp"
#include "rainsim/observables.hpp"

namespace rainsim {

/// Stream id reserved for vortex centers when they are pinned across replicas.
inline constexpr std::uint64_t kPinnedVortexStream = ~std::uint64_t{0};

/// Called after every epoch's coalescence pass (epoch 0 is the initial state).
using EpochObserver = std::function<void(long epoch, const std::vector<Particle>&)>;

/// Uniform positions, radii uniform in [r0_min_frac, r0_max_frac] * rain_radius.
std::vector<Particle> initial_particles(const SimConfig& cfg, RngStream& rng);

/// One replica. Draw order on the replica stream: vortex centers (unless pinned),
/// particle positions and radii, then per epoch the OU noise, Brownian increments,
/// and one uniform per contacting pair.
///
/// Epoch 0 is a coalescence pass on the initial configuration. Epochs
/// 1..max_iterations each run OU step, position step, contact search,
/// coalescence pass and rain detection, stopping at the first detection.
ReplicaResult run_replica(const SimConfig& cfg, std::uint64_t seed, std::uint64_t stream_id,
                          const EpochObserver& observer = {});

}  // namespace rainsim

#endif  // RAINSIM_REPLICA_HPP
