#ifndef RAINSIM_OBSERVABLES_HPP
#define RAINSIM_OBSERVABLES_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rainsim/coalescence.hpp"
#include "rainsim/core.hpp"

namespace rainsim {

struct ObservableConfig {
  double rain_radius = 0.0004;
};

struct ReplicaResult {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::optional<long> formation_epoch;
  std::optional<double> formation_time;  // formation_epoch * dt
  long epochs_run = 0;
  std::vector<MergeEvent> events;
  std::size_t initial_count = 0;
  std::size_t final_alive = 0;
  double initial_volume = 0.0;
  double final_volume = 0.0;

  bool censored() const { return !formation_epoch.has_value(); }
};

/// True iff some alive particle has radius >= rain_radius.
bool detect_first_rain(const std::vector<Particle>& particles, const ObservableConfig& cfg);

/// (1 / initial_count) * sum over alive particles of v^order.
double empirical_moment(const std::vector<Particle>& particles, double order,
                        std::size_t initial_count);

/// Compensated sum of alive volumes.
double total_volume(const std::vector<Particle>& particles);

std::size_t alive_count(const std::vector<Particle>& particles);

/// Replays `events` on the initial volumes and returns the first epoch at which
/// detection holds, or nothing if it never does.
std::optional<long> replay_formation_epoch(const std::vector<double>& initial_volumes,
                                           const std::vector<MergeEvent>& events,
                                           const ObservableConfig& cfg);

}  // namespace rainsim

#endif  // RAINSIM_OBSERVABLES_HPP
