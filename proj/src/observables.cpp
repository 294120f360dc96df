#include "rainsim/observables.hpp"

#include <algorithm>
#include <cmath>

namespace rainsim {

bool detect_first_rain(const std::vector<Particle>& particles, const ObservableConfig& cfg) {
  // compare volumes so the threshold is not at the mercy of cbrt rounding
  const double v_rd = volume_from_radius(cfg.rain_radius);
  return std::any_of(particles.begin(), particles.end(), [&](const Particle& p) {
    return p.alive && (p.volume >= v_rd || radius_from_volume(p.volume) >= cfg.rain_radius);
  });
}

double empirical_moment(const std::vector<Particle>& particles, double order,
                        std::size_t initial_count) {
  if (order < 0.0) throw InvalidStateError("moment order must be nonnegative");
  if (initial_count == 0) return 0.0;
  double sum = 0.0;
  for (const auto& p : particles)
    if (p.alive) sum += order == 1.0 ? p.volume : std::pow(p.volume, order);
  return sum / static_cast<double>(initial_count);
}

double total_volume(const std::vector<Particle>& particles) {
  // Neumaier summation
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& p : particles) {
    if (!p.alive) continue;
    const double t = sum + p.volume;
    comp += std::abs(sum) >= std::abs(p.volume) ? (sum - t) + p.volume : (p.volume - t) + sum;
    sum = t;
  }
  return sum + comp;
}

std::size_t alive_count(const std::vector<Particle>& particles) {
  return static_cast<std::size_t>(
      std::count_if(particles.begin(), particles.end(), [](const Particle& p) { return p.alive; }));
}

std::optional<long> replay_formation_epoch(const std::vector<double>& initial_volumes,
                                           const std::vector<MergeEvent>& events,
                                           const ObservableConfig& cfg) {
  std::vector<Particle> state;
  state.reserve(initial_volumes.size());
  for (std::size_t i = 0; i < initial_volumes.size(); ++i)
    state.push_back({static_cast<int>(i), {}, initial_volumes[i], true});
  if (detect_first_rain(state, cfg)) return 0L;
  for (const auto& e : events) {
    auto& absorber = state.at(static_cast<std::size_t>(e.absorber_id));
    auto& absorbed = state.at(static_cast<std::size_t>(e.absorbed_id));
    absorber.volume += absorbed.volume;
    absorbed.volume = 0.0;
    absorbed.alive = false;
    if (absorber.volume >= volume_from_radius(cfg.rain_radius) ||
        radius_from_volume(absorber.volume) >= cfg.rain_radius)
      return e.epoch;
  }
  return std::nullopt;
}

}  // namespace rainsim
