#include "rainsim/replica.hpp"

#include "rainsim/coalescence.hpp"
#include "rainsim/dynamics.hpp"
#include "rainsim/random_field.hpp"

namespace rainsim {

std::vector<Particle> initial_particles(const SimConfig& cfg, RngStream& rng) {
  const Domain d = cfg.domain();
  const double h = d.half_width();
  const double r_lo = cfg.r0_min_frac * cfg.rain_radius;
  const double r_hi = cfg.r0_max_frac * cfg.rain_radius;
  std::vector<Particle> ps;
  ps.reserve(cfg.n_particles);
  for (std::size_t i = 0; i < cfg.n_particles; ++i) {
    Particle p;
    p.id = static_cast<int>(i);
    const double x = rng.uniform(-h, h);
    const double y = rng.uniform(-h, h);
    p.position = wrap_position({x, y}, d);
    p.volume = volume_from_radius(r_lo == r_hi ? r_lo : rng.uniform(r_lo, r_hi));
    ps.push_back(p);
  }
  return ps;
}

ReplicaResult run_replica(const SimConfig& cfg, std::uint64_t seed, std::uint64_t stream_id,
                          const EpochObserver& observer) {
  cfg.validate();
  const Domain d = cfg.domain();
  const MotionParams motion = cfg.motion();
  const OUParams ou = cfg.ou();
  const ObservableConfig obs = cfg.observables();
  const CoalescenceParams coal = cfg.coalescence();

  RngStream rng(seed, stream_id);
  const std::size_t k = cfg.eps_rf ? cfg.vortex_count : 0;
  VortexSet vortices;
  if (cfg.pin_vortices) {
    RngStream pinned(seed, kPinnedVortexStream);
    vortices = sample_vortex_centers(k, d, pinned, cfg.vortex_reg_eps);
  } else {
    vortices = sample_vortex_centers(k, d, rng, cfg.vortex_reg_eps);
  }
  OUState xi = OUState::zeros(k);

  auto particles = initial_particles(cfg, rng);

  ReplicaResult result;
  result.seed = seed;
  result.stream_id = stream_id;
  result.initial_count = particles.size();
  result.initial_volume = total_volume(particles);

  auto finish_epoch = [&](long epoch) {
    auto events = coalesce_pass(particles, find_contact_pairs(particles, d), coal, rng,
                                epoch * cfg.dt, epoch);
    result.events.insert(result.events.end(), events.begin(), events.end());
    result.epochs_run = epoch;
    if (observer) observer(epoch, particles);
    if (detect_first_rain(particles, obs)) {
      result.formation_epoch = epoch;
      result.formation_time = epoch * cfg.dt;
      return true;
    }
    return false;
  };

  if (!finish_epoch(0)) {
    for (long epoch = 1; epoch <= cfg.max_iterations; ++epoch) {
      if (k > 0) ou_step_inplace(xi, ou, rng);
      em_step(particles, vortices, xi, motion, d, rng);
      if (finish_epoch(epoch)) break;
    }
  }

  result.final_alive = alive_count(particles);
  result.final_volume = total_volume(particles);
  return result;
}

}  // namespace rainsim
