#include "rainsim/dynamics.hpp"

#include <cmath>
#include <string>

namespace rainsim {

namespace {

double logistic(double r, const TerminalSpeedParams& p) {
  return 1.0 / (1.0 + std::exp(-p.steepness * (r - p.r_half)));
}

}  // namespace

TerminalSpeedParams TerminalSpeedParams::for_rain_radius(double rain_radius, double v_max) {
  const double r_half = 5.0 * rain_radius;
  return {v_max, r_half, 2.0 / r_half};
}

double terminal_speed(double volume, const TerminalSpeedParams& p) {
  if (p.v_max == 0.0) return 0.0;
  const double l0 = logistic(0.0, p);
  const double lr = logistic(radius_from_volume(volume), p);
  return p.v_max * (lr - l0) / (1.0 - l0);
}

void em_step(std::vector<Particle>& particles, const VortexSet& vortices, const OUState& xi,
             const MotionParams& mp, const Domain& d, RngStream& rng) {
  const double sqrt_dt = std::sqrt(mp.dt);
  const bool advect = mp.eps_rf && vortices.size() > 0;
  for (auto& p : particles) {
    if (!p.alive) continue;
    Vec2 step{0.0, -terminal_speed(p.volume, mp.settling) * mp.dt};
    if (advect) step += mp.dt * vortex_velocity(p.position, vortices, xi, d);
    if (mp.eps_bm) {
      const double zx = rng.normal();
      const double zy = rng.normal();
      step += mp.sigma * sqrt_dt * Vec2{zx, zy};
    }
    if (!std::isfinite(step.x) || !std::isfinite(step.y))
      throw NumericalError("non-finite displacement for particle " + std::to_string(p.id));
    p.position = wrap_position(p.position + step, d);
  }
}

}  // namespace rainsim
