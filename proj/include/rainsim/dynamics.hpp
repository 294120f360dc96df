#ifndef RAINSIM_DYNAMICS_HPP
#define RAINSIM_DYNAMICS_HPP

#include <vector>

#include "rainsim/core.hpp"
#include "rainsim/random_field.hpp"

namespace rainsim {

/// Logistic settling law in the droplet radius, shifted so that f(0) = 0 and
/// rescaled so that f -> v_max as the radius grows.
struct TerminalSpeedParams {
  double v_max = 1.0;
  double r_half = 0.002;
  double steepness = 1000.0;

  /// Defaults tied to the rain threshold: r_half = 5 R_rd, steepness = 2 / r_half.
  static TerminalSpeedParams for_rain_radius(double rain_radius, double v_max = 1.0);
};

struct MotionParams {
  bool eps_rf = false;  // random-field advection on/off
  bool eps_bm = true;   // independent Brownian motion on/off
  double sigma = 1.0;
  double dt = 1e-4;
  TerminalSpeedParams settling;
};

double terminal_speed(double volume, const TerminalSpeedParams& p);

/// One Euler-Maruyama step for every alive particle:
///   X += eps_rf U(X) dt - e2 f(V) dt + eps_bm sigma sqrt(dt) Z.
/// Brownian draws are taken in particle index order, two per alive particle,
/// and only when eps_bm is on. Only positions change.
void em_step(std::vector<Particle>& particles, const VortexSet& vortices, const OUState& xi,
             const MotionParams& mp, const Domain& d, RngStream& rng);

}  // namespace rainsim

#endif  // RAINSIM_DYNAMICS_HPP
