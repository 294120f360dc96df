#ifndef RAINSIM_RANDOM_FIELD_HPP
#define RAINSIM_RANDOM_FIELD_HPP

#include <span>
#include <vector>

#include "rainsim/core.hpp"

namespace rainsim {

enum class OUScheme { euler, exact };

struct OUParams {
  double lambda = 0.0;  // inverse correlation time, also the noise coefficient
  double dt = 1e-4;
  OUScheme scheme = OUScheme::euler;
};

/// Vortex intensities xi^k, one per vortex, started at zero.
struct OUState {
  std::vector<double> values;
  double time = 0.0;

  static OUState zeros(std::size_t vortex_count) { return {std::vector<double>(vortex_count, 0.0), 0.0}; }
};

struct VortexSet {
  std::vector<Vec2> centers;
  double reg_eps = 0.01;

  std::size_t size() const { return centers.size(); }
};

/// Advances every component by one step of
///   d xi = -lambda xi dt + lambda dB.
/// `noise` holds one standard normal per component.
/// Throws NumericalError when lambda * dt >= 1.
OUState ou_step(const OUState& xi, const OUParams& p, std::span<const double> noise);

/// In-place variant used by the replica loop; draws its own noise from `rng`.
void ou_step_inplace(OUState& xi, const OUParams& p, RngStream& rng);

/// Stationary variance lambda / 2 of the process above.
inline double ou_stationary_variance(double lambda) { return 0.5 * lambda; }

/// Sum_k xi^k (1/2pi) r_k^perp / (|r_k|^2 + reg_eps^2), r_k the minimal image of
/// x - x_k and (a, b)^perp = (b, -a). A particle sitting on a center gets no push
/// from that vortex.
Vec2 vortex_velocity(Vec2 x, const VortexSet& vs, const OUState& xi, const Domain& d);

VortexSet sample_vortex_centers(std::size_t count, const Domain& d, RngStream& rng,
                                double reg_eps = 0.01);

}  // namespace rainsim

#endif  // RAINSIM_RANDOM_FIELD_HPP
