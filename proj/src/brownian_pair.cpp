#include "rainsim/brownian_pair.hpp"

#include <cmath>

#include "rainsim/replica.hpp"

namespace rainsim {

SimConfig pair_hitting_config(const PairHittingSetup& s) {
  SimConfig c;
  c.domain_half_width = s.half_width;
  c.n_particles = 2;
  c.dt = s.dt;
  c.max_iterations = s.max_iterations;
  c.eps_rf = false;
  c.eps_bm = true;
  c.sigma = s.sigma;
  c.vortex_count = 0;
  c.p_mean = 0.0;
  c.v_max = 0.0;
  const double r = 0.5 * s.contact;
  // merged radius is 2^{1/3} r; any threshold in (r, 2^{1/3} r] flags the merge
  c.rain_radius = 1.1 * r;
  c.r0_min_frac = r / c.rain_radius;
  c.r0_max_frac = c.r0_min_frac;
  return c;
}

PairHittingResult pair_hitting_study(const PairHittingSetup& setup, std::size_t replicas,
                                     std::uint64_t seed) {
  const SimConfig cfg = pair_hitting_config(setup);
  PairHittingResult out;
  out.replicas = replicas;
  double sum = 0.0;
  double sum2 = 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < replicas; ++r) {
    const auto res = run_replica(cfg, seed, r);
    if (!res.formation_epoch) {
      ++out.censored;
      continue;
    }
    const auto e = static_cast<double>(*res.formation_epoch);
    sum += e;
    sum2 += e * e;
    ++hits;
  }
  if (hits > 0) {
    out.mean_epoch = sum / static_cast<double>(hits);
    out.mean_time = out.mean_epoch * setup.dt;
    if (hits > 1) {
      const double var = (sum2 - sum * out.mean_epoch) / static_cast<double>(hits - 1);
      out.std_error_epoch = std::sqrt(std::max(0.0, var) / static_cast<double>(hits));
    }
  }
  return out;
}

}  // namespace rainsim
