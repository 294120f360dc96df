#ifndef RAINSIM_COALESCENCE_HPP
#define RAINSIM_COALESCENCE_HPP

#include <cstddef>
#include <vector>

#include "rainsim/core.hpp"
#include "rainsim/kernels.hpp"

namespace rainsim {

struct CoalescenceParams {
  double p_mean = 0.0;  // merge iff a uniform draw exceeds it
};

struct KernelRateParams {
  double delta = 1.0;
  double n_scale = 1.0;
  double dimension_exponent = 3.0;  // exponent of delta^{-d}
  Efficiency efficiency = unit_efficiency();
};

struct MergeEvent {
  double time = 0.0;
  long epoch = -1;  // -1 for continuous-time events
  int absorber_id = 0;
  int absorbed_id = 0;
  double volume_after = 0.0;
};

/// Indices into the particle vector, i < j.
struct ContactPair {
  std::size_t i = 0;
  std::size_t j = 0;
  double distance = 0.0;
};

/// Alive pairs with minimal-image distance <= R_i + R_j, ascending by distance
/// (ties by index). Uses a uniform periodic cell grid with cells no smaller
/// than twice the largest alive radius.
std::vector<ContactPair> find_contact_pairs(const std::vector<Particle>& particles,
                                            const Domain& d);

/// Walks `pairs` in order; a pair whose members are both still alive merges when
/// the drawn uniform exceeds p_mean. The larger volume absorbs (ties: lower index).
/// Absorbers keep their position and carry the summed volume into later pairs.
std::vector<MergeEvent> coalesce_pass(std::vector<Particle>& particles,
                                      const std::vector<ContactPair>& pairs,
                                      const CoalescenceParams& cp, RngStream& rng,
                                      double time = 0.0, long epoch = -1);

/// (1/2) n_scale^{-1} delta^{-d} k(v_i, v_j) when |x_i - x_j| <= delta f(v_i, v_j), else 0.
double tn_delta_rate(const Particle& a, const Particle& b, const KernelRateParams& kp,
                     const Domain& d);

/// Merges j into i (or i into j when v_j > v_i); returns the event.
MergeEvent merge_pair(std::vector<Particle>& particles, std::size_t i, std::size_t j,
                      double time, long epoch);

struct JumpRunResult {
  std::vector<MergeEvent> events;
  double end_time = 0.0;
};

inline constexpr std::size_t kMaxOraclePairs = 10000;

/// Exact event-driven simulation of the pure coalescence process with
/// unordered-pair rates tn_delta_rate; positions are frozen.
JumpRunResult gillespie_run(std::vector<Particle>& particles, const KernelRateParams& kp,
                            const Domain& d, double horizon, RngStream& rng);

/// Time-stepped counterpart of gillespie_run: each step every in-range alive pair
/// (index order) merges with probability rate * dt. Throws NumericalError if any
/// rate * dt exceeds max_step_probability.
JumpRunResult stepped_coalescence_run(std::vector<Particle>& particles,
                                      const KernelRateParams& kp, const Domain& d,
                                      double horizon, double dt, RngStream& rng,
                                      double max_step_probability = 0.01);

}  // namespace rainsim

#endif  // RAINSIM_COALESCENCE_HPP
