#include "rainsim/coalescence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rainsim {

namespace {

std::size_t count_alive(const std::vector<Particle>& particles) {
  return static_cast<std::size_t>(
      std::count_if(particles.begin(), particles.end(), [](const Particle& p) { return p.alive; }));
}

void check_pair_budget(const std::vector<Particle>& particles) {
  const std::size_t n = count_alive(particles);
  if (n * (n - (n > 0 ? 1 : 0)) / 2 > kMaxOraclePairs)
    throw ConfigError("pair-rate oracle limited to " + std::to_string(kMaxOraclePairs) +
                      " pairs, got " + std::to_string(n) + " particles");
}

}  // namespace

std::vector<ContactPair> find_contact_pairs(const std::vector<Particle>& particles,
                                            const Domain& d) {
  std::vector<ContactPair> pairs;
  std::vector<std::size_t> alive;
  std::vector<double> radius(particles.size(), 0.0);
  double r_max = 0.0;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (!particles[i].alive) continue;
    alive.push_back(i);
    radius[i] = radius_from_volume(particles[i].volume);
    r_max = std::max(r_max, radius[i]);
  }
  if (alive.size() < 2) return pairs;

  const double width = d.width();
  // cap the cell count near 4 cells per particle
  const auto cap = static_cast<long>(std::max(1.0, std::floor(2.0 * std::sqrt(double(alive.size())))));
  const double fit = r_max > 0.0 ? std::floor(width / (2.0 * r_max)) : double(cap);
  const long cells = fit >= double(cap) ? cap : std::max(1L, static_cast<long>(fit));
  const double cell_size = width / static_cast<double>(cells);

  auto cell_of = [&](double c) {
    auto k = static_cast<long>(std::floor((c + d.half_width()) / cell_size));
    return std::clamp(k, 0L, cells - 1);
  };

  // counting sort of particle indices by cell
  const auto n_cells = static_cast<std::size_t>(cells * cells);
  std::vector<std::size_t> start(n_cells + 1, 0);
  std::vector<std::size_t> cell_index(particles.size(), 0);
  for (std::size_t i : alive) {
    const auto c = static_cast<std::size_t>(cell_of(particles[i].position.y) * cells +
                                            cell_of(particles[i].position.x));
    cell_index[i] = c;
    ++start[c + 1];
  }
  for (std::size_t c = 0; c < n_cells; ++c) start[c + 1] += start[c];
  std::vector<std::size_t> members(alive.size());
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t i : alive) members[fill[cell_index[i]]++] = i;
  }

  std::vector<std::size_t> neighbours;
  neighbours.reserve(9);
  for (std::size_t i : alive) {
    const long cy = static_cast<long>(cell_index[i]) / cells;
    const long cx = static_cast<long>(cell_index[i]) % cells;
    neighbours.clear();
    for (long dy = -1; dy <= 1; ++dy)
      for (long dx = -1; dx <= 1; ++dx) {
        const long ny = ((cy + dy) % cells + cells) % cells;
        const long nx = ((cx + dx) % cells + cells) % cells;
        const auto nc = static_cast<std::size_t>(ny * cells + nx);
        if (std::find(neighbours.begin(), neighbours.end(), nc) == neighbours.end())
          neighbours.push_back(nc);
      }
    for (std::size_t nc : neighbours) {
      for (std::size_t m = start[nc]; m < start[nc + 1]; ++m) {
        const std::size_t j = members[m];
        if (j <= i) continue;
        const double dist =
            min_image_displacement(particles[i].position, particles[j].position, d).norm();
        if (dist <= radius[i] + radius[j]) pairs.push_back({i, j, dist});
      }
    }
  }

  std::sort(pairs.begin(), pairs.end(), [](const ContactPair& a, const ContactPair& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return pairs;
}

MergeEvent merge_pair(std::vector<Particle>& particles, std::size_t i, std::size_t j,
                      double time, long epoch) {
  if (i > j) std::swap(i, j);
  Particle& a = particles[i];
  Particle& b = particles[j];
  Particle& absorber = a.volume >= b.volume ? a : b;
  Particle& absorbed = a.volume >= b.volume ? b : a;
  absorber.volume += absorbed.volume;
  absorbed.volume = 0.0;
  absorbed.alive = false;
  return {time, epoch, absorber.id, absorbed.id, absorber.volume};
}

std::vector<MergeEvent> coalesce_pass(std::vector<Particle>& particles,
                                      const std::vector<ContactPair>& pairs,
                                      const CoalescenceParams& cp, RngStream& rng, double time,
                                      long epoch) {
  if (cp.p_mean < 0.0 || cp.p_mean > 1.0)
    throw ConfigError("p_mean must lie in [0, 1], got " + std::to_string(cp.p_mean));
  std::vector<MergeEvent> events;
  for (const auto& pr : pairs) {
    if (!particles[pr.i].alive || !particles[pr.j].alive) continue;
    const double phi = rng.uniform();
    if (phi > cp.p_mean) events.push_back(merge_pair(particles, pr.i, pr.j, time, epoch));
  }
  return events;
}

double tn_delta_rate(const Particle& a, const Particle& b, const KernelRateParams& kp,
                     const Domain& d) {
  const double reach = kp.delta * contact_scale(a.volume, b.volume);
  const double dist = min_image_displacement(a.position, b.position, d).norm();
  if (dist > reach) return 0.0;
  return 0.5 / kp.n_scale * std::pow(kp.delta, -kp.dimension_exponent) *
         kp.efficiency(a.volume, b.volume);
}

JumpRunResult gillespie_run(std::vector<Particle>& particles, const KernelRateParams& kp,
                            const Domain& d, double horizon, RngStream& rng) {
  check_pair_budget(particles);
  JumpRunResult out;
  struct Candidate {
    std::size_t i, j;
    double rate;
  };
  std::vector<Candidate> candidates;
  double t = 0.0;
  for (;;) {
    candidates.clear();
    double total = 0.0;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      if (!particles[i].alive) continue;
      for (std::size_t j = i + 1; j < particles.size(); ++j) {
        if (!particles[j].alive) continue;
        const double r = tn_delta_rate(particles[i], particles[j], kp, d);
        if (r > 0.0) {
          candidates.push_back({i, j, r});
          total += r;
        }
      }
    }
    if (total <= 0.0) break;
    t += rng.exponential(total);
    if (t > horizon) break;
    const double target = rng.uniform() * total;
    double acc = 0.0;
    std::size_t pick = candidates.size() - 1;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      acc += candidates[c].rate;
      if (target < acc) {
        pick = c;
        break;
      }
    }
    out.events.push_back(merge_pair(particles, candidates[pick].i, candidates[pick].j, t, -1));
  }
  out.end_time = std::min(t, horizon);
  return out;
}

JumpRunResult stepped_coalescence_run(std::vector<Particle>& particles,
                                      const KernelRateParams& kp, const Domain& d,
                                      double horizon, double dt, RngStream& rng,
                                      double max_step_probability) {
  if (!(dt > 0.0)) throw ConfigError("stepped coalescence dt must be positive");
  check_pair_budget(particles);
  JumpRunResult out;
  const auto steps = static_cast<long>(std::llround(horizon / dt));
  for (long s = 0; s < steps; ++s) {
    const double t = (s + 1) * dt;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      for (std::size_t j = i + 1; j < particles.size(); ++j) {
        if (!particles[i].alive) break;
        if (!particles[j].alive) continue;
        const double p = tn_delta_rate(particles[i], particles[j], kp, d) * dt;
        if (p <= 0.0) continue;
        if (p > max_step_probability)
          throw NumericalError("per-step merge probability " + std::to_string(p) +
                               " exceeds " + std::to_string(max_step_probability));
        if (rng.uniform() < p) out.events.push_back(merge_pair(particles, i, j, t, s));
      }
    }
  }
  out.end_time = steps * dt;
  return out;
}

}  // namespace rainsim
