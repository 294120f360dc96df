#include "rainsim/oracle.hpp"

#include <cmath>

namespace rainsim {

namespace {

std::vector<Particle> stacked(std::size_t n) {
  std::vector<Particle> ps(n);
  for (std::size_t i = 0; i < n; ++i) ps[i] = {static_cast<int>(i), {0.0, 0.0}, 1.0, true};
  return ps;
}

struct Moments {
  double sum = 0.0;
  double sum2 = 0.0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
  }
  double mean(std::size_t n) const { return sum / static_cast<double>(n); }
  double std_error(std::size_t n) const {
    if (n < 2) return 0.0;
    const double m = mean(n);
    const double var = (sum2 - sum * m) / static_cast<double>(n - 1);
    return std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
};

}  // namespace

OracleComparison compare_coalescence_oracles(const OracleCompareSetup& s, std::uint64_t seed) {
  if (s.n < 2) throw ConfigError("oracle comparison needs at least 2 particles");
  if (!(s.horizon > 0.0)) throw ConfigError("oracle comparison horizon must be positive");
  if (s.replicas < 1) throw ConfigError("oracle comparison needs at least one replica");
  const Domain d;
  OracleComparison out;
  out.dt = s.dt > 0.0 ? s.dt : s.horizon / 1000.0;
  {
    const auto ps = stacked(2);
    out.max_step_probability = tn_delta_rate(ps[0], ps[1], s.kernel, d) * out.dt;
  }
  Moments g, st;
  for (std::size_t r = 0; r < s.replicas; ++r) {
    auto a = stacked(s.n);
    RngStream ra(seed, 2 * r);
    g.add(static_cast<double>(gillespie_run(a, s.kernel, d, s.horizon, ra).events.size()));
    auto b = stacked(s.n);
    RngStream rb(seed, 2 * r + 1);
    st.add(static_cast<double>(
        stepped_coalescence_run(b, s.kernel, d, s.horizon, out.dt, rb).events.size()));
  }
  out.gillespie_mean = g.mean(s.replicas);
  out.stepped_mean = st.mean(s.replicas);
  out.gillespie_std_error = g.std_error(s.replicas);
  out.stepped_std_error = st.std_error(s.replicas);
  out.relative_difference = out.gillespie_mean > 0.0
                                ? std::abs(out.stepped_mean - out.gillespie_mean) / out.gillespie_mean
                                : std::abs(out.stepped_mean);
  return out;
}

}  // namespace rainsim
