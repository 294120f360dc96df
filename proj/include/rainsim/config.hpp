#ifndef RAINSIM_CONFIG_HPP
#define RAINSIM_CONFIG_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rainsim/coalescence.hpp"
#include "rainsim/dynamics.hpp"
#include "rainsim/observables.hpp"
#include "rainsim/random_field.hpp"

namespace rainsim {

/// Every physical and numerical knob of one replica. Defaults are the
/// reference setup: [-2,2]^2 torus, dt 1e-4, N 1000, 3000 epochs, P_mean 0.
struct SimConfig {
  double domain_half_width = 2.0;
  std::size_t n_particles = 1000;
  double dt = 1e-4;
  long max_iterations = 3000;

  bool eps_rf = false;
  bool eps_bm = true;
  double sigma = 1.0;

  std::size_t vortex_count = 0;
  double lambda = 1500.0;
  double vortex_reg_eps = 0.01;
  bool pin_vortices = false;
  OUScheme ou_scheme = OUScheme::euler;

  double p_mean = 0.0;
  double rain_radius = 0.0004;
  // initial radii ~ Uniform[r0_min_frac, r0_max_frac] * rain_radius
  double r0_min_frac = 0.01;
  double r0_max_frac = 0.1;

  double v_max = 1.0;
  std::optional<double> r_half;     // defaults to 5 * rain_radius
  std::optional<double> steepness;  // defaults to 2 / r_half

  Domain domain() const { return Domain(domain_half_width); }
  MotionParams motion() const;
  OUParams ou() const { return {lambda, dt, ou_scheme}; }
  ObservableConfig observables() const { return {rain_radius}; }
  CoalescenceParams coalescence() const { return {p_mean}; }

  /// Throws ConfigError on invalid combinations.
  void validate() const;
};

/// Applies one `key = value` assignment; throws ConfigError for unknown keys or bad values.
void apply_config_key(SimConfig& cfg, const std::string& key, const std::string& value);

/// Flat `key = value` document, `#` starts a comment. Keys not in SimConfig are
/// returned untouched so callers (the sweep loader) can consume them.
struct ParsedConfig {
  SimConfig sim;
  std::vector<std::pair<std::string, std::string>> extra;
};
ParsedConfig parse_config(std::istream& in, const std::string& source = "<config>",
                          const std::vector<std::string>& extra_keys = {});
ParsedConfig load_config_file(const std::string& path,
                              const std::vector<std::string>& extra_keys = {});

/// Serializes back to the same `key = value` format.
std::string format_config(const SimConfig& cfg);

std::string to_string(OUScheme s);

}  // namespace rainsim

#endif  // RAINSIM_CONFIG_HPP
