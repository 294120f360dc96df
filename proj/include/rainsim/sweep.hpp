#ifndef RAINSIM_SWEEP_HPP
#define RAINSIM_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rainsim/config.hpp"
#include "rainsim/observables.hpp"

namespace rainsim {

enum class SweepParameter { sigma, vortex_count, lambda };

std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string& s);

struct SweepSpec {
  SweepParameter varying = SweepParameter::sigma;
  std::vector<double> values;
  std::size_t replicas_per_value = 10;
  SimConfig base;

  void validate() const;
  /// base with the varying parameter set to `value`.
  SimConfig config_for(double value) const;
};

struct SweepRow {
  double value = 0.0;
  std::optional<double> mean_epoch;
  std::optional<double> mean_time;
  std::optional<double> std_dev;  // sample standard deviation of formation epochs
  std::size_t censored = 0;
  std::size_t n_replicas = 0;
};

struct SweepTable {
  SweepParameter varying = SweepParameter::sigma;
  std::uint64_t master_seed = 0;
  SimConfig base;
  std::vector<SweepRow> rows;
  // formation epochs per row, in stream order; absent entries are censored
  std::vector<std::vector<std::optional<long>>> epochs;
};

/// Aggregates the formation epochs of one row (censored entries excluded).
SweepRow aggregate_row(double value, double dt, const std::vector<std::optional<long>>& epochs);

/// Replica r of value index v runs on stream v * replicas_per_value + r of the
/// master seed, so the table does not depend on `workers`.
SweepTable run_sweep(const SweepSpec& spec, std::uint64_t master_seed, unsigned workers = 1);

/// Named experiment setups: brownian-sweep, vortex-sweep, lambda-sweep.
SweepSpec sweep_preset(const std::string& name);
std::vector<std::string> sweep_preset_names();

/// Comma list "0.1,0.2" or inclusive range "start:stop:step".
std::vector<double> parse_value_list(const std::string& s);

/// Reads a sweep description: SimConfig keys plus sweep_parameter,
/// sweep_values and replicas.
SweepSpec load_sweep_file(const std::string& path);

}  // namespace rainsim

#endif  // RAINSIM_SWEEP_HPP
