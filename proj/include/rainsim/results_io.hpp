#ifndef RAINSIM_RESULTS_IO_HPP
#define RAINSIM_RESULTS_IO_HPP

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rainsim/config.hpp"
#include "rainsim/observables.hpp"
#include "rainsim/regression.hpp"
#include "rainsim/sweep.hpp"

namespace rainsim {

/// CSV columns, in order. Absent statistics of a fully censored row are empty fields.
inline constexpr const char* kSweepCsvHeader = "value,mean_epoch,mean_time,std_dev,censored,n_replicas";

std::string sweep_csv(std::span<const SweepRow> rows);
std::vector<SweepRow> parse_sweep_csv(const std::string& text, const std::string& source = "<csv>");

nlohmann::json to_json(const SimConfig& cfg);
nlohmann::json to_json(const SweepRow& row);
nlohmann::json to_json(const SweepTable& table);
nlohmann::json to_json(const ReplicaResult& result, double dt);
nlohmann::json to_json(const RegressionFit& fit);

/// (x, y, y_err) triples: value, mean formation time and its standard deviation,
/// in time units or in epochs. Fully censored rows are skipped.
std::string plot_data_csv(std::span<const SweepRow> rows, bool in_epochs = false);

std::string residuals_csv(std::span<const double> x, const RegressionFit& fit);

/// Throws IoError naming the path.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Writes <dir>/sweep.csv and <dir>/sweep.json, creating dir if needed.
void export_sweep(const SweepTable& table, const std::string& dir);

}  // namespace rainsim

#endif  // RAINSIM_RESULTS_IO_HPP
