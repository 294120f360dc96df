// rainsim: command-line front end for single replicas, sweeps, fits and oracle checks.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rainsim/config.hpp"
#include "rainsim/oracle.hpp"
#include "rainsim/regression.hpp"
#include "rainsim/replica.hpp"
#include "rainsim/results_io.hpp"
#include "rainsim/sweep.hpp"

using namespace rainsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

void emit(const nlohmann::json& j, const std::string& out_path) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_text_file(out_path, text);
}

int cmd_simulate(const std::string& config_path, std::uint64_t seed, std::uint64_t stream,
                 const std::string& out) {
  const SimConfig cfg = load_config_file(config_path).sim;
  const auto res = run_replica(cfg, seed, stream);
  nlohmann::json j = to_json(res, cfg.dt);
  j["config"] = to_json(cfg);
  emit(j, out);
  return kExitOk;
}

int cmd_sweep(const std::string& preset, const std::string& config_path, std::size_t replicas,
              std::uint64_t seed, const std::string& out_dir, unsigned workers,
              std::size_t n_override) {
  if (preset.empty() == config_path.empty())
    throw ConfigError("sweep needs exactly one of --preset or --config");
  SweepSpec spec = preset.empty() ? load_sweep_file(config_path) : sweep_preset(preset);
  if (replicas > 0) spec.replicas_per_value = replicas;
  if (n_override > 0) spec.base.n_particles = n_override;
  const auto table = run_sweep(spec, seed, workers);
  export_sweep(table, out_dir);
  std::cout << sweep_csv(table.rows);
  std::cerr << "wrote " << (std::filesystem::path(out_dir) / "sweep.csv").string() << " and sweep.json\n";
  return kExitOk;
}

struct XyData {
  std::vector<double> x;
  std::vector<double> y;
};

// Sweep CSVs give (value, mean_time); anything else must be a two-column x,y file.
XyData read_xy(const std::string& path) {
  const std::string text = read_text_file(path);
  XyData d;
  if (text.rfind(kSweepCsvHeader, 0) == 0) {
    for (const auto& r : parse_sweep_csv(text, path)) {
      if (!r.mean_time) continue;
      d.x.push_back(r.value);
      d.y.push_back(*r.mean_time);
    }
    return d;
  }
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double a = 0.0, b = 0.0;
    if (!(ls >> a >> b)) {
      if (lineno == 1) continue;  // header
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    d.x.push_back(a);
    d.y.push_back(b);
  }
  return d;
}

RegressionFit fit(FitModel m, const std::vector<double>& x, const std::vector<double>& y,
                  double a_init, double b_init) {
  switch (m) {
    case FitModel::quadratic: return fit_quadratic(x, y);
    case FitModel::loglog: return fit_loglog(x, y);
    case FitModel::rational: return fit_rational(x, y, a_init, b_init);
  }
  throw ConfigError("unknown model");
}

int cmd_regress(const std::string& model_name, const std::string& in, double a_init, double b_init,
                const std::string& residuals_path, const std::string& out) {
  const FitModel model = parse_fit_model(model_name);
  const XyData d = read_xy(in);
  if (d.x.empty()) throw ConfigError(in + ": no uncensored rows to fit");
  std::vector<double> inv;
  for (double v : d.y) {
    if (!(v > 0.0)) throw DegenerateInputError("inverse target needs strictly positive times");
    inv.push_back(1.0 / v);
  }
  const auto raw_fit = fit(model, d.x, d.y, a_init, b_init);
  const auto inv_fit = fit(model, d.x, inv, a_init, b_init);

  nlohmann::json j;
  j["input"] = in;
  j["n"] = d.x.size();
  j["raw"] = to_json(raw_fit);
  j["inverse"] = to_json(inv_fit);
  emit(j, out);

  write_text_file(residuals_path, residuals_csv(d.x, raw_fit));
  auto inv_path = std::filesystem::path(residuals_path);
  inv_path.replace_filename(inv_path.stem().string() + "_inverse" + inv_path.extension().string());
  write_text_file(inv_path.string(), residuals_csv(d.x, inv_fit));
  return kExitOk;
}

int cmd_plotdata(const std::string& in, const std::string& out, bool epochs) {
  const auto rows = parse_sweep_csv(read_text_file(in), in);
  write_text_file(out, plot_data_csv(rows, epochs));
  return kExitOk;
}

int cmd_oracle(const OracleCompareSetup& setup, std::uint64_t seed, const std::string& out) {
  const auto c = compare_coalescence_oracles(setup, seed);
  nlohmann::json j;
  j["n"] = setup.n;
  j["horizon"] = setup.horizon;
  j["replicas"] = setup.replicas;
  j["seed"] = seed;
  j["delta"] = setup.kernel.delta;
  j["n_scale"] = setup.kernel.n_scale;
  j["dt"] = c.dt;
  j["max_step_probability"] = c.max_step_probability;
  j["gillespie_mean_merges"] = c.gillespie_mean;
  j["gillespie_std_error"] = c.gillespie_std_error;
  j["stepped_mean_merges"] = c.stepped_mean;
  j["stepped_std_error"] = c.stepped_std_error;
  j["relative_difference"] = c.relative_difference;
  emit(j, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"droplet coagulation simulator and experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out, in, preset, model = "quadratic", residuals = "residuals.csv";
  std::uint64_t seed = 0, stream = 0;
  std::size_t replicas = 0, n_override = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  double a_init = 0.08, b_init = 0.048;
  bool epochs = false;
  OracleCompareSetup oracle;

  auto* sim = app.add_subcommand("simulate", "run one replica and print its result as JSON");
  sim->add_option("--config", config_path, "key = value config file")->required();
  sim->add_option("--seed", seed, "master seed")->required();
  sim->add_option("--stream", stream, "stream id within the seed");
  sim->add_option("--out", out, "also write the JSON here");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep, write sweep.csv and sweep.json");
  sweep->add_option("--preset", preset, "brownian-sweep | vortex-sweep | lambda-sweep");
  sweep->add_option("--config", config_path, "sweep description file");
  sweep->add_option("--replicas", replicas, "replicas per value (overrides the file/preset)");
  sweep->add_option("--seed", seed, "master seed")->required();
  sweep->add_option("--out", out, "output directory")->required();
  sweep->add_option("--workers", workers, "worker threads");
  sweep->add_option("--particles", n_override, "override the particle count");

  auto* reg = app.add_subcommand("regress", "fit a model to raw and inverse formation times");
  reg->add_option("--model", model, "quadratic | loglog | rational")->required();
  reg->add_option("--in", in, "sweep.csv or a two-column x,y CSV")->required();
  reg->add_option("--a-init", a_init, "rational fit start value for a");
  reg->add_option("--b-init", b_init, "rational fit start value for b");
  reg->add_option("--residuals", residuals, "residuals CSV for the raw target");
  reg->add_option("--out", out, "also write the JSON here");

  auto* plot = app.add_subcommand("plotdata", "write (x, y, y_err) from a sweep CSV");
  plot->add_option("--in", in, "sweep.csv")->required();
  plot->add_option("--out", out, "output CSV")->required();
  plot->add_flag("--epochs", epochs, "y in epochs instead of time");

  auto* orc = app.add_subcommand("oracle-compare", "exact jump process vs time-stepped coalescence");
  orc->add_option("--n", oracle.n, "particles");
  orc->add_option("--horizon", oracle.horizon, "time horizon");
  orc->add_option("--replicas", oracle.replicas, "replicas per scheme");
  orc->add_option("--dt", oracle.dt, "stepped scheme dt (default horizon / 1000)");
  orc->add_option("--delta", oracle.kernel.delta, "kernel ball scale");
  orc->add_option("--n-scale", oracle.kernel.n_scale, "mean-field normalization N");
  orc->add_option("--seed", seed, "master seed");
  orc->add_option("--out", out, "also write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return cmd_simulate(config_path, seed, stream, out);
    if (*sweep) return cmd_sweep(preset, config_path, replicas, seed, out, workers, n_override);
    if (*reg) return cmd_regress(model, in, a_init, b_init, residuals, out);
    if (*plot) return cmd_plotdata(in, out, epochs);
    if (*orc) return cmd_oracle(oracle, seed, out);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvalidStateError& e) {
    std::cerr << "invalid state: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
