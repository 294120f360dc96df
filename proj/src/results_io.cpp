#include "rainsim/results_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace rainsim {

namespace {

// shortest representation that parses back to the same double
std::string num(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  for (;;) {
    const auto comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (auto& s : out) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(0, 1);
  }
  return out;
}

double parse_field(const std::string& s, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(where + ": bad number '" + s + "'");
  return v;
}

std::optional<double> parse_opt_field(const std::string& s, const std::string& where) {
  if (s.empty()) return std::nullopt;
  return parse_field(s, where);
}

nlohmann::json opt_json(const std::optional<double>& x) {
  return x ? nlohmann::json(*x) : nlohmann::json(nullptr);
}

nlohmann::json finite_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows)
    os << num(r.value) << ',' << opt_num(r.mean_epoch) << ',' << opt_num(r.mean_time) << ','
       << opt_num(r.std_dev) << ',' << r.censored << ',' << r.n_replicas << '\n';
  return os.str();
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(source + ": empty CSV");
  const auto header = split_csv_line(line);
  if (header != split_csv_line(kSweepCsvHeader))
    throw ConfigError(source + ": unexpected header '" + line + "'");
  std::vector<SweepRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw ConfigError(where + ": expected 6 fields");
    SweepRow r;
    r.value = parse_field(f[0], where);
    r.mean_epoch = parse_opt_field(f[1], where);
    r.mean_time = parse_opt_field(f[2], where);
    r.std_dev = parse_opt_field(f[3], where);
    r.censored = static_cast<std::size_t>(parse_field(f[4], where));
    r.n_replicas = static_cast<std::size_t>(parse_field(f[5], where));
    rows.push_back(r);
  }
  return rows;
}

nlohmann::json to_json(const SimConfig& c) {
  nlohmann::json j;
  j["domain_half_width"] = c.domain_half_width;
  j["n_particles"] = c.n_particles;
  j["dt"] = c.dt;
  j["max_iterations"] = c.max_iterations;
  j["eps_rf"] = c.eps_rf;
  j["eps_bm"] = c.eps_bm;
  j["sigma"] = c.sigma;
  j["vortex_count"] = c.vortex_count;
  j["lambda"] = c.lambda;
  j["vortex_reg_eps"] = c.vortex_reg_eps;
  j["pin_vortices"] = c.pin_vortices;
  j["ou_scheme"] = to_string(c.ou_scheme);
  j["p_mean"] = c.p_mean;
  j["rain_radius"] = c.rain_radius;
  j["r0_min_frac"] = c.r0_min_frac;
  j["r0_max_frac"] = c.r0_max_frac;
  const auto m = c.motion();
  j["v_max"] = m.settling.v_max;
  j["r_half"] = m.settling.r_half;
  j["steepness"] = m.settling.steepness;
  return j;
}

nlohmann::json to_json(const SweepRow& r) {
  return {{"value", r.value},
          {"mean_epoch", opt_json(r.mean_epoch)},
          {"mean_time", opt_json(r.mean_time)},
          {"std_dev", opt_json(r.std_dev)},
          {"censored", r.censored},
          {"n_replicas", r.n_replicas}};
}

nlohmann::json to_json(const SweepTable& t) {
  nlohmann::json j;
  j["master_seed"] = t.master_seed;
  j["parameter"] = to_string(t.varying);
  j["config"] = to_json(t.base);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : t.rows) j["rows"].push_back(to_json(r));
  j["formation_epochs"] = nlohmann::json::array();
  for (const auto& row : t.epochs) {
    auto a = nlohmann::json::array();
    for (const auto& e : row) a.push_back(e ? nlohmann::json(*e) : nlohmann::json(nullptr));
    j["formation_epochs"].push_back(a);
  }
  return j;
}

nlohmann::json to_json(const ReplicaResult& r, double dt) {
  nlohmann::json j;
  j["seed"] = r.seed;
  j["stream_id"] = r.stream_id;
  j["formation_epoch"] = r.formation_epoch ? nlohmann::json(*r.formation_epoch) : nlohmann::json(nullptr);
  j["formation_time"] = opt_json(r.formation_time);
  j["censored"] = r.censored();
  j["epochs_run"] = r.epochs_run;
  j["time_run"] = static_cast<double>(r.epochs_run) * dt;
  j["initial_count"] = r.initial_count;
  j["final_alive"] = r.final_alive;
  j["initial_volume"] = r.initial_volume;
  j["final_volume"] = r.final_volume;
  j["events"] = nlohmann::json::array();
  for (const auto& e : r.events)
    j["events"].push_back({{"epoch", e.epoch},
                           {"time", e.time},
                           {"absorber_id", e.absorber_id},
                           {"absorbed_id", e.absorbed_id},
                           {"volume_after", e.volume_after}});
  return j;
}

nlohmann::json to_json(const RegressionFit& f) {
  nlohmann::json j;
  j["model"] = to_string(f.model);
  j["coefficients"] = f.coefficients;
  if (!f.std_errors.empty()) j["std_errors"] = f.std_errors;
  j["r_squared"] = f.r_squared;
  j["adj_r_squared"] = f.adj_r_squared;
  j["residual_std_error"] = f.residual_std_error;
  j["dof"] = f.dof;
  j["rss"] = f.rss;
  if (f.model != FitModel::rational) {
    j["f_statistic"] = finite_or_null(f.f_statistic);
    j["f_p_value"] = f.f_p_value;
  } else {
    j["converged"] = f.converged;
    j["iterations"] = f.iterations;
  }
  j["correlation"] = f.correlation;
  j["residuals"] = f.residuals;
  return j;
}

std::string plot_data_csv(std::span<const SweepRow> rows, bool in_epochs) {
  std::ostringstream os;
  os << "x,y,y_err\n";
  for (const auto& r : rows) {
    if (!r.mean_epoch) continue;
    double y = *r.mean_epoch;
    double err = r.std_dev.value_or(0.0);
    if (!in_epochs && r.mean_time) {
      const double dt = y > 0.0 ? *r.mean_time / y : 0.0;
      y = *r.mean_time;
      err *= dt;
    }
    os << num(r.value) << ',' << num(y) << ',' << num(err) << '\n';
  }
  return os.str();
}

std::string residuals_csv(std::span<const double> x, const RegressionFit& fit) {
  std::ostringstream os;
  os << "x,fitted,residual\n";
  for (std::size_t i = 0; i < x.size() && i < fit.residuals.size(); ++i)
    os << num(x[i]) << ',' << num(fit.fitted[i]) << ',' << num(fit.residuals[i]) << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void export_sweep(const SweepTable& table, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  const auto base = std::filesystem::path(dir);
  write_text_file((base / "sweep.csv").string(), sweep_csv(table.rows));
  write_text_file((base / "sweep.json").string(), to_json(table).dump(2) + "\n");
}

}  // namespace rainsim
