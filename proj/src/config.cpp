#include "rainsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace rainsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

long parse_long(const std::string& key, const std::string& v) {
  long out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  const long n = parse_long(key, v);
  if (n < 0) throw ConfigError("config key '" + key + "' must be nonnegative");
  return static_cast<std::size_t>(n);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config key '" + key + "': expected 0/1/true/false, got '" + v + "'");
}

std::string fmt(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

using Setter = std::function<void(SimConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"domain_half_width", [](SimConfig& c, auto& k, auto& v) { c.domain_half_width = parse_double(k, v); }},
      {"n_particles", [](SimConfig& c, auto& k, auto& v) { c.n_particles = parse_count(k, v); }},
      {"dt", [](SimConfig& c, auto& k, auto& v) { c.dt = parse_double(k, v); }},
      {"max_iterations", [](SimConfig& c, auto& k, auto& v) { c.max_iterations = parse_long(k, v); }},
      {"eps_rf", [](SimConfig& c, auto& k, auto& v) { c.eps_rf = parse_bool(k, v); }},
      {"eps_bm", [](SimConfig& c, auto& k, auto& v) { c.eps_bm = parse_bool(k, v); }},
      {"sigma", [](SimConfig& c, auto& k, auto& v) { c.sigma = parse_double(k, v); }},
      {"vortex_count", [](SimConfig& c, auto& k, auto& v) { c.vortex_count = parse_count(k, v); }},
      {"lambda", [](SimConfig& c, auto& k, auto& v) { c.lambda = parse_double(k, v); }},
      {"vortex_reg_eps", [](SimConfig& c, auto& k, auto& v) { c.vortex_reg_eps = parse_double(k, v); }},
      {"pin_vortices", [](SimConfig& c, auto& k, auto& v) { c.pin_vortices = parse_bool(k, v); }},
      {"ou_scheme",
       [](SimConfig& c, auto& k, auto& v) {
         if (v == "euler") c.ou_scheme = OUScheme::euler;
         else if (v == "exact") c.ou_scheme = OUScheme::exact;
         else throw ConfigError("config key '" + k + "': expected euler|exact, got '" + v + "'");
       }},
      {"p_mean", [](SimConfig& c, auto& k, auto& v) { c.p_mean = parse_double(k, v); }},
      {"rain_radius", [](SimConfig& c, auto& k, auto& v) { c.rain_radius = parse_double(k, v); }},
      {"r0_min_frac", [](SimConfig& c, auto& k, auto& v) { c.r0_min_frac = parse_double(k, v); }},
      {"r0_max_frac", [](SimConfig& c, auto& k, auto& v) { c.r0_max_frac = parse_double(k, v); }},
      {"v_max", [](SimConfig& c, auto& k, auto& v) { c.v_max = parse_double(k, v); }},
      {"r_half", [](SimConfig& c, auto& k, auto& v) { c.r_half = parse_double(k, v); }},
      {"steepness", [](SimConfig& c, auto& k, auto& v) { c.steepness = parse_double(k, v); }},
  };
  return table;
}

}  // namespace

std::string to_string(OUScheme s) { return s == OUScheme::euler ? "euler" : "exact"; }

MotionParams SimConfig::motion() const {
  auto settling = TerminalSpeedParams::for_rain_radius(rain_radius, v_max);
  if (r_half) settling.r_half = *r_half;
  settling.steepness = steepness ? *steepness : 2.0 / settling.r_half;
  return {eps_rf, eps_bm, sigma, dt, settling};
}

void SimConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(domain_half_width > 0.0)) fail("domain_half_width must be > 0");
  if (n_particles < 2) fail("n_particles must be >= 2");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (max_iterations < 0) fail("max_iterations must be >= 0");
  if (sigma < 0.0) fail("sigma must be >= 0");
  if (lambda < 0.0) fail("lambda must be >= 0");
  if (eps_rf && vortex_count > 0 && lambda * dt >= 1.0)
    fail("lambda * dt must be < 1 (lambda = " + fmt(lambda) + ", dt = " + fmt(dt) + ")");
  if (vortex_reg_eps < 0.0) fail("vortex_reg_eps must be >= 0");
  if (p_mean < 0.0 || p_mean > 1.0) fail("p_mean must lie in [0, 1]");
  if (!(rain_radius > 0.0)) fail("rain_radius must be > 0");
  if (!(r0_min_frac > 0.0) || r0_max_frac < r0_min_frac)
    fail("initial radius fractions need 0 < r0_min_frac <= r0_max_frac");
  if (v_max < 0.0) fail("v_max must be >= 0");
  const auto m = motion();
  if (!(m.settling.r_half > 0.0)) fail("r_half must be > 0");
  if (!(m.settling.steepness > 0.0)) fail("steepness must be > 0");
}

void apply_config_key(SimConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(cfg, key, value);
}

ParsedConfig parse_config(std::istream& in, const std::string& source,
                          const std::vector<std::string>& extra_keys) {
  ParsedConfig out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(extra_keys.begin(), extra_keys.end(), key) != extra_keys.end()) {
      out.extra.emplace_back(key, value);
      continue;
    }
    try {
      apply_config_key(out.sim, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

ParsedConfig load_config_file(const std::string& path, const std::vector<std::string>& extra_keys) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, path, extra_keys);
}

std::string format_config(const SimConfig& c) {
  std::ostringstream os;
  os << "domain_half_width = " << fmt(c.domain_half_width) << '\n'
     << "n_particles = " << c.n_particles << '\n'
     << "dt = " << fmt(c.dt) << '\n'
     << "max_iterations = " << c.max_iterations << '\n'
     << "eps_rf = " << (c.eps_rf ? 1 : 0) << '\n'
     << "eps_bm = " << (c.eps_bm ? 1 : 0) << '\n'
     << "sigma = " << fmt(c.sigma) << '\n'
     << "vortex_count = " << c.vortex_count << '\n'
     << "lambda = " << fmt(c.lambda) << '\n'
     << "vortex_reg_eps = " << fmt(c.vortex_reg_eps) << '\n'
     << "pin_vortices = " << (c.pin_vortices ? 1 : 0) << '\n'
     << "ou_scheme = " << to_string(c.ou_scheme) << '\n'
     << "p_mean = " << fmt(c.p_mean) << '\n'
     << "rain_radius = " << fmt(c.rain_radius) << '\n'
     << "r0_min_frac = " << fmt(c.r0_min_frac) << '\n'
     << "r0_max_frac = " << fmt(c.r0_max_frac) << '\n'
     << "v_max = " << fmt(c.v_max) << '\n';
  if (c.r_half) os << "r_half = " << fmt(*c.r_half) << '\n';
  if (c.steepness) os << "steepness = " << fmt(*c.steepness) << '\n';
  return os.str();
}

}  // namespace rainsim
