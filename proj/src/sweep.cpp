#include "rainsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "rainsim/replica.hpp"

namespace rainsim {

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::sigma: return "sigma";
    case SweepParameter::vortex_count: return "vortex_count";
    case SweepParameter::lambda: return "lambda";
  }
  return "?";
}

SweepParameter parse_sweep_parameter(const std::string& s) {
  if (s == "sigma") return SweepParameter::sigma;
  if (s == "vortex_count") return SweepParameter::vortex_count;
  if (s == "lambda") return SweepParameter::lambda;
  throw ConfigError("unknown sweep parameter '" + s + "' (sigma|vortex_count|lambda)");
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  if (!std::is_sorted(values.begin(), values.end()))
    throw ConfigError("sweep values must be sorted ascending");
  if (replicas_per_value < 1) throw ConfigError("sweep needs at least one replica per value");
  for (double v : values) config_for(v).validate();
}

SimConfig SweepSpec::config_for(double value) const {
  SimConfig c = base;
  switch (varying) {
    case SweepParameter::sigma: c.sigma = value; break;
    case SweepParameter::lambda: c.lambda = value; break;
    case SweepParameter::vortex_count:
      if (value < 0.0 || value != std::floor(value))
        throw ConfigError("vortex counts must be nonnegative integers");
      c.vortex_count = static_cast<std::size_t>(value);
      break;
  }
  return c;
}

SweepRow aggregate_row(double value, double dt, const std::vector<std::optional<long>>& epochs) {
  SweepRow row;
  row.value = value;
  row.n_replicas = epochs.size();
  std::vector<double> hit;
  for (const auto& e : epochs) {
    if (e) hit.push_back(static_cast<double>(*e));
    else ++row.censored;
  }
  if (hit.empty()) return row;
  double mean = 0.0;
  for (double h : hit) mean += h;
  mean /= static_cast<double>(hit.size());
  double ss = 0.0;
  for (double h : hit) ss += (h - mean) * (h - mean);
  row.mean_epoch = mean;
  row.mean_time = mean * dt;
  row.std_dev = hit.size() > 1 ? std::sqrt(ss / static_cast<double>(hit.size() - 1)) : 0.0;
  return row;
}

SweepTable run_sweep(const SweepSpec& spec, std::uint64_t master_seed, unsigned workers) {
  spec.validate();
  const std::size_t nv = spec.values.size();
  const std::size_t nr = spec.replicas_per_value;
  const std::size_t jobs = nv * nr;

  SweepTable table;
  table.varying = spec.varying;
  table.master_seed = master_seed;
  table.base = spec.base;
  table.epochs.assign(nv, std::vector<std::optional<long>>(nr));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t v = job / nr;
      const std::size_t r = job % nr;
      try {
        const auto res = run_replica(spec.config_for(spec.values[v]), master_seed, job);
        table.epochs[v][r] = res.formation_epoch;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };

  const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs)));
  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t v = 0; v < nv; ++v)
    table.rows.push_back(aggregate_row(spec.values[v], spec.config_for(spec.values[v]).dt, table.epochs[v]));
  return table;
}

std::vector<double> parse_value_list(const std::string& s) {
  auto num = [&](const std::string& t) {
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw ConfigError("bad number '" + t + "' in value list '" + s + "'");
    return out;
  };
  auto trimmed = [](std::string t) {
    t.erase(0, t.find_first_not_of(" \t"));
    t.erase(t.find_last_not_of(" \t") + 1);
    return t;
  };
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos) throw ConfigError("range must be start:stop:step, got '" + s + "'");
    const double start = num(trimmed(s.substr(0, a)));
    const double stop = num(trimmed(s.substr(a + 1, b - a - 1)));
    const double step = num(trimmed(s.substr(b + 1)));
    if (!(step > 0.0) || stop < start) throw ConfigError("bad range '" + s + "'");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      // snap to 12 significant digits so 0.1:1:0.1 yields 0.3, not 0.30000000000000004
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
      out.push_back(std::strtod(buf, nullptr));
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const std::string tok = trimmed(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!tok.empty()) out.push_back(num(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

SweepSpec load_sweep_file(const std::string& path) {
  auto parsed = load_config_file(path, {"sweep_parameter", "sweep_values", "replicas"});
  SweepSpec spec;
  spec.base = parsed.sim;
  bool have_values = false;
  for (const auto& [k, v] : parsed.extra) {
    if (k == "sweep_parameter") spec.varying = parse_sweep_parameter(v);
    else if (k == "sweep_values") {
      spec.values = parse_value_list(v);
      have_values = true;
    } else if (k == "replicas") {
      long n = 0;
      auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
      if (ec != std::errc() || ptr != v.data() + v.size() || n < 1)
        throw ConfigError(path + ": replicas must be a positive integer");
      spec.replicas_per_value = static_cast<std::size_t>(n);
    }
  }
  if (!have_values) throw ConfigError(path + ": sweep_values is required");
  return spec;
}

std::vector<std::string> sweep_preset_names() {
  return {"brownian-sweep", "vortex-sweep", "lambda-sweep"};
}

SweepSpec sweep_preset(const std::string& name) {
  SweepSpec spec;
  spec.replicas_per_value = 10;
  SimConfig& c = spec.base;
  c.domain_half_width = 2.0;
  c.n_particles = 1000;
  c.dt = 1e-4;
  c.max_iterations = 3000;
  c.p_mean = 0.0;
  // desk-scale droplets: with the default radii contacts on a 4x4 torus are too rare
  c.rain_radius = 0.02;
  c.r0_min_frac = 0.5;
  c.r0_max_frac = 0.8;
  if (name == "brownian-sweep") {
    c.eps_rf = false;
    c.eps_bm = true;
    spec.varying = SweepParameter::sigma;
    spec.values = parse_value_list("0.1:1:0.1");
  } else if (name == "vortex-sweep") {
    c.eps_rf = true;
    c.eps_bm = false;
    c.lambda = 1500.0;
    spec.varying = SweepParameter::vortex_count;
    spec.values = {10, 25, 50, 100, 200, 400};
  } else if (name == "lambda-sweep") {
    c.eps_rf = true;
    c.eps_bm = false;
    c.vortex_count = 200;
    spec.varying = SweepParameter::lambda;
    spec.values = parse_value_list("100:1100:10");
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return spec;
}

}  // namespace rainsim
