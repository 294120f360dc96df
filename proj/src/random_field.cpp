#include "rainsim/random_field.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace rainsim {

namespace {

struct OUCoefficients {
  double decay;
  double noise;
};

OUCoefficients ou_coefficients(const OUParams& p) {
  if (!(p.dt > 0.0)) throw ConfigError("OU dt must be positive");
  if (p.lambda < 0.0) throw ConfigError("OU lambda must be nonnegative");
  if (p.lambda * p.dt >= 1.0)
    throw NumericalError("OU step unstable: lambda*dt = " + std::to_string(p.lambda * p.dt) +
                         " (lambda = " + std::to_string(p.lambda) +
                         ", dt = " + std::to_string(p.dt) + ") must be < 1");
  if (p.lambda == 0.0) return {1.0, 0.0};
  if (p.scheme == OUScheme::euler) return {1.0 - p.lambda * p.dt, p.lambda * std::sqrt(p.dt)};
  const double decay = std::exp(-p.lambda * p.dt);
  return {decay, p.lambda * std::sqrt(-std::expm1(-2.0 * p.lambda * p.dt) / (2.0 * p.lambda))};
}

}  // namespace

OUState ou_step(const OUState& xi, const OUParams& p, std::span<const double> noise) {
  if (noise.size() != xi.values.size())
    throw InvalidStateError("ou_step: expected " + std::to_string(xi.values.size()) +
                            " noise draws, got " + std::to_string(noise.size()));
  const auto c = ou_coefficients(p);
  OUState out{xi.values, xi.time + p.dt};
  for (std::size_t k = 0; k < out.values.size(); ++k)
    out.values[k] = c.decay * out.values[k] + c.noise * noise[k];
  return out;
}

void ou_step_inplace(OUState& xi, const OUParams& p, RngStream& rng) {
  const auto c = ou_coefficients(p);
  for (double& v : xi.values) v = c.decay * v + c.noise * rng.normal();
  xi.time += p.dt;
}

Vec2 vortex_velocity(Vec2 x, const VortexSet& vs, const OUState& xi, const Domain& d) {
  constexpr double inv_two_pi = 0.5 * std::numbers::inv_pi;
  const double eps2 = vs.reg_eps * vs.reg_eps;
  const double w = d.width();
  const double inv_w = 1.0 / w;
  double ux = 0.0;
  double uy = 0.0;
  for (std::size_t k = 0; k < vs.centers.size(); ++k) {
    double rx = x.x - vs.centers[k].x;
    double ry = x.y - vs.centers[k].y;
    rx -= w * std::nearbyint(rx * inv_w);
    ry -= w * std::nearbyint(ry * inv_w);
    const double r2 = rx * rx + ry * ry;
    if (r2 == 0.0) continue;
    const double s = xi.values[k] / (r2 + eps2);
    ux += s * ry;
    uy -= s * rx;
  }
  return {inv_two_pi * ux, inv_two_pi * uy};
}

VortexSet sample_vortex_centers(std::size_t count, const Domain& d, RngStream& rng,
                                double reg_eps) {
  if (reg_eps < 0.0) throw ConfigError("vortex reg_eps must be nonnegative");
  VortexSet vs;
  vs.reg_eps = reg_eps;
  vs.centers.reserve(count);
  const double h = d.half_width();
  for (std::size_t k = 0; k < count; ++k) {
    const double cx = rng.uniform(-h, h);
    const double cy = rng.uniform(-h, h);
    vs.centers.push_back(wrap_position({cx, cy}, d));
  }
  return vs;
}

}  // namespace rainsim
