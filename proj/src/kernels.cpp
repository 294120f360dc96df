#include "rainsim/kernels.hpp"

#include <cmath>

namespace rainsim {

double contact_scale(double v, double w) {
  if (v < 0.0 || w < 0.0) throw InvalidStateError("contact_scale: negative volume");
  return (std::cbrt(v) + std::cbrt(w)) * std::cbrt(3.0 / (4.0 * std::numbers::pi));
}

double j_phi_local(const TestFunction& phi, Vec2 x, double v, double w) {
  return phi(x, v + w) - phi(x, v) - phi(x, w);
}

double j_phi_nonlocal(const TestFunction& phi, Vec2 x, double v, Vec2 y, double w) {
  const double merged = v >= w ? phi(x, v + w) : phi(y, v + w);
  return merged - phi(x, v) - phi(y, w);
}

double local_limit_kernel(double v, double w, const Efficiency& k) {
  const double f = contact_scale(v, w);
  return k(v, w) * f * f * f;
}

double ball_average(const Density& rho, const TestFunction& phi, Vec2 x, double v, double w,
                    double delta, const BallQuadrature& q) {
  if (q.radial_nodes < 1 || q.angular_nodes < 1)
    throw ConfigError("ball quadrature needs at least one node per direction");
  const double radius = delta * contact_scale(v, w);
  if (radius == 0.0) return j_phi_local(phi, x, v, w) * rho(x, w);

  const double h = radius / q.radial_nodes;
  const double dtheta = 2.0 * std::numbers::pi / q.angular_nodes;
  double sum = 0.0;
  for (int i = 0; i < q.radial_nodes; ++i) {
    const double r_in = i * h;
    const double r_out = r_in + h;
    const double r_mid = 0.5 * (r_in + r_out);
    // exact annulus area split evenly over the angular nodes
    const double weight = 0.5 * (r_out * r_out - r_in * r_in) * dtheta;
    double ring = 0.0;
    for (int j = 0; j < q.angular_nodes; ++j) {
      const double theta = (j + 0.5) * dtheta;
      const Vec2 y{x.x + r_mid * std::cos(theta), x.y + r_mid * std::sin(theta)};
      ring += j_phi_nonlocal(phi, x, v, y, w) * rho(y, w);
    }
    sum += weight * ring;
  }
  return sum / (std::numbers::pi * radius * radius);
}

BallAverageResult ball_average_error(const Density& rho, const TestFunction& phi, Vec2 x,
                                     double v, double w, std::span<const double> deltas,
                                     const BallQuadrature& q) {
  const double pointwise = j_phi_local(phi, x, v, w) * rho(x, w);
  const BallQuadrature refined{2 * q.radial_nodes, 2 * q.angular_nodes};
  BallAverageResult out;
  out.errors.reserve(deltas.size());
  for (double delta : deltas) {
    const double err = std::abs(ball_average(rho, phi, x, v, w, delta, q) - pointwise);
    const double err_fine = std::abs(ball_average(rho, phi, x, v, w, delta, refined) - pointwise);
    const double change = std::abs(err_fine - err);
    if (change > 0.1 * err && change > 1e-12) out.flagged = true;
    out.errors.push_back(err);
  }
  return out;
}

}  // namespace rainsim
