#ifndef RAINSIM_KERNELS_HPP
#define RAINSIM_KERNELS_HPP

#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "rainsim/core.hpp"

namespace rainsim {

/// Collision efficiency k(v, w); expected bounded, symmetric and nonnegative.
using Efficiency = std::function<double(double, double)>;
/// Test function phi(x, v).
using TestFunction = std::function<double(Vec2, double)>;
/// Volume-resolved density rho(y, w).
using Density = std::function<double(Vec2, double)>;

inline Efficiency unit_efficiency() {
  return [](double, double) { return 1.0; };
}

/// Sum of the two sphere radii: (v^{1/3} + w^{1/3}) (3 / 4pi)^{1/3}.
double contact_scale(double v, double w);

/// phi(x, v + w) - phi(x, v) - phi(x, w).
double j_phi_local(const TestFunction& phi, Vec2 x, double v, double w);

/// Merged mass lands at x when v >= w, at y otherwise.
double j_phi_nonlocal(const TestFunction& phi, Vec2 x, double v, Vec2 y, double w);

/// k(v, w) f(v, w)^3, the point-interaction limit of the ball kernel.
double local_limit_kernel(double v, double w, const Efficiency& k);

/// Ratio between the alternate normalization (pi/2)(v^{1/3} + w^{1/3})^3 E(v, w)
/// and local_limit_kernel when E = k. Exposed, not reconciled.
constexpr double alternate_kernel_normalization_ratio() {
  return (0.5 * std::numbers::pi) / (3.0 / (4.0 * std::numbers::pi));
}

struct BallQuadrature {
  int radial_nodes = 32;
  int angular_nodes = 64;
};

struct BallAverageResult {
  std::vector<double> errors;  // one per delta
  bool flagged = false;        // node doubling moved some error by more than 10%
};

/// Mean of J^phi(x, v, y, w) rho(y, w) over the disc |y - x| <= delta f(v, w),
/// normalized by the disc area.
double ball_average(const Density& rho, const TestFunction& phi, Vec2 x, double v, double w,
                    double delta, const BallQuadrature& q = {});

/// |ball_average - J^phi(x, v, w) rho(x, w)| for each delta.
BallAverageResult ball_average_error(const Density& rho, const TestFunction& phi, Vec2 x,
                                     double v, double w, std::span<const double> deltas,
                                     const BallQuadrature& q = {});

}  // namespace rainsim

#endif  // RAINSIM_KERNELS_HPP
