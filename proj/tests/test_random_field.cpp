#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rainsim/random_field.hpp"

using namespace rainsim;

namespace {

struct SampleStats {
  double mean;
  double var;
};

// Monte Carlo mean and variance of xi(T) started at xi0, many independent paths.
SampleStats ou_at_horizon(OUScheme scheme, double lambda, double dt, double horizon, double xi0,
                          std::size_t paths, std::uint64_t seed) {
  const OUParams p{lambda, dt, scheme};
  const auto steps = static_cast<long>(std::llround(horizon / dt));
  OUState st{std::vector<double>(paths, xi0), 0.0};
  RngStream rng(seed, 0);
  for (long s = 0; s < steps; ++s) ou_step_inplace(st, p, rng);
  double m = 0.0;
  for (double v : st.values) m += v;
  m /= static_cast<double>(paths);
  double v2 = 0.0;
  for (double v : st.values) v2 += (v - m) * (v - m);
  return {m, v2 / static_cast<double>(paths - 1)};
}

}  // namespace

TEST_CASE("ou_step deterministic cases") {
  const std::vector<double> zero{0.0};
  SUBCASE("lambda = 0 freezes the process") {
    const OUState s{{0.0}, 0.0};
    const auto next = ou_step(s, {0.0, 0.1, OUScheme::euler}, std::vector<double>{1.3});
    CHECK(next.values[0] == 0.0);
    CHECK(next.time == doctest::Approx(0.1));
  }
  SUBCASE("pure drift step") {
    const OUState s{{1.0}, 0.0};
    CHECK(ou_step(s, {1.0, 0.1, OUScheme::euler}, zero).values[0] == doctest::Approx(0.9));
    CHECK(ou_step(s, {1.0, 0.1, OUScheme::exact}, zero).values[0] == doctest::Approx(std::exp(-0.1)));
  }
  SUBCASE("noise enters with lambda sqrt(dt)") {
    const OUState s{{0.0}, 0.0};
    CHECK(ou_step(s, {2.0, 0.01, OUScheme::euler}, std::vector<double>{1.0}).values[0] ==
          doctest::Approx(0.2));
    const double exact_sd = 2.0 * std::sqrt((1.0 - std::exp(-0.04)) / 4.0);
    CHECK(ou_step(s, {2.0, 0.01, OUScheme::exact}, std::vector<double>{1.0}).values[0] ==
          doctest::Approx(exact_sd));
  }
}

TEST_CASE("ou_step rejects unstable steps and mismatched noise") {
  const OUState s{{0.0, 0.0}, 0.0};
  CHECK_THROWS_AS(ou_step(s, {1500.0, 1e-3, OUScheme::euler}, std::vector<double>{0.0, 0.0}),
                  NumericalError);
  CHECK_THROWS_AS(ou_step(s, {1.0, 1e-3, OUScheme::euler}, std::vector<double>{0.0}), InvalidStateError);
  CHECK_NOTHROW(ou_step(s, {1500.0, 1e-4, OUScheme::euler}, std::vector<double>{0.0, 0.0}));
}

TEST_CASE("exact OU long-run variance approaches lambda / 2 (lambda = 4)") {
  const OUParams p{4.0, 0.01, OUScheme::exact};
  OUState st = OUState::zeros(1);
  RngStream rng(2024, 0);
  for (int i = 0; i < 2000; ++i) ou_step_inplace(st, p, rng);  // burn-in of 80 correlation times
  const int n = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    ou_step_inplace(st, p, rng);
    s += st.values[0];
    s2 += st.values[0] * st.values[0];
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(var - ou_stationary_variance(4.0)) <= 0.05 * ou_stationary_variance(4.0));
}

TEST_CASE("Euler and exact schemes agree to first order in dt") {
  // bias of the Euler scheme against the exact transition law at T = 0.5:
  //   mean   xi0 (1 - lambda dt)^n   vs  xi0 e^{-lambda T}
  //   var    lambda^2 dt (1 - a^{2n}) / (1 - a^2), a = 1 - lambda dt
  const double lambda = 4.0, horizon = 0.5, xi0 = 1.0;
  auto var_error = [&](double dt) {
    const double a = 1.0 - lambda * dt;
    const double n = horizon / dt;
    const double euler_var = lambda * lambda * dt * (1.0 - std::pow(a, 2.0 * n)) / (1.0 - a * a);
    const double exact_var = 0.5 * lambda * (1.0 - std::exp(-2.0 * lambda * horizon));
    return std::abs(euler_var - exact_var);
  };
  auto mean_error = [&](double dt) {
    return std::abs(xi0 * std::pow(1.0 - lambda * dt, horizon / dt) - xi0 * std::exp(-lambda * horizon));
  };
  const double mr = mean_error(1e-2) / mean_error(1e-3);
  const double vr = var_error(1e-2) / var_error(1e-3);
  CHECK(mr > 5.0);
  CHECK(mr < 15.0);
  CHECK(vr > 5.0);
  CHECK(vr < 15.0);

  // the simulated schemes reproduce those laws
  const auto euler = ou_at_horizon(OUScheme::euler, lambda, 1e-2, horizon, xi0, 100000, 5);
  const auto exact = ou_at_horizon(OUScheme::exact, lambda, 1e-2, horizon, xi0, 100000, 6);
  const double a = 1.0 - lambda * 1e-2;
  const double euler_var_theory = lambda * lambda * 1e-2 * (1.0 - std::pow(a, 100.0)) / (1.0 - a * a);
  CHECK(euler.mean == doctest::Approx(std::pow(a, 50.0)).epsilon(0.03));
  CHECK(euler.var == doctest::Approx(euler_var_theory).epsilon(0.02));
  CHECK(exact.mean == doctest::Approx(std::exp(-2.0)).epsilon(0.03));
  CHECK(exact.var == doctest::Approx(0.5 * lambda * (1.0 - std::exp(-4.0))).epsilon(0.02));
}

TEST_CASE("vortex_velocity formula cases") {
  const Domain d(2.0);
  SUBCASE("a particle on the center feels nothing") {
    const VortexSet vs{{{0.5, -0.3}}, 0.01};
    const Vec2 u = vortex_velocity({0.5, -0.3}, vs, OUState{{3.0}, 0.0}, d);
    CHECK(u.x == 0.0);
    CHECK(u.y == 0.0);
  }
  SUBCASE("single unregularized vortex") {
    const VortexSet vs{{{0.0, 0.0}}, 0.0};
    const double r = 0.3;
    const Vec2 u = vortex_velocity({r, 0.0}, vs, OUState{{1.0}, 0.0}, d);
    CHECK(u.x == doctest::Approx(0.0));
    CHECK(u.y == doctest::Approx(-1.0 / (2.0 * std::numbers::pi * r)));
  }
  SUBCASE("symmetric pair cancels at the midpoint") {
    const VortexSet vs{{{0.4, 0.0}, {-0.4, 0.0}}, 0.01};
    const Vec2 u = vortex_velocity({0.0, 0.0}, vs, OUState{{1.0, 1.0}, 0.0}, d);
    CHECK(std::abs(u.x) < 1e-14);
    CHECK(std::abs(u.y) < 1e-14);
  }
  SUBCASE("no vortices") {
    const Vec2 u = vortex_velocity({0.1, 0.2}, VortexSet{}, OUState::zeros(0), d);
    CHECK(u.x == 0.0);
    CHECK(u.y == 0.0);
  }
}

TEST_CASE("vortex field is linear in the intensities and bounded") {
  const Domain d(2.0);
  RngStream rng(77, 0);
  const auto vs = sample_vortex_centers(20, d, rng, 0.01);
  OUState xi = OUState::zeros(20);
  for (auto& v : xi.values) v = rng.normal();
  OUState scaled = xi;
  for (auto& v : scaled.values) v *= -2.5;
  for (int i = 0; i < 200; ++i) {
    const Vec2 x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    const Vec2 u = vortex_velocity(x, vs, xi, d);
    const Vec2 us = vortex_velocity(x, vs, scaled, d);
    CHECK(us.x == doctest::Approx(-2.5 * u.x).epsilon(1e-12));
    CHECK(us.y == doctest::Approx(-2.5 * u.y).epsilon(1e-12));
  }
  // one vortex, unit intensity, probed near its core where the bound is tight
  const double eps = 0.01;
  const VortexSet one{{{0.0, 0.0}}, eps};
  double worst = 0.0;
  for (int i = 1; i <= 4000; ++i) {
    const double r = 1e-4 * i;
    worst = std::max(worst, vortex_velocity({r, 0.0}, one, OUState{{1.0}, 0.0}, d).norm());
  }
  CHECK(worst <= 1.0 / (4.0 * std::numbers::pi * eps) + 1e-12);
  CHECK(worst > 0.99 / (4.0 * std::numbers::pi * eps));
}

TEST_CASE("regularized vortex field is divergence free") {
  const Domain d(2.0);
  const VortexSet vs{{{0.2, -0.1}}, 0.01};
  const OUState xi{{1.7}, 0.0};
  const double h = 1e-5;
  RngStream rng(8, 0);
  for (int i = 0; i < 100; ++i) {
    const Vec2 x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const double dudx = (vortex_velocity({x.x + h, x.y}, vs, xi, d).x -
                         vortex_velocity({x.x - h, x.y}, vs, xi, d).x) / (2 * h);
    const double dvdy = (vortex_velocity({x.x, x.y + h}, vs, xi, d).y -
                         vortex_velocity({x.x, x.y - h}, vs, xi, d).y) / (2 * h);
    CHECK(std::abs(dudx + dvdy) <= 1e-6);
  }
}

TEST_CASE("vortex centers are uniform and reproducible") {
  const Domain d(2.0);
  RngStream a(5, 0), b(5, 0);
  const auto va = sample_vortex_centers(100000, d, a);
  const auto vb = sample_vortex_centers(100000, d, b);
  CHECK(va.centers == vb.centers);
  double mx = 0.0, my = 0.0;
  for (const auto& c : va.centers) {
    CHECK(std::abs(c.x) <= 2.0);
    CHECK(std::abs(c.y) <= 2.0);
    mx += c.x;
    my += c.y;
  }
  mx /= 100000.0;
  my /= 100000.0;
  const double se = std::sqrt(16.0 / 12.0 / 100000.0);
  CHECK(std::abs(mx) < 3.0 * se);
  CHECK(std::abs(my) < 3.0 * se);
  RngStream c(5, 0);
  CHECK(sample_vortex_centers(0, d, c).size() == 0);
}
