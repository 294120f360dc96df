#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rainsim/dynamics.hpp"

using namespace rainsim;

namespace {

std::vector<Particle> grid_particles(std::size_t n, double volume) {
  std::vector<Particle> ps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n);
    ps[i] = {static_cast<int>(i), {-1.9 + 3.8 * t, 1.9 - 3.8 * std::fmod(7.3 * t, 1.0)}, volume, true};
  }
  return ps;
}

}  // namespace

TEST_CASE("terminal speed is anchored at zero and saturates") {
  const auto p = TerminalSpeedParams::for_rain_radius(0.0004);
  CHECK(p.r_half == doctest::Approx(0.002));
  CHECK(p.steepness == doctest::Approx(1000.0));
  CHECK(terminal_speed(0.0, p) == 0.0);
  const double r_far = p.r_half + 50.0 / p.steepness;
  CHECK(terminal_speed(volume_from_radius(r_far), p) == doctest::Approx(p.v_max).epsilon(1e-6));

  // independent evaluation at R = r_half
  const double l0 = 1.0 / (1.0 + std::exp(p.steepness * p.r_half));
  const double expected = p.v_max * (0.5 - l0) / (1.0 - l0);
  CHECK(terminal_speed(volume_from_radius(p.r_half), p) == doctest::Approx(expected).epsilon(1e-12));

  double last = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double s = terminal_speed(volume_from_radius(1e-4 * i), p);
    CHECK(s >= last);
    last = s;
  }
  CHECK(terminal_speed(1.0, {0.0, 0.002, 1000.0}) == 0.0);
}

TEST_CASE("pure settling moves every particle straight down by f dt") {
  const Domain d(2.0);
  MotionParams mp;
  mp.eps_bm = false;
  mp.eps_rf = false;
  mp.dt = 1e-3;
  mp.settling = TerminalSpeedParams::for_rain_radius(0.02);
  const double vol = volume_from_radius(0.05);
  const double c = terminal_speed(vol, mp.settling);
  auto ps = grid_particles(50, vol);
  const auto before = ps;
  RngStream rng(1, 0);
  em_step(ps, VortexSet{}, OUState::zeros(0), mp, d, rng);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const Vec2 disp = min_image_displacement(before[i].position, ps[i].position, d);
    CHECK(disp.x == doctest::Approx(0.0));
    CHECK(disp.y == doctest::Approx(-c * mp.dt).epsilon(1e-9));
  }
}

TEST_CASE("frozen dynamics leave positions unchanged") {
  const Domain d(2.0);
  MotionParams mp;
  mp.eps_bm = false;
  mp.eps_rf = false;
  mp.settling.v_max = 0.0;
  auto ps = grid_particles(20, 1e-6);
  const auto before = ps;
  RngStream rng(1, 0);
  em_step(ps, VortexSet{}, OUState::zeros(0), mp, d, rng);
  for (std::size_t i = 0; i < ps.size(); ++i) CHECK(ps[i].position == before[i].position);
}

TEST_CASE("Brownian increments have variance sigma^2 dt and are isotropic") {
  const Domain d(2.0);
  MotionParams mp;
  mp.eps_bm = true;
  mp.eps_rf = false;
  mp.sigma = 0.7;
  mp.dt = 1e-4;
  mp.settling.v_max = 0.0;
  const std::size_t n = 100000;
  std::vector<Particle> ps(n);
  for (std::size_t i = 0; i < n; ++i) ps[i] = {static_cast<int>(i), {0.0, 0.0}, 1e-9, true};
  RngStream rng(17, 3);
  em_step(ps, VortexSet{}, OUState::zeros(0), mp, d, rng);
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (const auto& p : ps) {
    sx += p.position.x;
    sy += p.position.y;
    sxx += p.position.x * p.position.x;
    syy += p.position.y * p.position.y;
  }
  const double nn = static_cast<double>(n);
  const double vx = sxx / nn - (sx / nn) * (sx / nn);
  const double vy = syy / nn - (sy / nn) * (sy / nn);
  const double target = mp.sigma * mp.sigma * mp.dt;
  CHECK(std::abs(vx - target) <= 0.03 * target);
  CHECK(std::abs(vy - target) <= 0.03 * target);
  CHECK(std::abs(vx - vy) <= 0.03 * target);
}

TEST_CASE("em_step only touches positions and wraps them") {
  const Domain d(2.0);
  RngStream rng(4, 4);
  auto vs = sample_vortex_centers(15, d, rng);
  OUState xi = OUState::zeros(15);
  for (auto& v : xi.values) v = 30.0 * rng.normal();
  MotionParams mp;
  mp.eps_rf = true;
  mp.eps_bm = true;
  mp.sigma = 3.0;
  mp.dt = 1e-2;
  std::vector<Particle> ps;
  for (int i = 0; i < 300; ++i)
    ps.push_back({i, {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}, rng.uniform(1e-9, 1e-4), i % 7 != 0});
  const auto before = ps;
  for (int s = 0; s < 20; ++s) em_step(ps, vs, xi, mp, d, rng);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    CHECK(ps[i].id == before[i].id);
    CHECK(ps[i].volume == before[i].volume);
    CHECK(ps[i].alive == before[i].alive);
    if (!ps[i].alive) CHECK(ps[i].position == before[i].position);
    CHECK(ps[i].position.x >= -2.0);
    CHECK(ps[i].position.x < 2.0);
    CHECK(ps[i].position.y >= -2.0);
    CHECK(ps[i].position.y < 2.0);
  }
}

TEST_CASE("em_step is deterministic for a given stream") {
  const Domain d(2.0);
  MotionParams mp;
  mp.sigma = 1.0;
  auto a = grid_particles(100, 1e-6);
  auto b = a;
  RngStream ra(10, 1), rb(10, 1);
  for (int s = 0; s < 10; ++s) {
    em_step(a, VortexSet{}, OUState::zeros(0), mp, d, ra);
    em_step(b, VortexSet{}, OUState::zeros(0), mp, d, rb);
  }
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].position == b[i].position);
}

TEST_CASE("non-finite displacement is reported") {
  const Domain d(2.0);
  MotionParams mp;
  mp.sigma = std::numeric_limits<double>::infinity();
  auto ps = grid_particles(3, 1e-6);
  RngStream rng(1, 1);
  CHECK_THROWS_AS(em_step(ps, VortexSet{}, OUState::zeros(0), mp, d, rng), NumericalError);
}
