#ifndef RAINSIM_CORE_HPP
#define RAINSIM_CORE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace rainsim {

// Error categories. The CLI maps each one to its own exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
};

/// Square periodic domain [-half_width, half_width)^2.
class Domain {
 public:
  explicit Domain(double half_width = 2.0);

  double half_width() const { return half_width_; }
  double width() const { return 2.0 * half_width_; }
  double area() const { return width() * width(); }

 private:
  double half_width_;
};

Vec2 wrap_position(Vec2 p, const Domain& d);

/// Shortest periodic representative of b - a.
Vec2 min_image_displacement(Vec2 a, Vec2 b, const Domain& d);

struct Particle {
  int id = 0;
  Vec2 position;
  double volume = 0.0;
  bool alive = true;
};

double radius_from_volume(double v);
double volume_from_radius(double r);

/// Per-replica random stream. Draws are a pure function of (seed, stream_id).
class RngStream {
 public:
  using Engine = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on (0, 1).
  double uniform();
  double uniform(double lo, double hi);
  double normal();
  double exponential(double rate);

  Engine& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace rainsim

#endif  // RAINSIM_CORE_HPP
