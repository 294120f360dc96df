#include "rainsim/core.hpp"

namespace rainsim {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double wrap_coordinate(double c, double half_width) {
  if (c >= -half_width && c < half_width) return c;
  const double w = 2.0 * half_width;
  double r = c + half_width;
  r -= w * std::floor(r / w);
  // floor can leave r == w for tiny negative inputs
  if (r >= w) r -= w;
  return r - half_width;
}

double min_image_coordinate(double delta, double width) {
  return delta - width * std::nearbyint(delta / width);
}

}  // namespace

Domain::Domain(double half_width) : half_width_(half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ConfigError("domain half_width must be positive and finite, got " +
                      std::to_string(half_width));
}

Vec2 wrap_position(Vec2 p, const Domain& d) {
  return {wrap_coordinate(p.x, d.half_width()), wrap_coordinate(p.y, d.half_width())};
}

Vec2 min_image_displacement(Vec2 a, Vec2 b, const Domain& d) {
  const double w = d.width();
  return {min_image_coordinate(b.x - a.x, w), min_image_coordinate(b.y - a.y, w)};
}

double radius_from_volume(double v) {
  if (v < 0.0 || std::isnan(v))
    throw InvalidStateError("negative volume " + std::to_string(v));
  return std::cbrt(3.0 * v / (4.0 * std::numbers::pi));
}

double volume_from_radius(double r) {
  if (r < 0.0 || std::isnan(r))
    throw InvalidStateError("negative radius " + std::to_string(r));
  return 4.0 / 3.0 * std::numbers::pi * r * r * r;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream_id + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(splitmix64(state)),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(stream_id >> 32),
                    static_cast<std::uint32_t>(stream_id)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  // 53-bit mantissa, shifted off zero
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential(double rate) { return -std::log(uniform()) / rate; }

}  // namespace rainsim
