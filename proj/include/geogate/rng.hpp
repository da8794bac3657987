#pragma once

// Deterministic random streams for trajectory ensembles. Every
// trajectory owns an independent generator seeded from (master seed,
// trajectory index), so results do not depend on how trajectories are
// scheduled across threads.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace geogate {

namespace detail {

inline constexpr std::uint64_t golden64 = 0x9E3779B97F4A7C15ull;

// splitmix64 output function (Vigna), a strong 64-bit mixer
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t splitmix_next(std::uint64_t& state) {
  state += golden64;
  return mix64(state);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Collision-free for distinct indices at fixed master (the xor input
// is a bijection of the index).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return detail::mix64(master ^ (detail::golden64 * index));
}

// xoshiro256** (Blackman & Vigna); state expanded from the seed via
// splitmix64 so an all-zero state cannot occur.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix_next(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  // uniform on [0, 1) with 53 random bits
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

  // standard normal pair, Box-Muller
  void normal_pair(double& z0, double& z1) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    z0 = r * std::cos(a);
    z1 = r * std::sin(a);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double z0, z1;
    normal_pair(z0, z1);
    spare_ = z1;
    have_spare_ = true;
    return z0;
  }

  // complex Wiener increment: Re and Im independent N(0, dt/2), so
  // E[|dxi|^2] = dt and E[dxi^2] = 0
  std::complex<double> wiener(double dt) {
    if (dt < 0) throw std::runtime_error("wiener: negative dt");
    if (dt == 0) return {0.0, 0.0};
    const double sd = std::sqrt(0.5 * dt);
    double z0, z1;
    normal_pair(z0, z1);
    return {sd * z0, sd * z1};
  }

 private:
  std::uint64_t s_[4]{};
  double spare_ = 0;
  bool have_spare_ = false;
};

}  // namespace geogate
