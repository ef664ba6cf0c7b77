#pragma once

#include <cmath>
#include <cstdint>

namespace privbhq {

/// One round of the splitmix64 output function. Used for seeding and for
/// deriving per-task stream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed) { return seed; }

/// Folds a path of ids into a derived seed, so that e.g. replicate r of grid
/// point g sees the same stream no matter which thread runs it.
template <class... Ids>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t id, Ids... rest) {
  seed = mix64(seed + 0x9E3779B97F4A7C15ull + (id << 1));
  return derive_seed(seed, static_cast<std::uint64_t>(rest)...);
}

/// Lap(scale) quantile function: sign(u - 1/2) * scale * log(1 - 2|u - 1/2|)
/// negated, so u = 3/4 maps to +scale * log 2. u must lie strictly in (0, 1).
inline double laplace_inverse_cdf(double u, double scale) {
  const double x = u - 0.5;
  const double mag = scale * std::log(1.0 - 2.0 * std::fabs(x));
  return x < 0.0 ? mag : -mag;
}

/// Seedable xoshiro256++ stream. Streams are value types; concurrent
/// replicates must each own a stream derived via derive_seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t st = seed;
    for (auto& w : s_) {
      st += 0x9E3779B97F4A7C15ull;
      w = mix64(st);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1); endpoints are never produced.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Exp(1) draw.
  double exponential() { return -std::log(uniform()); }

  /// Lap(scale) draw by inverse CDF.
  double laplace(double scale) { return laplace_inverse_cdf(uniform(), scale); }

  /// N(0, 1) draw, Box-Muller with a cached partner.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 6.283185307179586476925287 * uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace privbhq
