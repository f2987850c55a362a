#ifndef MMOT_RNG_HPP
#define MMOT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>

namespace mmot {

/// Finalizing mix with full avalanche; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Tiny counter-based generator with a platform-independent output
/// sequence. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Independent generator for one (a, b, c) coordinate of a seeded run, e.g.
/// (tick, sensor_id, ray index). Streams with distinct coordinates are
/// uncorrelated, so work can be reordered or parallelized without changing
/// any drawn value.
constexpr SplitMix64 substream(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ mix64(a ^ 0xa0761d6478bd642full));
  s = mix64(s ^ mix64(b ^ 0xe7037ed1a0b428dbull));
  s = mix64(s ^ mix64(c ^ 0x8ebc6af09c88c6e3ull));
  return SplitMix64(s);
}

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
inline double uniformUnit(SplitMix64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// One standard normal draw via Box-Muller (cosine branch, two uniforms per
/// call); platform-independent unlike std::normal_distribution.
inline double standardNormal(SplitMix64& rng) {
  constexpr double kTwoPi = 6.28318530717958647692;
  const double u1 =
      (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniformUnit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace mmot

#endif  // MMOT_RNG_HPP
