#ifndef MAJ3_RNG_HPP
#define MAJ3_RNG_HPP

#include <cstdint>
#include <random>

namespace maj3 {

// Finalizer of the splitmix64 generator (Steele/Lea/Flood). Bijective on
// uint64, avalanches every input bit across the output.
inline constexpr std::uint64_t avalanche64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-trial seed derivation. This is part of the replay contract and must
// never change between releases:
//
//   h0 = avalanche64(master_seed)
//   h1 = avalanche64(h0 XOR n)
//   h2 = avalanche64(h1 XOR trial_index)
//
// The result seeds a std::mt19937_64, whose behavior is fully specified by
// the C++ standard, so a (master_seed, n, trial_index) triple reproduces a
// trial bit-for-bit on any conforming platform.
inline constexpr std::uint64_t trial_seed(std::uint64_t master_seed,
                                          std::uint64_t n,
                                          std::uint64_t trial_index) noexcept {
  std::uint64_t h = avalanche64(master_seed);
  h = avalanche64(h ^ n);
  h = avalanche64(h ^ trial_index);
  return h;
}

// Deterministic random stream. Wraps mt19937_64 with our own output mappers;
// std::uniform_*_distribution is implementation-defined and would break
// byte-exact replay across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0,1]: ((word >> 11) + 1) * 2^-53, i.e. the values k*2^-53 for
  // k in [1, 2^53]. Never returns 0.0, always can return 1.0, and every value
  // is an exact double.
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on {1, ..., n} by modulo rejection (unbiased).
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n + 1;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace maj3

#endif  // MAJ3_RNG_HPP
