#pragma once

#include <cstdint>
#include <string_view>

namespace rilsim {

// All simulation randomness flows through SplitMix64 plus the helpers below.
// The standard <random> distributions are implementation-defined, which would
// break the byte-identical-log contract, so bounded draws are done by hand.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in [0, n); n must be > 0. Multiply-shift, bias < 2^-64.
  std::uint64_t uniform_below(std::uint64_t n) {
    const unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

inline std::uint64_t mix_key(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kIssuePhase = 1;
inline constexpr std::uint64_t kGossipPhase = 2;

// Per-(round, court, phase) substream. Keyed by the court id string, not its
// position, so removing a court from a scenario leaves every other court's
// stream untouched; that independence is what the autonomy tests rely on.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t round,
                            std::string_view court_id, std::uint64_t phase) {
  std::uint64_t k = mix_key(seed, round);
  k = mix_key(k, fnv1a64(court_id));
  k = mix_key(k, phase);
  return SplitMix64(k);
}

}  // namespace rilsim
