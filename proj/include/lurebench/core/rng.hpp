#pragma once

#include <cstdint>
#include <string>

namespace lurebench {

// splitmix64. Stable across platforms, unlike <random> distributions, so
// every artifact derived from a seed is byte-reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-ish value in [0, bound). Modulo bias is irrelevant here: these
  // streams drive cosmetic choices and URL tokens, nothing cryptographic.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

 private:
  std::uint64_t state_;
};

inline constexpr char kTokenAlphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789";

// k-th token of the stream seeded by `seed`. Stateless in (seed, k) so the
// k-th issued token is identical across runs regardless of harness history.
inline std::string token_at(std::uint64_t seed, std::uint64_t k, int length) {
  SplitMix64 rng(seed ^ (0xA0761D6478BD642FULL * (k + 1)));
  std::string out;
  out.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i)
    out.push_back(kTokenAlphabet[rng.below(36)]);
  return out;
}

}  // namespace lurebench
