#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gww {

// splitmix64; used to derive independent child seeds so that every random
// choice in a run is a pure function of the user seed.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t seed, std::string_view purpose,
                                std::uint64_t index = 0) {
  std::uint64_t h = seed;
  for (char c : purpose) h = mix64(h ^ static_cast<unsigned char>(c));
  return mix64(h ^ index);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform in [lo, hi].  Rejection-free modulo draw; the tiny bias is
  // irrelevant here and the result is identical on every platform.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(bits() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace gww
