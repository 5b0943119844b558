#pragma once

#include <cstdint>
#include <vector>

namespace camr {

// splitmix64: tiny, fully specified, identical on every platform. The corpus
// generator and the property tests depend on cross-platform reproducibility,
// which rules out unspecified std distributions.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// unbiased draw from [0, n) by rejection
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
  std::uint64_t v;
  do {
    v = rng.next();
  } while (v >= limit);
  return v % n;
}

// Fisher-Yates with the deterministic generator above
template <typename T>
void shuffle_vec(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = std::size_t(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace camr
