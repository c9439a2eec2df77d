#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace braidopt {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of the sub-stream identified by `ids` under `root`. Different id
// tuples give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> ids) {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t id : ids) h = splitmix64(h ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_stream(std::uint64_t root, std::initializer_list<std::uint64_t> ids) {
  return Rng(derive_seed(root, ids));
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, bound), unbiased by rejecting the top partial block.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x = rng();
  while (x > limit) x = rng();
  return x % bound;
}

// Inclusive range [lo, hi].
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

// Index drawn from a discrete distribution (need not be normalized).
template <typename Range>
int sample_categorical(Rng& rng, const Range& probs) {
  double total = 0.0;
  for (double p : probs) total += p;
  double u = uniform01(rng) * total;
  int last = 0;
  int k = 0;
  for (double p : probs) {
    if (p > 0.0) {
      last = k;
      if (u < p) return k;
      u -= p;
    }
    ++k;
  }
  return last;
}

}  // namespace braidopt
