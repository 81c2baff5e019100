#include "mawc/rng.hpp"

namespace mawc {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t mix_seed(uint64_t root, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t s = root;
  (void)splitmix64(s);
  s ^= 0x1000193u + a * 0x100000001b3ull;
  (void)splitmix64(s);
  s ^= 0x811c9dc5u + b * 0xc6a4a7935bd1e995ull;
  (void)splitmix64(s);
  s ^= c * 0x2545f4914f6cdd1dull + 0x9e3779b9u;
  uint64_t out = splitmix64(s);
  return out ? out : 0x6a09e667f3bcc908ull;
}

int Rng::categorical(const double* w, int k) {
  double r = uni();
  double acc = 0;
  for (int i = 0; i < k - 1; ++i) {
    acc += w[i];
    if (r < acc) return i;
  }
  return k - 1;
}

uint64_t Rng::below(uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling over the smallest covering power of two keeps the
  // distribution exactly uniform for any bound.
  uint64_t mask = bound - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  for (;;) {
    uint64_t v = next() & mask;
    if (v < bound) return v;
  }
}

}  // namespace mawc
