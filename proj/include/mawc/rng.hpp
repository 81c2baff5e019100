#pragma once
#include <cstdint>

namespace mawc {

uint64_t splitmix64(uint64_t& state);

// Deterministic subseed derivation: identical on every platform.
uint64_t mix_seed(uint64_t root, uint64_t a, uint64_t b = 0, uint64_t c = 0);

// Counter-based generator built on splitmix64. No std:: distributions are used
// anywhere so that streams are bit-identical across platforms.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() { return splitmix64(state); }
  double uni() { return (double)(next() >> 11) * 0x1.0p-53; }  // [0,1)
  // Sample from w[0..k-1] (assumed to sum to ~1); mass shortfall goes to k-1.
  int categorical(const double* w, int k);
  uint64_t below(uint64_t bound);  // uniform in [0, bound)
};

}  // namespace mawc
