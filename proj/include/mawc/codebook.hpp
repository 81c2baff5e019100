#pragma once
#include <cstdint>
#include <vector>

#include "mawc/rng.hpp"
#include "mawc/seq.hpp"

namespace mawc {

// A codebook is a table of sequences indexed by a flat word index. Words are
// generated lazily but deterministically: word w of a codebook with subseed s
// is always drawn from Rng(mix_seed(s, w)), so regenerating a single word never
// requires materializing its neighbours.
struct Codebook {
  uint64_t seed = 0;
  uint64_t words = 0;
  int n = 0;
  std::vector<double> pmf;  // i.i.d. per-symbol distribution, size k

  Seq word(uint64_t w) const;
};

// Per-symbol conditional codebook: word w is drawn symbol-by-symbol from
// rows of a conditional kernel applied to a fixed parent tuple.
struct CondCodebook {
  uint64_t seed = 0;
  uint64_t words = 0;
  int out = 0;
  std::vector<double> rows;          // kernel rows, stride `out`
  std::vector<Seq> parents;          // fixed parent streams, common length n
  std::vector<int> parent_sizes;

  Seq word(uint64_t w) const;
};

// Seeded uniform random total function [0, domain) -> [0, range).
struct KeyMap {
  uint64_t seed = 0;
  uint64_t range = 1;
  uint64_t operator()(uint64_t x) const;
};

// Split a flat key k in [0, r1*r2) into (k mod r1, k div r1), both 0-based.
struct SplitKey {
  uint64_t lo = 0, hi = 0;
};
SplitKey split_key(uint64_t k, uint64_t r1);

// One-time pad over a power-of-two (or arbitrary) modulus.
uint64_t otp_encrypt(uint64_t m, uint64_t k, uint64_t modulus);
uint64_t otp_decrypt(uint64_t c, uint64_t k, uint64_t modulus);

}  // namespace mawc
