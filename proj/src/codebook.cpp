#include "mawc/codebook.hpp"

namespace mawc {

Seq Codebook::word(uint64_t w) const {
  Rng rng{mix_seed(seed, w)};
  return draw_iid(rng, pmf, n);
}

Seq CondCodebook::word(uint64_t w) const {
  Rng rng{mix_seed(seed, w)};
  std::vector<const Seq*> ps;
  ps.reserve(parents.size());
  for (const Seq& p : parents) ps.push_back(&p);
  return draw_conditional(rng, rows, out, ps, parent_sizes);
}

uint64_t KeyMap::operator()(uint64_t x) const {
  Rng rng{mix_seed(seed, x)};
  return rng.below(range);
}

SplitKey split_key(uint64_t k, uint64_t r1) {
  return {k % r1, k / r1};
}

uint64_t otp_encrypt(uint64_t m, uint64_t k, uint64_t modulus) {
  return (m + k) % modulus;
}

uint64_t otp_decrypt(uint64_t c, uint64_t k, uint64_t modulus) {
  return (c + modulus - k % modulus) % modulus;
}

}  // namespace mawc
