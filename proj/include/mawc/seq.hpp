#pragma once
#include <cstdint>
#include <vector>

#include "mawc/rng.hpp"

namespace mawc {

// A length-n sequence over a finite alphabet, one symbol per entry.
using Seq = std::vector<uint8_t>;

// Strong-typicality test against a reference joint pmf over several symbol
// streams: a tuple of sequences passes iff every zero-probability joint cell
// has count 0 and every other cell satisfies |count/n - P(cell)| <= delta
// (with a 1e-12 slack for float noise). The support condition is what rejects
// wrong codewords on channels with deterministic structure; the additive
// window only has to absorb sampling noise, so deltas around 0.2-0.4 are the
// useful range at desk-scale blocklengths.
//
// `sizes` lists the alphabet sizes of the streams; `pmf` is the joint pmf in
// row-major order (first stream slowest). Streams must share a common length.
struct TypicalityTest {
  std::vector<int> sizes;
  std::vector<double> pmf;
  double delta = 0.05;

  bool accept(const std::vector<const Seq*>& streams) const;
  bool accept2(const Seq& a, const Seq& b) const;
  bool accept3(const Seq& a, const Seq& b, const Seq& c) const;
};

// i.i.d. draw of length n from pmf `p` (size k).
Seq draw_iid(Rng& rng, const std::vector<double>& p, int n);

// Per-symbol conditional draw: row r of `rows` (stride `out`) conditioned on
// the tuple of parent streams, whose mixed-radix index is produced by `index`.
Seq draw_conditional(Rng& rng, const std::vector<double>& rows, int out,
                     const std::vector<const Seq*>& parents,
                     const std::vector<int>& parent_sizes);

}  // namespace mawc
