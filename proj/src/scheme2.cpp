#include "mawc/scheme2.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

#include "mawc/codebook.hpp"
#include "mawc/manifest.hpp"
#include "mawc/seq.hpp"

namespace mawc {

Scheme2Rates plan_scheme2(EntropyCache& ec, double r1, double r2, double tau) {
  Scheme2Rates r;
  double hsy = ec.Hc(A_S, A_Y | A_U1 | A_U2);
  double hsz = ec.Hc(A_S, A_Z);
  double e1 = ec.I(A_U1, A_Z | A_S);
  double e2 = ec.I(A_U2, A_Z | A_S);
  double e12 = ec.I(A_U1 | A_U2, A_Z | A_S);
  double d1 = ec.I(A_U1, A_Y, A_U2);
  double d2 = ec.I(A_U2, A_Y, A_U1);
  // Reconciliation layers must let the receiver pin down the previous state
  // sequence; everything extracted from the state stays under its equivocation
  // at the eavesdropper.  Hash bits (and padding) can only ride a stream the
  // receiver can actually resolve, so split them by each stream's share of the
  // decodable rate; a degenerate stream gets none.
  double recon = hsy + tau;
  double dsum = d1 + d2;
  r.r12 = dsum > 1e-9 ? recon * d1 / dsum : recon / 2;
  r.r22 = recon - r.r12;
  double budget = std::max(0.0, hsz - tau - recon);
  r.r11 = std::min(r1, budget);
  r.r21 = std::min(r2, std::max(0.0, budget - r.r11));
  r.r10 = r1 - r.r11;
  r.r20 = r2 - r.r21;
  double p1 = std::max(0.0, e1 + tau - (r.r11 + r.r12));
  double p2 = std::max(0.0, e2 + tau - (r.r21 + r.r22));
  double have = r.r11 + r.r12 + p1 + r.r21 + r.r22 + p2;
  if (have < e12 + tau) {
    double need = e12 + tau - have;
    if (dsum > 1e-9) {
      p1 += need * d1 / dsum;
      p2 += need * d2 / dsum;
    } else {
      p1 += need;
    }
  }
  r.r1t = r.r10 + r.r11 + r.r12 + p1;
  r.r2t = r.r20 + r.r21 + r.r22 + p2;
  return r;
}

namespace {

uint64_t rate_size(double rate, int n) {
  // Index spaces are 2^floor(n*rate): integer bit counts, one rounding rule.
  if (rate <= 1e-12) return 1;
  double bits = std::floor(rate * (double)n + 1e-9);
  if (bits > 40) throw budget_error("simulate: index space too large at this blocklength");
  return 1ull << (uint64_t)bits;
}

uint64_t seq_code(const Seq& s, int radix) {
  uint64_t e = 0;
  for (uint8_t c : s) e = e * (uint64_t)radix + c;
  return e;
}

}  // namespace

SimSummary run_scheme2(const Scheme2Config& cfg, std::vector<BlockEvent>* trace) {
  if (!cfg.ch || !cfg.fj) throw validation_error("simulate: channel/factorization not set");
  if (cfg.fj->shape != Shape::Scheme2)
    throw validation_error("simulate: state-keyed scheme needs its factorization shape");
  if (cfg.n < 1 || cfg.blocks < 1 || cfg.trials < 1)
    throw validation_error("simulate: n, blocks and trials must be positive");
  const SdMawc& ch = *cfg.ch;
  const FactoredJoint& fj = *cfg.fj;
  const Scheme2Rates& rt = cfg.rates;
  const int n = cfg.n, B = cfg.blocks;
  const int u1sz = fj.u1, u2sz = fj.u2;

  JointTensor joint = fj.assemble();
  const double delta = cfg.delta;
  auto dm = [&](Axis a) { return joint.dim[(size_t)a]; };
  TypicalityTest ttup{{dm(AXIS_U1), dm(AXIS_U2), dm(AXIS_Y)},
                      joint.marginal(A_U1 | A_U2 | A_Y),
                      2 * delta};
  TypicalityTest tpre{{dm(AXIS_U1), dm(AXIS_Y)},
                      joint.marginal(A_U1 | A_Y),
                      2 * delta * dm(AXIS_U2)};
  TypicalityTest tst{{dm(AXIS_U1), dm(AXIS_U2), dm(AXIS_S), dm(AXIS_Y)},
                     joint.marginal(A_U1 | A_U2 | A_S | A_Y),
                     2 * delta};

  const uint64_t n10 = rate_size(rt.r10, n), n11 = rate_size(rt.r11, n);
  const uint64_t n12 = rate_size(rt.r12, n);
  const uint64_t n20 = rate_size(rt.r20, n), n21 = rate_size(rt.r21, n);
  const uint64_t n22 = rate_size(rt.r22, n);
  const uint64_t l1 = rate_size(std::max(0.0, rt.r1t - rt.r10 - rt.r11 - rt.r12), n);
  const uint64_t l2 = rate_size(std::max(0.0, rt.r2t - rt.r20 - rt.r21 - rt.r22), n);
  const uint64_t w1 = n10 * n11 * n12 * l1, w2 = n20 * n21 * n22 * l2;
  double scells = std::pow((double)ch.s, n);
  if (w1 * w2 > (1ull << 22) || scells > (double)(1ull << 20))
    throw budget_error("simulate: decode search too large at this blocklength");
  const uint64_t nstates = (uint64_t)llround(scells);

  SimSummary sum;
  sum.n = n;
  sum.blocks = B;
  sum.rate_point =
      format_sig(rt.r10 + rt.r11, 6) + ":" + format_sig(rt.r20 + rt.r21, 6);

  for (int trial = 0; trial < cfg.trials; ++trial) {
    uint64_t ts = mix_seed(cfg.seed, (uint64_t)trial + 1, 0x52);
    Rng rex(mix_seed(ts, 0xEE));
    auto note = [&](int block, char ev, bool ok) {
      if (trace) trace->push_back({trial, block, ev, ok});
    };
    auto cb = [&](int b, int sender) {
      return Codebook{mix_seed(ts, (uint64_t)b, sender == 1 ? 2 : 3),
                      sender == 1 ? w1 : w2, n,
                      sender == 1 ? fj.pu1.p : fj.pu2.p};
    };
    auto sigma = [&](int b) { return KeyMap{mix_seed(ts, (uint64_t)b, 6), n12 * n22}; };
    auto kappa = [&](int b) { return KeyMap{mix_seed(ts, (uint64_t)b, 7), n11 * n21}; };

    struct Blk {
      Seq s, u1, u2, y;
      uint64_t m10 = 0, m20 = 0, m11 = 0, m21 = 0, c11 = 0, c21 = 0;
      uint64_t k12 = 0, k22 = 0;
    };
    std::vector<Blk> blk((size_t)B + 1);  // 1-based

    // ---- forward encoding; block 1 is a fixed dummy (all indices 0) ----
    for (int b = 1; b <= B; ++b) {
      Blk& bb = blk[(size_t)b];
      bb.s = draw_iid(rex, ch.state.p, n);
      uint64_t li1 = 0, li2 = 0;
      if (b >= 2) {
        uint64_t prev = seq_code(blk[(size_t)b - 1].s, ch.s);
        auto k2 = split_key(sigma(b)(prev), n12);
        bb.k12 = k2.lo;
        bb.k22 = k2.hi;
        auto k1 = split_key(kappa(b)(prev), n11);
        bb.m10 = rex.below(n10);
        bb.m20 = rex.below(n20);
        bb.m11 = rex.below(n11);
        bb.m21 = rex.below(n21);
        bb.c11 = otp_encrypt(bb.m11, k1.lo, n11);
        bb.c21 = otp_encrypt(bb.m21, k1.hi, n21);
        li1 = rex.below(l1);
        li2 = rex.below(l2);
      }
      bb.u1 = cb(b, 1).word(((bb.m10 * n11 + bb.c11) * n12 + bb.k12) * l1 + li1);
      bb.u2 = cb(b, 2).word(((bb.m20 * n21 + bb.c21) * n22 + bb.k22) * l2 + li2);
      Seq x1 = draw_conditional(rex, fj.px1.p, ch.x1, {&bb.u1, &bb.s}, {u1sz, ch.s});
      Seq x2 = draw_conditional(rex, fj.px2.p, ch.x2, {&bb.u2, &bb.s}, {u2sz, ch.s});
      bb.y.resize((size_t)n);
      for (int t = 0; t < n; ++t) {
        int row = ((int)x1[(size_t)t] * ch.x2 + x2[(size_t)t]) * ch.s + bb.s[(size_t)t];
        int o = rex.categorical(ch.w.p.data() + (size_t)row * ch.y * ch.z, ch.y * ch.z);
        bb.y[(size_t)t] = (uint8_t)(o / ch.z);
      }
    }

    // ---- forward decoding ----
    Seq du1 = blk[1].u1, du2 = blk[1].u2;  // decoded words of the previous block
    for (int b = 2; b <= B; ++b) {
      Blk& bb = blk[(size_t)b];
      Codebook c1 = cb(b, 1), c2 = cb(b, 2);
      std::vector<Seq> u2cache((size_t)w2);
      for (uint64_t j2 = 0; j2 < w2; ++j2) u2cache[(size_t)j2] = c2.word(j2);
      // Survivors differing only in a randomization index carry the same
      // payload, so they are counted per distinct message/hash tuple.
      std::set<std::array<uint64_t, 6>> found;
      uint64_t fj1 = 0, fj2 = 0;
      for (uint64_t j1 = 0; j1 < w1; ++j1) {
        Seq u1w = c1.word(j1);
        if (!tpre.accept({&u1w, &bb.y})) continue;
        for (uint64_t j2 = 0; j2 < w2; ++j2) {
          if (!ttup.accept({&u1w, &u2cache[(size_t)j2], &bb.y})) continue;
          if (found.empty()) {
            fj1 = j1;
            fj2 = j2;
          }
          found.insert({j1 / (n11 * n12 * l1), j1 / (n12 * l1) % n11,
                        j1 / l1 % n12, j2 / (n21 * n22 * l2),
                        j2 / (n22 * l2) % n21, j2 / l2 % n22});
        }
      }
      note(b, 'T', found.size() == 1);
      std::array<uint64_t, 6> pick =
          found.empty() ? std::array<uint64_t, 6>{0, 0, 0, 0, 0, 0} : *found.begin();
      uint64_t hm10 = pick[0], hc11 = pick[1], hk12 = pick[2];
      uint64_t hm20 = pick[3], hc21 = pick[4], hk22 = pick[5];

      // Reconstruct the previous block's state from its hash + typicality.
      uint64_t hk2 = hk22 * n12 + hk12;
      KeyMap sg = sigma(b);
      int shits = 0;
      uint64_t sfirst = 0;
      if (nstates == 1) {
        shits = 1;  // stateless: nothing to reconstruct
      } else {
        Seq cand((size_t)n);
        for (uint64_t sc = 0; sc < nstates; ++sc) {
          uint64_t v = sc;
          for (int t = n - 1; t >= 0; --t) {
            cand[(size_t)t] = (uint8_t)(v % (uint64_t)ch.s);
            v /= (uint64_t)ch.s;
          }
          if (sg(sc) != hk2) continue;
          if (!tst.accept({&du1, &du2, &cand, &blk[(size_t)b - 1].y})) continue;
          if (shits == 0) sfirst = sc;
          ++shits;
        }
      }
      note(b, 'S', shits == 1);
      auto k1 = split_key(kappa(b)(sfirst), n11);
      uint64_t pm11 = otp_decrypt(hc11, k1.lo, n11);
      uint64_t pm21 = otp_decrypt(hc21, k1.hi, n21);
      bool ok = hm10 == bb.m10 && hm20 == bb.m20 && pm11 == bb.m11 && pm21 == bb.m21;
      note(b, 'M', ok);
      ++sum.payload_blocks;
      if (!ok) ++sum.error_blocks;

      du1 = c1.word(fj1);
      du2 = c2.word(fj2);
    }
  }

  sum.err_rate = sum.payload_blocks
                     ? (double)sum.error_blocks / (double)sum.payload_blocks
                     : 0.0;
  return sum;
}

}  // namespace mawc
