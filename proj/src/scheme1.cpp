#include "mawc/scheme1.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "mawc/codebook.hpp"
#include "mawc/manifest.hpp"
#include "mawc/seq.hpp"

namespace mawc {

Scheme1Rates plan_scheme1(EntropyCache& ec, double r1, double r2, double tau) {
  Scheme1Rates r;
  double ivs = ec.I(A_V, A_S);
  double ivy = ec.I(A_V, A_Y);
  double ivz = ec.I(A_V, A_U | A_Z);  // the eavesdropper also holds the common word
  double e1 = ec.I(A_U1, A_Z, A_S | A_U);
  double e2 = ec.I(A_U2, A_Z, A_S | A_U);
  double e12 = ec.I(A_U1 | A_U2, A_Z, A_S | A_U);
  double kb = std::max(0.0, ivy - ivz);  // distillable key rate
  r.r11 = std::min(r1, kb);
  r.r21 = std::min(r2, std::max(0.0, kb - r.r11));
  r.r10 = r1 - r.r11;
  r.r20 = r2 - r.r21;
  // Randomization: each sender's non-clear rate must clear the eavesdropper's
  // view of its codeword, individually and jointly.
  double p1 = std::max(0.0, e1 + tau - r.r11);
  double p2 = std::max(0.0, e2 + tau - r.r21);
  double have = r.r11 + p1 + r.r21 + p2;
  if (have < e12 + tau) p1 += e12 + tau - have;
  r.r1t = r.r10 + r.r11 + p1;
  r.r2t = r.r20 + r.r21 + p2;
  if (ivs < 1e-9) {
    r.rk = r.rk0 = r.r0 = 0.0;  // nothing to describe: drop the common layer
  } else {
    r.rk = ivs + tau;
    r.rk0 = std::clamp(ivs - ivy + 2 * tau, 0.0, r.rk);
    r.r0 = r.rk0 + tau;
  }
  r.mu = std::max(0.05, 0.5 * ec.I(A_U | A_U1 | A_U2, A_Y));
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

struct Law {
  // Single-letter reference pmfs for every typicality test the decoder runs.
  TypicalityTest cov;    // (v, s)
  TypicalityTest vy;     // (v, y)
  TypicalityTest pre;    // (v, u, y), tolerance inflated: prefilter only
  TypicalityTest tuple;  // (v, u, u1, u2, y)
  TypicalityTest fin;    // (u, u1, u2, y)
};

Law make_law(const JointTensor& j, double delta) {
  auto sz = [&](Axis a) { return j.dim[(size_t)a]; };
  Law law;
  law.cov = {{sz(AXIS_V), sz(AXIS_S)}, j.marginal(A_V | A_S), delta};
  law.vy = {{sz(AXIS_V), sz(AXIS_Y)}, j.marginal(A_V | A_Y), delta};
  law.pre = {{sz(AXIS_V), sz(AXIS_U), sz(AXIS_Y)},
             j.marginal(A_V | A_U | A_Y),
             2 * delta * sz(AXIS_U1) * sz(AXIS_U2)};
  law.tuple = {{sz(AXIS_V), sz(AXIS_U), sz(AXIS_U1), sz(AXIS_U2), sz(AXIS_Y)},
               j.marginal(A_V | A_U | A_U1 | A_U2 | A_Y),
               2 * delta};
  law.fin = {{sz(AXIS_U), sz(AXIS_U1), sz(AXIS_U2), sz(AXIS_Y)},
             j.marginal(A_U | A_U1 | A_U2 | A_Y),
             2 * delta};
  return law;
}

struct Block {
  Seq s, u, u1, u2, y;
  uint64_t m0 = 0, m10 = 0, m20 = 0, c11 = 0, c21 = 0;
  uint64_t m11 = 0, m21 = 0;  // plaintext of the encrypted layers
};

}  // namespace

SimSummary run_scheme1(const Scheme1Config& cfg, std::vector<BlockEvent>* trace) {
  if (!cfg.ch || !cfg.fj) throw validation_error("simulate: channel/factorization not set");
  if (cfg.fj->shape != Shape::Scheme1)
    throw validation_error("simulate: key-assisted scheme needs its factorization shape");
  if (cfg.n < 1 || cfg.blocks < 1 || cfg.trials < 1)
    throw validation_error("simulate: n, blocks and trials must be positive");
  const SdMawc& ch = *cfg.ch;
  const FactoredJoint& fj = *cfg.fj;
  const Scheme1Rates& rt = cfg.rates;
  const int n = cfg.n, B = cfg.blocks;

  JointTensor joint = fj.assemble();
  Law law = make_law(joint, cfg.delta);
  const int usz = fj.u, u1sz = fj.u1, u2sz = fj.u2;
  std::vector<double> pv = joint.marginal(A_V);
  std::vector<double> pu = joint.marginal(A_U);

  const uint64_t nk = rate_size(rt.rk, n);
  const uint64_t nk0 = std::min(rate_size(rt.rk0, n), nk);
  const uint64_t n10 = rate_size(rt.r10, n), n11 = rate_size(rt.r11, n);
  const uint64_t n20 = rate_size(rt.r20, n), n21 = rate_size(rt.r21, n);
  const uint64_t l1 = rate_size(std::max(0.0, rt.r1t - rt.r10 - rt.r11), n);
  const uint64_t l2 = rate_size(std::max(0.0, rt.r2t - rt.r20 - rt.r21), n);
  const uint64_t nkey = n11 * n21;
  const uint64_t w1 = n10 * n11 * l1, w2 = n20 * n21 * l2;
  if (nk > (1ull << 20) || nk0 * w1 * w2 > (1ull << 24))
    throw budget_error("simulate: decode search too large at this blocklength");
  const int nfin = nk0 > 1 ? std::max(1, (int)std::ceil(n * rt.r0 /
                                                        std::max(rt.mu, 1e-9)))
                           : 0;

  SimSummary sum;
  sum.n = n;
  sum.blocks = B;
  sum.rate_point =
      format_sig(rt.r10 + rt.r11, 6) + ":" + format_sig(rt.r20 + rt.r21, 6);

  auto channel_step = [&](Rng& rng, const Seq& x1, const Seq& x2, const Seq& s,
                          Seq& y, int len) {
    y.resize((size_t)len);
    for (int t = 0; t < len; ++t) {
      int row = ((int)x1[(size_t)t] * ch.x2 + x2[(size_t)t]) * ch.s + s[(size_t)t];
      int o = rng.categorical(ch.w.p.data() + (size_t)row * ch.y * ch.z,
                              ch.y * ch.z);
      y[(size_t)t] = (uint8_t)(o / ch.z);  // eavesdropper output unused here
    }
  };

  for (int trial = 0; trial < cfg.trials; ++trial) {
    uint64_t ts = mix_seed(cfg.seed, (uint64_t)trial + 1, 0x51);
    Rng rex(mix_seed(ts, 0xEE));
    auto note = [&](int block, char ev, bool ok) {
      if (trace) trace->push_back({trial, block, ev, ok});
    };

    // Per-block codebooks (lazily generated words).
    auto vcb = [&](int b) { return Codebook{mix_seed(ts, (uint64_t)b, 4), nk, n, pv}; };
    auto ucb = [&](int b, int len) {
      return Codebook{mix_seed(ts, (uint64_t)b, 1), nk0, len, pu};
    };
    auto mcb = [&](int b, int sender, uint64_t m0, const Seq& uword) {
      const Kernel& k = sender == 1 ? fj.pu1 : fj.pu2;
      return CondCodebook{mix_seed(mix_seed(ts, (uint64_t)b, sender == 1 ? 2 : 3), m0),
                          sender == 1 ? w1 : w2,
                          k.out,
                          k.p,
                          {uword},
                          {usz}};
    };
    auto kappa = [&](int b) { return KeyMap{mix_seed(ts, (uint64_t)b, 5), nkey}; };

    // ---- forward encoding over blocks 1..B ----
    std::vector<Block> blk((size_t)B + 1);  // 1-based
    std::vector<uint64_t> k0_next((size_t)B + 2, 0);  // bin carried by block b
    std::vector<uint64_t> key11((size_t)B + 2, 0), key21((size_t)B + 2, 0);
    std::vector<bool> cover_ok((size_t)B + 1, true);
    for (int b = 1; b <= B; ++b) {
      Block& bb = blk[(size_t)b];
      bb.s = draw_iid(rex, ch.state.p, n);
      if (b >= 2) {
        bb.m0 = k0_next[(size_t)b];
        bb.m10 = rex.below(n10);
        bb.m20 = rex.below(n20);
        bb.m11 = rex.below(n11);
        bb.m21 = rex.below(n21);
        bb.c11 = otp_encrypt(bb.m11, key11[(size_t)b], n11);
        bb.c21 = otp_encrypt(bb.m21, key21[(size_t)b], n21);
      }
      uint64_t li1 = rex.below(l1), li2 = rex.below(l2);
      bb.u = ucb(b, n).word(bb.m0);
      bb.u1 = mcb(b, 1, bb.m0, bb.u).word((bb.m10 * n11 + bb.c11) * l1 + li1);
      bb.u2 = mcb(b, 2, bb.m0, bb.u).word((bb.m20 * n21 + bb.c21) * l2 + li2);
      Seq x1 = draw_conditional(rex, fj.px1.p, ch.x1, {&bb.u, &bb.u1, &bb.s},
                                {usz, u1sz, ch.s});
      Seq x2 = draw_conditional(rex, fj.px2.p, ch.x2, {&bb.u, &bb.u2, &bb.s},
                                {usz, u2sz, ch.s});
      channel_step(rex, x1, x2, bb.s, bb.y, n);

      // Describe this block's state for the next block's common layer.
      Codebook vb = vcb(b);
      uint64_t wsel = 0;
      bool found = false;
      for (uint64_t w = 0; w < nk && !found; ++w) {
        Seq vw = vb.word(w);
        if (law.cov.accept({&vw, &bb.s})) {
          wsel = w;
          found = true;
        }
      }
      cover_ok[(size_t)b] = found;
      note(b, 'C', found);
      k0_next[(size_t)b + 1] = wsel % nk0;
      auto kk = split_key(kappa(b + 1)(wsel / nk0), n11);
      key11[(size_t)b + 1] = kk.lo;
      key21[(size_t)b + 1] = kk.hi;
    }

    // ---- catch-up block carrying the last description bin ----
    Seq yfin;
    if (nk0 > 1) {
      Rng rfin(mix_seed(ts, 0xF1));
      Seq sfin = draw_iid(rfin, ch.state.p, nfin);
      Seq ufin = ucb(B + 1, nfin).word(k0_next[(size_t)B + 1]);
      Seq u1f = CondCodebook{mix_seed(ts, (uint64_t)B + 1, 2, k0_next[(size_t)B + 1]),
                             1, fj.pu1.out, fj.pu1.p, {ufin}, {usz}}
                    .word(0);
      Seq u2f = CondCodebook{mix_seed(ts, (uint64_t)B + 1, 3, k0_next[(size_t)B + 1]),
                             1, fj.pu2.out, fj.pu2.p, {ufin}, {usz}}
                    .word(0);
      Seq x1 = draw_conditional(rfin, fj.px1.p, ch.x1, {&ufin, &u1f, &sfin},
                                {usz, u1sz, ch.s});
      Seq x2 = draw_conditional(rfin, fj.px2.p, ch.x2, {&ufin, &u2f, &sfin},
                                {usz, u2sz, ch.s});
      channel_step(rfin, x1, x2, sfin, yfin, nfin);
    }

    // ---- backward decoding ----
    std::vector<uint64_t> hk0((size_t)B + 2, 0);
    std::vector<uint64_t> hm10((size_t)B + 1, 0), hm20((size_t)B + 1, 0);
    std::vector<uint64_t> hc11((size_t)B + 1, 0), hc21((size_t)B + 1, 0);
    if (nk0 > 1) {
      Codebook uf = ucb(B + 1, nfin);
      int hits = 0;
      uint64_t first = 0;
      for (uint64_t k0 = 0; k0 < nk0; ++k0) {
        Seq uw = uf.word(k0);
        Seq u1f = CondCodebook{mix_seed(ts, (uint64_t)B + 1, 2, k0), 1, fj.pu1.out,
                               fj.pu1.p, {uw}, {usz}}
                      .word(0);
        Seq u2f = CondCodebook{mix_seed(ts, (uint64_t)B + 1, 3, k0), 1, fj.pu2.out,
                               fj.pu2.p, {uw}, {usz}}
                      .word(0);
        if (law.fin.accept({&uw, &u1f, &u2f, &yfin})) {
          if (hits == 0) first = k0;
          ++hits;
        }
      }
      note(B + 1, 'F', hits == 1);
      hk0[(size_t)B + 1] = hits >= 1 ? first : 0;
    }

    for (int b = B; b >= 1; --b) {
      Block& bb = blk[(size_t)b];
      // Reconstruct this block's state description via its bin + side info y_b.
      Codebook vb = vcb(b);
      Seq vhat;
      uint64_t that = 0;
      if (nk > 1) {
        int hits = 0;
        uint64_t firstw = hk0[(size_t)b + 1] % nk0;
        for (uint64_t t = 0; t * nk0 + hk0[(size_t)b + 1] < nk; ++t) {
          uint64_t w = t * nk0 + hk0[(size_t)b + 1];
          Seq vw = vb.word(w);
          if (law.vy.accept({&vw, &bb.y})) {
            if (hits == 0) {
              that = t;
              firstw = w;
            }
            ++hits;
          }
        }
        note(b, 'W', hits == 1);
        vhat = vb.word(firstw);
      } else {
        vhat = vb.word(0);
        note(b, 'W', true);
      }
      auto kk = split_key(kappa(b + 1)(that), n11);

      if (b + 1 <= B && b + 1 >= 2) {
        // Keys from this step decrypt the next block's cipher layers.
        Block& nb = blk[(size_t)b + 1];
        uint64_t pm11 = otp_decrypt(hc11[(size_t)b + 1], kk.lo, n11);
        uint64_t pm21 = otp_decrypt(hc21[(size_t)b + 1], kk.hi, n21);
        bool ok = hm10[(size_t)b + 1] == nb.m10 && hm20[(size_t)b + 1] == nb.m20 &&
                  pm11 == nb.m11 && pm21 == nb.m21;
        note(b + 1, 'M', ok);
        ++sum.payload_blocks;
        if (!ok) ++sum.error_blocks;
      }

      if (b >= 2) {
        // Joint tuple decode of block b: common bin + both senders' layers.
        // Candidates that differ only in a randomization index decode to the
        // same payload, so survivors are counted per distinct message tuple.
        Codebook ub = ucb(b, n);
        std::vector<Seq> ucache(nk0);
        std::set<std::array<uint64_t, 5>> found;
        for (uint64_t k0 = 0; k0 < nk0; ++k0) {
          ucache[k0] = ub.word(k0);
          if (!law.pre.accept({&vhat, &ucache[k0], &bb.y})) continue;
          CondCodebook c1 = mcb(b, 1, k0, ucache[k0]);
          CondCodebook c2 = mcb(b, 2, k0, ucache[k0]);
          std::vector<Seq> u2cache(w2);
          for (uint64_t j2 = 0; j2 < w2; ++j2) u2cache[j2] = c2.word(j2);
          for (uint64_t j1 = 0; j1 < w1; ++j1) {
            Seq u1w = c1.word(j1);
            for (uint64_t j2 = 0; j2 < w2; ++j2) {
              if (!law.tuple.accept({&vhat, &ucache[k0], &u1w, &u2cache[j2], &bb.y}))
                continue;
              found.insert({k0, j1 / (n11 * l1), j1 / l1 % n11, j2 / (n21 * l2),
                            j2 / l2 % n21});
            }
          }
        }
        note(b, 'T', found.size() == 1);
        std::array<uint64_t, 5> pick = found.empty()
                                           ? std::array<uint64_t, 5>{0, 0, 0, 0, 0}
                                           : *found.begin();
        hk0[(size_t)b] = pick[0];
        hm10[(size_t)b] = pick[1];
        hc11[(size_t)b] = pick[2];
        hm20[(size_t)b] = pick[3];
        hc21[(size_t)b] = pick[4];
      }
    }
  }

  sum.err_rate = sum.payload_blocks
                     ? (double)sum.error_blocks / (double)sum.payload_blocks
                     : 0.0;
  return sum;
}

std::string trace_csv(const std::vector<BlockEvent>& trace) {
  std::ostringstream os;
  os << "trial,block,event,ok\n";
  for (const auto& e : trace)
    os << e.trial << ',' << e.block << ',' << e.event << ',' << (e.ok ? 1 : 0)
       << '\n';
  return os.str();
}

std::string summary_csv(const std::vector<SimSummary>& rows, int digits) {
  std::ostringstream os;
  os << "n,B,rate_point,err_rate,leak_bits\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.blocks << ',' << csv_field(r.rate_point) << ','
       << format_sig(r.err_rate, digits) << ','
       << (r.leak_bits < 0 ? std::string("NA") : format_sig(r.leak_bits, digits))
       << '\n';
  return os.str();
}

}  // namespace mawc
