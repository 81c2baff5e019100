#include "mawc/measures.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mawc/codebook.hpp"
#include "mawc/seq.hpp"

namespace mawc {

namespace {

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

// H(rows of `table` as a joint) - entropy helpers over dense tables.
double table_entropy(const std::vector<double>& t) {
  double h = 0;
  for (double x : t) h -= xlog2x(x);
  return h;
}

uint64_t checked_pow(uint64_t base, int e, uint64_t cap, const char* what) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / base) throw budget_error(what);
    r *= base;
  }
  return r;
}

uint64_t rate_size(double rate, int n) {
  // Index spaces are 2^floor(n*rate): integer bit counts, one rounding rule.
  if (rate <= 1e-12) return 1;
  double bits = std::floor(rate * (double)n + 1e-9);
  if (bits > 40) throw budget_error("leakage: index space too large");
  return 1ull << (uint64_t)bits;
}

}  // namespace

double otp_leakage(const std::vector<double>& msg_pmf, uint64_t modulus) {
  if (msg_pmf.size() != modulus)
    throw std::invalid_argument("otp: message pmf size must equal the modulus");
  // Joint P(m,c) with c = (m+k) mod q, k uniform.
  double hm = 0, hc = 0, hmc = 0;
  std::vector<double> pc(modulus, 0.0);
  for (uint64_t m = 0; m < modulus; ++m)
    for (uint64_t k = 0; k < modulus; ++k)
      pc[(m + k) % modulus] += msg_pmf[m] / (double)modulus;
  for (uint64_t m = 0; m < modulus; ++m) {
    hm -= xlog2x(msg_pmf[m]);
    hc -= xlog2x(pc[m]);
    for (uint64_t k = 0; k < modulus; ++k)
      hmc -= xlog2x(msg_pmf[m] / (double)modulus);
  }
  return hm + hc - hmc;
}

double security_index(const std::vector<double>& joint_kz, int nk, int nz) {
  if ((int)joint_kz.size() != nk * nz)
    throw std::invalid_argument("security index: joint table size mismatch");
  double hkz = table_entropy(joint_kz);
  std::vector<double> pz((size_t)nz, 0.0);
  for (int k = 0; k < nk; ++k)
    for (int z = 0; z < nz; ++z) pz[(size_t)z] += joint_kz[(size_t)k * nz + z];
  double hz = table_entropy(pz);
  return std::log2((double)nk) - (hkz - hz);
}

double scheme1_block_leakage(const Scheme1Config& cfg, uint64_t seed) {
  if (!cfg.ch || !cfg.fj) throw validation_error("leakage: channel/factorization not set");
  if (cfg.fj->shape != Shape::Scheme1)
    throw validation_error("leakage: key-assisted factorization expected");
  const SdMawc& ch = *cfg.ch;
  const FactoredJoint& fj = *cfg.fj;
  const Scheme1Rates& rt = cfg.rates;
  const int n = cfg.n;
  const int usz = fj.u, u1sz = fj.u1, u2sz = fj.u2;

  const uint64_t n10 = rate_size(rt.r10, n), n11 = rate_size(rt.r11, n);
  const uint64_t n20 = rate_size(rt.r20, n), n21 = rate_size(rt.r21, n);
  const uint64_t l1 = rate_size(std::max(0.0, rt.r1t - rt.r10 - rt.r11), n);
  const uint64_t l2 = rate_size(std::max(0.0, rt.r2t - rt.r20 - rt.r21), n);
  const uint64_t w1 = n10 * n11 * l1, w2 = n20 * n21 * l2;
  const int cell = ch.z * ch.s;  // eavesdropper sees (z, s) per symbol
  const uint64_t obs = checked_pow((uint64_t)cell, n, kLeakCells,
                                   "leakage: observation space too large");
  const uint64_t nm = n10 * n11 * n20 * n21;
  if (nm == 0 || nm > kLeakCells / obs)
    throw budget_error("leakage: joint table too large");

  // Fixed codebooks for one block: a single common word, one layered codebook
  // per sender; encrypted layers are padded with ideal uniform keys.
  std::vector<double> pu;
  {
    JointTensor j = fj.assemble();
    pu = j.marginal(A_U);
  }
  Seq uw = Codebook{mix_seed(seed, 1), 1, n, pu}.word(0);
  CondCodebook cb1{mix_seed(seed, 2), w1, fj.pu1.out, fj.pu1.p, {uw}, {usz}};
  CondCodebook cb2{mix_seed(seed, 3), w2, fj.pu2.out, fj.pu2.p, {uw}, {usz}};

  // Per-symbol emission toward the eavesdropper: G[u][u1][u2][s][z].
  std::vector<double> G((size_t)usz * u1sz * u2sz * ch.s * ch.z, 0.0);
  for (int uu = 0; uu < usz; ++uu)
    for (int a = 0; a < u1sz; ++a)
      for (int bsym = 0; bsym < u2sz; ++bsym)
        for (int ss = 0; ss < ch.s; ++ss) {
          int r1 = (uu * u1sz + a) * ch.s + ss;
          int r2 = (uu * u2sz + bsym) * ch.s + ss;
          for (int x1 = 0; x1 < ch.x1; ++x1)
            for (int x2 = 0; x2 < ch.x2; ++x2) {
              double px = fj.px1.at(r1, x1) * fj.px2.at(r2, x2) * ch.state[ss];
              if (px == 0) continue;
              int row = (x1 * ch.x2 + x2) * ch.s + ss;
              for (int zz = 0; zz < ch.z; ++zz) {
                double wz = 0;
                for (int yy = 0; yy < ch.y; ++yy) wz += ch.w.at(row, yy * ch.z + zz);
                G[((((size_t)uu * u1sz + a) * u2sz + bsym) * ch.s + ss) * ch.z + zz] +=
                    px * wz;
              }
            }
        }

  // Conditional law of (z^n, s^n) for one pair of transmitted words.
  std::vector<Seq> words1((size_t)w1), words2((size_t)w2);
  for (uint64_t i = 0; i < w1; ++i) words1[(size_t)i] = cb1.word(i);
  for (uint64_t i = 0; i < w2; ++i) words2[(size_t)i] = cb2.word(i);
  auto pair_law = [&](const Seq& a, const Seq& b, std::vector<double>& out) {
    out.assign((size_t)obs, 1.0);
    for (uint64_t o = 0; o < obs; ++o) {
      uint64_t v = o;
      double p = 1.0;
      for (int t = n - 1; t >= 0; --t) {
        int zz = (int)(v % (uint64_t)ch.z);
        v /= (uint64_t)ch.z;
        int ss = (int)(v % (uint64_t)ch.s);
        v /= (uint64_t)ch.s;
        p *= G[((((size_t)uw[(size_t)t] * u1sz + a[(size_t)t]) * u2sz +
                 b[(size_t)t]) *
                    ch.s +
                ss) *
                   ch.z +
               zz];
        if (p == 0) break;
      }
      out[(size_t)o] = p;
    }
  };

  // P(obs | m10, m20): uniform mixture over cipher and randomization indices
  // (ideal keys make the encrypted layers drop out of the conditional law).
  std::vector<double> base((size_t)(n10 * n20) * obs, 0.0);
  std::vector<double> pl;
  double wmix = 1.0 / (double)(n11 * l1 * n21 * l2);
  for (uint64_t m10 = 0; m10 < n10; ++m10)
    for (uint64_t c11 = 0; c11 < n11; ++c11)
      for (uint64_t li1 = 0; li1 < l1; ++li1) {
        const Seq& a = words1[(size_t)((m10 * n11 + c11) * l1 + li1)];
        for (uint64_t m20 = 0; m20 < n20; ++m20)
          for (uint64_t c21 = 0; c21 < n21; ++c21)
            for (uint64_t li2 = 0; li2 < l2; ++li2) {
              const Seq& b = words2[(size_t)((m20 * n21 + c21) * l2 + li2)];
              pair_law(a, b, pl);
              double* row = base.data() + (size_t)(m10 * n20 + m20) * obs;
              for (uint64_t o = 0; o < obs; ++o) row[o] += wmix * pl[(size_t)o];
            }
      }

  // I(M; obs) = H(obs) - H(obs | M) with M uniform over all four layers;
  // the encrypted layers add rows identical to their clear-layer base row.
  std::vector<double> pobs((size_t)obs, 0.0);
  double hcond = 0;
  for (uint64_t m10 = 0; m10 < n10; ++m10)
    for (uint64_t m20 = 0; m20 < n20; ++m20) {
      const double* row = base.data() + (size_t)(m10 * n20 + m20) * obs;
      double hrow = 0;
      for (uint64_t o = 0; o < obs; ++o) {
        pobs[(size_t)o] += row[o] / (double)(n10 * n20);
        hrow -= xlog2x(row[o]);
      }
      hcond += hrow / (double)(n10 * n20);
    }
  return table_entropy(pobs) - hcond;
}

double resolvability_divergence(const SdMawc& ch, const FactoredJoint& fj,
                                double rr1, double rr2, int n, int codebooks,
                                uint64_t seed) {
  if (fj.shape != Shape::Scheme2)
    throw validation_error("resolvability: independent-inputs factorization expected");
  const int u1sz = fj.u1, u2sz = fj.u2;
  const int cell = ch.s * ch.z;  // per-symbol observation (s, z)
  const uint64_t obs = checked_pow((uint64_t)cell, n, kDivCells,
                                   "resolvability: observation space too large");
  const uint64_t w1 = rate_size(rr1, n), w2 = rate_size(rr2, n);
  if (w1 * w2 > (1ull << 22))
    throw budget_error("resolvability: codebook pair too large");

  // Single-letter emission G[u1][u2][(s,z)] and the i.i.d. reference law.
  std::vector<double> G((size_t)u1sz * u2sz * cell, 0.0);
  for (int a = 0; a < u1sz; ++a)
    for (int b = 0; b < u2sz; ++b)
      for (int ss = 0; ss < ch.s; ++ss)
        for (int x1 = 0; x1 < ch.x1; ++x1)
          for (int x2 = 0; x2 < ch.x2; ++x2) {
            double px = fj.px1.at(a * ch.s + ss, x1) * fj.px2.at(b * ch.s + ss, x2) *
                        ch.state[ss];
            if (px == 0) continue;
            int row = (x1 * ch.x2 + x2) * ch.s + ss;
            for (int zz = 0; zz < ch.z; ++zz) {
              double wz = 0;
              for (int yy = 0; yy < ch.y; ++yy) wz += ch.w.at(row, yy * ch.z + zz);
              G[((size_t)a * u2sz + b) * cell + ss * ch.z + zz] += px * wz;
            }
          }
  std::vector<double> ref((size_t)cell, 0.0);
  {
    JointTensor j = fj.assemble();
    ref = j.marginal(A_S | A_Z);  // (s, z), state slowest - matches cell order
  }
  std::vector<double> refn((size_t)obs, 1.0);
  for (uint64_t o = 0; o < obs; ++o) {
    uint64_t v = o;
    double p = 1.0;
    for (int t = 0; t < n; ++t) {
      p *= ref[(size_t)(v % (uint64_t)cell)];
      v /= (uint64_t)cell;
    }
    refn[(size_t)o] = p;
  }

  double total = 0;
  std::vector<double> acc((size_t)obs);
  for (int c = 0; c < codebooks; ++c) {
    Rng r1(mix_seed(seed, (uint64_t)c + 1, 1));
    Rng r2(mix_seed(seed, (uint64_t)c + 1, 2));
    std::vector<Seq> cw1((size_t)w1), cw2((size_t)w2);
    for (uint64_t i = 0; i < w1; ++i) cw1[(size_t)i] = draw_iid(r1, fj.pu1.p, n);
    for (uint64_t i = 0; i < w2; ++i) cw2[(size_t)i] = draw_iid(r2, fj.pu2.p, n);
    std::fill(acc.begin(), acc.end(), 0.0);
    double wmix = 1.0 / (double)(w1 * w2);
    for (uint64_t i = 0; i < w1; ++i)
      for (uint64_t j = 0; j < w2; ++j) {
        const Seq& a = cw1[(size_t)i];
        const Seq& b = cw2[(size_t)j];
        for (uint64_t o = 0; o < obs; ++o) {
          uint64_t v = o;
          double p = 1.0;
          for (int t = 0; t < n; ++t) {
            p *= G[((size_t)a[(size_t)t] * u2sz + b[(size_t)t]) * cell +
                   (int)(v % (uint64_t)cell)];
            if (p == 0) break;
            v /= (uint64_t)cell;
          }
          acc[(size_t)o] += wmix * p;
        }
      }
    double d = 0;
    for (uint64_t o = 0; o < obs; ++o) {
      if (acc[(size_t)o] <= 0) continue;
      if (refn[(size_t)o] <= 0) return std::numeric_limits<double>::infinity();
      d += acc[(size_t)o] * std::log2(acc[(size_t)o] / refn[(size_t)o]);
    }
    total += d;
  }
  return total / (double)codebooks;
}

}  // namespace mawc
