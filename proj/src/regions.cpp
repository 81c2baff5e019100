#include "mawc/regions.hpp"

#include <algorithm>
#include <vector>

namespace mawc {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::R01: return "R01";
    case Variant::R02: return "R02";
    case Variant::R03: return "R03";
    case Variant::R11: return "R11";
    case Variant::R12: return "R12";
    case Variant::R13: return "R13";
    case Variant::R21: return "R21";
    case Variant::R22: return "R22";
    case Variant::R23: return "R23";
    case Variant::R31: return "R31";
    case Variant::R32: return "R32";
    case Variant::R33: return "R33";
    case Variant::PW_R1: return "PW-R1";
    case Variant::PW_R2: return "PW-R2";
    case Variant::OUTER: return "outer";
    case Variant::D11: return "D11";
    case Variant::D12: return "D12";
    case Variant::D21: return "D21";
    case Variant::D22: return "D22";
    case Variant::D3: return "D3";
    case Variant::OCSI_IN: return "ocsi-in";
    case Variant::OCSI_OUT: return "ocsi-out";
    case Variant::CSI_ED: return "csi-ed";
  }
  return "?";
}

namespace {

// Row helpers: coefficients listed in the polytope's variable order.
void row(RegionPolytope& p, std::initializer_list<double> coeff, double rhs) {
  p.add(std::vector<double>(coeff), rhs);
}

RegionPolytope make(std::initializer_list<const char*> names) {
  RegionPolytope p;
  for (const char* n : names) p.vars.emplace_back(n);
  return p;
}

}  // namespace

RegionPolytope build_region(EntropyCache& ec, Variant which) {
  auto I = [&ec](AxisSet l, AxisSet r, AxisSet g = 0) { return ec.I(l, r, g); };
  auto Hc = [&ec](AxisSet t, AxisSet g) { return ec.Hc(t, g); };

  switch (which) {
    case Variant::R01: {
      auto p = make({"R1", "R2"});
      row(p, {1, 0}, I(A_U1, A_Y, A_U2) - I(A_U1, A_Z));
      row(p, {0, 1}, I(A_U2, A_Y, A_U1) - I(A_U2, A_Z));
      row(p, {1, 1}, I(A_U1 | A_U2, A_Y) - I(A_U1 | A_U2, A_Z));
      return p;
    }
    case Variant::R02: {
      auto p = make({"R1", "R2"});
      row(p, {1, 0}, 0.0);
      row(p, {0, 1}, I(A_U2, A_Y, A_U1) - I(A_U2, A_Z, A_U1));
      return p;
    }
    case Variant::R03: {
      auto p = make({"R1", "R2"});
      row(p, {0, 1}, 0.0);
      row(p, {1, 0}, I(A_U1, A_Y, A_U2) - I(A_U1, A_Z, A_U2));
      return p;
    }

    case Variant::R11: {
      auto p = make({"R1", "R2", "R11", "R21"});
      const AxisSet VU = A_V | A_U;
      double g1 = I(A_U1, A_Y, VU | A_U2);           // decodable rate of layer 1
      double g2 = I(A_U2, A_Y, VU | A_U1);
      double e1 = I(A_U1, A_Z, A_S | A_U);           // eavesdropper rate, layer 1
      double e2 = I(A_U2, A_Z, A_S | A_U);
      double e12 = I(A_U1 | A_U2, A_Z, A_S | A_U);
      double sumA = I(A_U1 | A_U2, A_Y, VU);
      double sumB = I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_V, A_S);
      row(p, {1, 0, -1, 0}, g1 - e1);
      row(p, {1, 0, 0, 0}, g1);
      row(p, {0, 1, 0, -1}, g2 - e2);
      row(p, {0, 1, 0, 0}, g2);
      row(p, {1, 1, -1, -1}, sumA - e12);
      row(p, {1, 1, -1, -1}, sumB - e12);
      row(p, {1, 1, 0, 0}, sumA);
      row(p, {1, 1, 0, 0}, sumB);
      row(p, {0, 0, 1, 1}, I(A_V, A_Y) - I(A_V, A_U | A_Z));
      return p;
    }
    case Variant::R12:
    case Variant::R13: {
      // R12 fully encrypts message 1; R13 is its role swap.
      bool swap = which == Variant::R13;
      auto p = make({"R1", "R2", "R11", "R21"});
      const AxisSet VU = A_V | A_U;
      AxisSet Ua = swap ? A_U2 : A_U1;  // fully encrypted layer
      AxisSet Ub = swap ? A_U1 : A_U2;  // partially encrypted layer
      double ga = I(Ua, A_Y, VU | Ub);
      double gb = I(Ub, A_Y, VU | Ua);
      double eb = I(Ub, A_Z, A_S | A_U | Ua);
      double sumA = I(A_U1 | A_U2, A_Y, VU);
      double sumB = I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_V, A_S);
      double key = I(A_V, A_Y) - I(A_V, A_Z | A_U | Ua);
      // Coefficient slots: (R1, R2, R11, R21); a = fully-encrypted user.
      auto r = [&](double ca, double cb, double cka, double ckb, double rhs) {
        if (!swap) row(p, {ca, cb, cka, ckb}, rhs);
        else row(p, {cb, ca, ckb, cka}, rhs);
      };
      r(1, 0, 0, 0, ga);        // Ra <= decodable
      r(1, 0, -1, 0, 0.0);      // Ra <= Ka (fully encrypted)
      r(0, 1, 0, -1, gb - eb);  // Rb <= decodable - leak + Kb
      r(0, 1, 0, 0, gb);
      r(1, 1, 0, 0, sumA);
      r(1, 1, 0, 0, sumB);
      r(1, 1, 0, -1, sumA - eb);
      r(1, 1, 0, -1, sumB - eb);
      r(1, 1, -1, -1, gb - eb);
      r(0, 0, 1, 1, key);
      return p;
    }

    case Variant::R21: {
      auto p = make({"R1", "R2", "R11", "R12", "R21", "R22"});
      double g1 = I(A_U1, A_Y, A_U2);
      double g2 = I(A_U2, A_Y, A_U1);
      double e1 = I(A_U1, A_Z, A_S);
      double e2 = I(A_U2, A_Z, A_S);
      double e12 = I(A_U1 | A_U2, A_Z, A_S);
      double g12 = I(A_U1 | A_U2, A_Y);
      double hsz = Hc(A_S, A_Z);
      double hsy = Hc(A_S, A_U1 | A_U2 | A_Y);
      row(p, {1, 0, -1, 0, 0, 0}, g1 - e1);
      row(p, {1, 0, 0, 1, 0, 0}, g1);
      row(p, {0, 1, 0, 0, -1, 0}, g2 - e2);
      row(p, {0, 1, 0, 0, 0, 1}, g2);
      row(p, {1, 1, 0, 0, 0, 0}, g12 - e12 + hsz - hsy);
      row(p, {1, 1, 0, 0, 0, 0}, g12 - hsy);
      row(p, {0, 0, 1, 1, 1, 1}, hsz);
      row(p, {0, 0, 0, -1, 0, -1}, -Hc(A_S, A_Y | A_U1 | A_U2));
      return p;
    }
    case Variant::R22:
    case Variant::R23: {
      // R22 fully encrypts message 1 (keys conditioned on U1); R23 swaps roles.
      bool swap = which == Variant::R23;
      auto p = make({"R1", "R2", "R11", "R12", "R21", "R22"});
      AxisSet Ua = swap ? A_U2 : A_U1;
      AxisSet Ub = swap ? A_U1 : A_U2;
      double ga = I(Ua, A_Y, Ub);
      double gb = I(Ub, A_Y, Ua);
      double eb = I(Ub, A_Z, A_S | Ua);
      double g12 = I(A_U1 | A_U2, A_Y);
      double hsz = Hc(A_S, A_Z | Ua);
      double hsy = Hc(A_S, A_U1 | A_U2 | A_Y);
      // Coefficients (Ra, Rb, Ka1, Ka2, Kb1, Kb2) mapped back to fixed order.
      auto r = [&](double ca, double cb, double ka1, double ka2, double kb1,
                   double kb2, double rhs) {
        if (!swap) row(p, {ca, cb, ka1, ka2, kb1, kb2}, rhs);
        else row(p, {cb, ca, kb1, kb2, ka1, ka2}, rhs);
      };
      r(1, 0, -1, 0, 0, 0, 0.0);       // Ra <= Ka1 (fully encrypted)
      r(1, 0, 0, 1, 0, 0, ga);         // Ra + Ka2 <= decodable
      r(0, 1, 0, 0, -1, 0, gb - eb);   // Rb <= decodable - leak + Kb1
      r(0, 1, 0, 0, 0, 1, gb);
      r(1, 1, 0, 0, 0, 0, gb - eb + hsz - hsy);
      r(1, 1, 0, 0, 0, 0, g12 - hsy);
      r(0, 0, 1, 1, 1, 1, hsz);
      r(0, 0, 0, -1, 0, -1, -Hc(A_S, A_Y | A_U1 | A_U2));
      return p;
    }

    case Variant::R31: {
      auto p = make({"R1", "R2"});
      const AxisSet VU = A_V | A_U;
      row(p, {1, 0}, I(A_U1, A_Y, VU | A_U2) - I(A_U1, A_Z));
      row(p, {0, 1}, I(A_U2, A_Y, VU | A_U1) - I(A_U2, A_Z));
      row(p, {1, 1}, I(A_U1 | A_U2, A_Y, VU) - I(A_U1 | A_U2, A_Z));
      row(p, {1, 1},
          I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_U1 | A_U2, A_Z) - I(A_V, A_S));
      return p;
    }
    case Variant::R32: {
      auto p = make({"R1", "R2"});
      row(p, {1, 0}, 0.0);
      row(p, {0, 1}, I(A_U2, A_Y, A_V | A_U | A_U1) - I(A_U2, A_Z, A_U1));
      return p;
    }
    case Variant::R33: {
      auto p = make({"R1", "R2"});
      row(p, {0, 1}, 0.0);
      row(p, {1, 0}, I(A_U1, A_Y, A_V | A_U | A_U2) - I(A_U1, A_Z, A_U2));
      return p;
    }

    case Variant::PW_R1: {
      auto p = make({"R1", "R2"});
      row(p, {1, 0}, I(A_U1, A_Y) - I(A_U1, A_Z));
      row(p, {0, 1}, I(A_U2, A_Y, A_U1) - I(A_U2, A_Z, A_U1));
      return p;
    }
    case Variant::PW_R2: {
      auto p = make({"R1", "R2"});
      row(p, {0, 1}, I(A_U2, A_Y) - I(A_U2, A_Z));
      row(p, {1, 0}, I(A_U1, A_Y, A_U2) - I(A_U1, A_Z, A_U2));
      return p;
    }

    case Variant::OUTER: {
      auto p = make({"R1", "R2"});
      row(p, {1, 0}, I(A_U1, A_Y, A_U2 | A_U) - I(A_U1, A_Z, A_U2 | A_U));
      row(p, {0, 1}, I(A_U2, A_Y, A_U1 | A_U) - I(A_U2, A_Z, A_U1 | A_U));
      row(p, {1, 1}, I(A_U1 | A_U2, A_Y, A_U) - I(A_U1 | A_U2, A_Z, A_U));
      return p;
    }

    case Variant::D11: {
      auto p = make({"R1", "R0"});
      const AxisSet C = A_U | A_U2;
      double g = I(A_U1, A_Y, C | A_V);
      double e = I(A_U1, A_Z, C | A_S);
      double rsk = I(A_V, A_Y) - I(A_V, A_Z | A_U | A_U2);
      double tot = I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_V, A_S);
      row(p, {1, 0}, g - e + rsk);
      row(p, {1, 0}, g);
      row(p, {1, 1}, tot - e + rsk);
      row(p, {1, 1}, tot);
      return p;
    }
    case Variant::D12: {
      auto p = make({"R1", "R0"});
      double rsk = I(A_V, A_Y) - I(A_V, A_Z | A_U | A_U2);
      row(p, {1, 0}, rsk);
      row(p, {1, 0}, I(A_U1, A_Y, A_U | A_U2 | A_V));
      row(p, {1, 1}, I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_V, A_S));
      return p;
    }
    case Variant::D21: {
      auto p = make({"R1", "R0"});
      const AxisSet C = A_U | A_U2;
      double g = I(A_U1, A_Y, C);
      double e = I(A_U1, A_Z, C | A_S);
      double hzu = Hc(A_S, A_Z | C);
      double hyu = Hc(A_S, C | A_U1 | A_Y);
      double tot = I(A_U | A_U1 | A_U2, A_Y);
      row(p, {1, 0}, g - e - hyu + hzu);
      row(p, {1, 0}, g - hyu);
      row(p, {1, 1}, tot - e - hyu + hzu);
      row(p, {1, 1}, tot - hyu);
      return p;
    }
    case Variant::D22: {
      auto p = make({"R1", "R0"});
      const AxisSet C = A_U | A_U2;
      double hzu = Hc(A_S, A_Z | C);
      double hyu = Hc(A_S, C | A_U1 | A_Y);
      row(p, {1, 0}, hzu - hyu);
      row(p, {1, 0}, I(A_U1, A_Y, C) - hyu);
      row(p, {1, 1}, I(A_U | A_U1 | A_U2, A_Y) - hyu);
      return p;
    }
    case Variant::D3: {
      auto p = make({"R1", "R0"});
      double e = I(A_U1, A_Z, A_U | A_U2);
      row(p, {1, 0}, I(A_U1, A_Y, A_U | A_U2 | A_V) - e);
      row(p, {1, 1}, I(A_V | A_U | A_U1 | A_U2, A_Y) - I(A_V, A_S) - e);
      return p;
    }

    case Variant::OCSI_OUT:
    case Variant::OCSI_IN: {
      auto p = make({"R1", "R0"});
      const AxisSet UX2 = A_U | A_X2;
      double a = I(A_X1 | A_S, A_Y, UX2);
      double ez = I(A_X1 | A_S, A_Z, UX2);
      double tot = I(A_X1 | A_X2 | A_S, A_Y);
      row(p, {1, 0}, a - ez);
      row(p, {1, 1}, tot - ez);
      if (which == Variant::OCSI_OUT) {
        row(p, {1, 0}, I(A_X1, A_Y, A_S | UX2));
        row(p, {1, 1}, I(A_X1 | A_X2, A_Y, A_S));
      } else {
        double hs = ec.H(A_S);
        row(p, {1, 0}, a - hs);
        row(p, {1, 1}, tot - hs);
      }
      return p;
    }
    case Variant::CSI_ED: {
      auto p = make({"R1", "R0"});
      const AxisSet UX2 = A_U | A_X2;
      double g = I(A_X1, A_Y, UX2 | A_S);
      double e = I(A_X1, A_Z, UX2 | A_S);
      double hzu = Hc(A_S, A_Z | UX2);
      double tot = I(A_X1 | A_X2, A_Y, A_S);
      row(p, {1, 0}, g - e + hzu);
      row(p, {1, 0}, g);
      row(p, {1, 1}, tot - e + hzu);
      row(p, {1, 1}, tot);
      return p;
    }
  }
  throw validation_error("build_region: unknown variant");
}

namespace {

RegionPolytope checked(const FactoredJoint& fj, Variant which) {
  fj.check_shape();
  JointTensor j = fj.assemble();
  EntropyCache ec(j);
  return build_region(ec, which);
}

void need(bool ok, const char* what) {
  if (!ok) throw validation_error(std::string("region: ") + what);
}

}  // namespace

RegionPolytope region_theorem1(const FactoredJoint& fj, Variant which) {
  need(which == Variant::R01 || which == Variant::R02 || which == Variant::R03,
       "variant outside the stateless family");
  need(fj.shape == Shape::Scheme2, "stateless family needs the independent-inputs shape");
  need(fj.ch->s == 1, "stateless family needs a trivial state");
  return checked(fj, which);
}

RegionPolytope region_scheme1(const FactoredJoint& fj, Variant which) {
  need(which == Variant::R11 || which == Variant::R12 || which == Variant::R13,
       "variant outside the key-from-description family");
  need(fj.shape == Shape::Scheme1, "key-from-description family needs the full shape");
  return checked(fj, which);
}

RegionPolytope region_scheme2(const FactoredJoint& fj, Variant which) {
  need(which == Variant::R21 || which == Variant::R22 || which == Variant::R23,
       "variant outside the key-from-state family");
  need(fj.shape == Shape::Scheme2, "key-from-state family needs independent-inputs shape");
  return checked(fj, which);
}

RegionPolytope region_scheme3(const FactoredJoint& fj, Variant which) {
  need(which == Variant::R31 || which == Variant::R32 || which == Variant::R33,
       "variant outside the keyless family");
  need(fj.shape == Shape::Scheme1, "keyless family needs the full shape");
  return checked(fj, which);
}

RegionPolytope region_prior_work(const FactoredJoint& fj, Variant which) {
  need(which == Variant::PW_R1 || which == Variant::PW_R2,
       "variant outside the successive-decoding family");
  need(fj.shape == Shape::Scheme2, "successive-decoding family needs independent inputs");
  return checked(fj, which);
}

RegionPolytope outer_bound(const FactoredJoint& fj) {
  need(fj.shape == Shape::OuterBound, "outer bound needs the joint-auxiliary shape");
  return checked(fj, Variant::OUTER);
}

RegionPolytope regions_degraded(const FactoredJoint& fj, Variant which) {
  switch (which) {
    case Variant::D11:
    case Variant::D12:
    case Variant::D21:
    case Variant::D22:
    case Variant::D3:
      need(fj.shape == Shape::Scheme1,
           "degraded-message-set regions need the full shape");
      break;
    case Variant::OCSI_IN:
    case Variant::OCSI_OUT:
    case Variant::CSI_ED:
      need(fj.shape == Shape::OneSideCsi, "one-side bounds need the one-side shape");
      break;
    default:
      need(false, "variant outside the degraded-message-set family");
  }
  return checked(fj, which);
}

namespace {

// All pmfs over `k` letters whose entries are multiples of 1/steps.
void simplex_grid(int k, int steps, std::vector<std::vector<double>>& out) {
  std::vector<int> c((size_t)k, 0);
  std::vector<std::vector<double>> acc;
  // Iterative composition enumeration.
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      c[(size_t)pos] = left;
      std::vector<double> v((size_t)k);
      for (int i = 0; i < k; ++i) v[(size_t)i] = (double)c[(size_t)i] / steps;
      out.push_back(std::move(v));
      return;
    }
    for (int take = 0; take <= left; ++take) {
      c[(size_t)pos] = take;
      rec(pos + 1, left - take);
    }
  };
  rec(0, steps);
}

}  // namespace

double capacity_single_user(const SdMawc& ch, const StrategyGrid& grid) {
  ch.validate();
  if (ch.x2 != 1)
    throw validation_error("capacity_single_user: second input must be trivial");
  if (!(grid.step > 0) || grid.step > 1)
    throw validation_error("capacity_single_user: grid step outside (0,1]");
  int steps = (int)(1.0 / grid.step + 0.5);
  std::vector<std::vector<double>> rows;
  simplex_grid(ch.x1, steps, rows);
  double nrows = 1;
  for (int i = 0; i < ch.s; ++i) nrows *= (double)rows.size();
  if (nrows > 5e6) throw budget_error("capacity_single_user: strategy grid too large");

  double best = 0.0;  // R = 0 is always achievable
  std::vector<int> pick((size_t)ch.s, 0);
  for (;;) {
    JointTensor j;
    j.dim[AXIS_S] = ch.s;
    j.dim[AXIS_X1] = ch.x1;
    j.dim[AXIS_Y] = ch.y;
    j.dim[AXIS_Z] = ch.z;
    j.alloc();
    std::array<int, NUM_AXES> ix{};
    for (int ss = 0; ss < ch.s; ++ss)
      for (int xx = 0; xx < ch.x1; ++xx)
        for (int yy = 0; yy < ch.y; ++yy)
          for (int zz = 0; zz < ch.z; ++zz) {
            ix[AXIS_S] = ss;
            ix[AXIS_X1] = xx;
            ix[AXIS_Y] = yy;
            ix[AXIS_Z] = zz;
            j.p[j.offset(ix)] = ch.state[ss] * rows[(size_t)pick[(size_t)ss]][(size_t)xx] *
                                ch.wp(xx, 0, ss, yy, zz);
          }
    EntropyCache ec(j);
    double secure = ec.I(A_X1, A_Y, A_S) - ec.I(A_X1, A_Z, A_S) + ec.Hc(A_S, A_Z);
    double direct = ec.I(A_X1, A_Y, A_S);
    best = std::max(best, std::min(secure, direct));
    int i = ch.s - 1;
    while (i >= 0 && pick[(size_t)i] == (int)rows.size() - 1) --i;
    if (i < 0) break;
    ++pick[(size_t)i];
    for (int k = i + 1; k < ch.s; ++k) pick[(size_t)k] = 0;
  }
  return best;
}

}  // namespace mawc
