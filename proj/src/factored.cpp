#include "mawc/factored.hpp"

namespace mawc {

static void require(bool ok, const char* what) {
  if (!ok) throw validation_error(std::string("factorization: ") + what);
}

void FactoredJoint::check_shape() const {
  require(ch != nullptr, "missing channel");
  ch->validate();
  require(v >= 1 && u >= 1 && u1 >= 1 && u2 >= 1, "alphabet sizes must be >= 1");
  switch (shape) {
    case Shape::Scheme1:
      require(pv_s.in_shape == std::vector<int>{ch->s} && pv_s.out == v,
              "state-description kernel shape");
      require(pu.in_shape.empty() && pu.out == u, "common-layer pmf shape");
      require(pu1.in_shape == std::vector<int>{u} && pu1.out == u1,
              "first private kernel shape");
      require(pu2.in_shape == std::vector<int>{u} && pu2.out == u2,
              "second private kernel shape");
      require(px1.in_shape == std::vector<int>{u, u1, ch->s} && px1.out == ch->x1,
              "input-1 strategy shape");
      require(px2.in_shape == std::vector<int>{u, u2, ch->s} && px2.out == ch->x2,
              "input-2 strategy shape");
      pv_s.validate();
      pu.validate();
      pu1.validate();
      pu2.validate();
      break;
    case Shape::Scheme2:
      require(v == 1 && u == 1, "independent-inputs shape uses no V or U axis");
      require(pu1.in_shape.empty() && pu1.out == u1, "first input pmf shape");
      require(pu2.in_shape.empty() && pu2.out == u2, "second input pmf shape");
      require(px1.in_shape == std::vector<int>{u1, ch->s} && px1.out == ch->x1,
              "input-1 strategy shape");
      require(px2.in_shape == std::vector<int>{u2, ch->s} && px2.out == ch->x2,
              "input-2 strategy shape");
      pu1.validate();
      pu2.validate();
      break;
    case Shape::OuterBound:
      require(v == 1, "outer-bound shape uses no V axis");
      require(paux.in_shape == std::vector<int>{ch->s} && paux.out == u * u1 * u2,
              "joint auxiliary kernel shape");
      require(px1.in_shape == std::vector<int>{u, u1, ch->s} && px1.out == ch->x1,
              "input-1 strategy shape");
      require(px2.in_shape == std::vector<int>{u, u2, ch->s} && px2.out == ch->x2,
              "input-2 strategy shape");
      paux.validate();
      break;
    case Shape::OneSideCsi:
      require(v == 1 && u1 == 1 && u2 == 1, "one-side shape uses only the U axis");
      require(pu.in_shape.empty() && pu.out == u, "time-sharing pmf shape");
      require(px1.in_shape == std::vector<int>{u, ch->s} && px1.out == ch->x1,
              "input-1 strategy shape");
      require(px2.in_shape == std::vector<int>{u} && px2.out == ch->x2,
              "input-2 strategy shape");
      break;
  }
  px1.validate();
  px2.validate();
}

JointTensor FactoredJoint::assemble() const {
  check_shape();
  const SdMawc& c = *ch;
  JointTensor j;
  j.dim = {v, u, u1, u2, c.s, c.x1, c.x2, c.y, c.z};
  j.alloc();

  // Normalize all shapes to three dense tables so the fill loop is uniform:
  //   aux[s][u][u1][u2], x1t[u][u1][s][x1], x2t[u][u2][s][x2].
  std::vector<double> aux((size_t)c.s * u * u1 * u2, 1.0);
  std::vector<double> x1t((size_t)u * u1 * c.s * c.x1, 0.0);
  std::vector<double> x2t((size_t)u * u2 * c.s * c.x2, 0.0);
  for (int ss = 0; ss < c.s; ++ss)
    for (int uu = 0; uu < u; ++uu)
      for (int a = 0; a < u1; ++a)
        for (int bb = 0; bb < u2; ++bb) {
          double w = 1.0;
          switch (shape) {
            case Shape::Scheme1:
              w = pu.at(0, uu) * pu1.at(uu, a) * pu2.at(uu, bb);
              break;
            case Shape::Scheme2:
              w = pu1.at(0, a) * pu2.at(0, bb);
              break;
            case Shape::OuterBound:
              w = paux.at(ss, (uu * u1 + a) * u2 + bb);
              break;
            case Shape::OneSideCsi:
              w = pu.at(0, uu);
              break;
          }
          aux[(((size_t)ss * u + uu) * u1 + a) * u2 + bb] = w;
        }
  for (int uu = 0; uu < u; ++uu)
    for (int a = 0; a < u1; ++a)
      for (int ss = 0; ss < c.s; ++ss)
        for (int xx = 0; xx < c.x1; ++xx) {
          double w = 0;
          switch (shape) {
            case Shape::Scheme1:
            case Shape::OuterBound:
              w = px1.at(px1.row_index({uu, a, ss}), xx);
              break;
            case Shape::Scheme2:
              w = px1.at(px1.row_index({a, ss}), xx);
              break;
            case Shape::OneSideCsi:
              w = px1.at(px1.row_index({uu, ss}), xx);
              break;
          }
          x1t[(((size_t)uu * u1 + a) * c.s + ss) * c.x1 + xx] = w;
        }
  for (int uu = 0; uu < u; ++uu)
    for (int bb = 0; bb < u2; ++bb)
      for (int ss = 0; ss < c.s; ++ss)
        for (int xx = 0; xx < c.x2; ++xx) {
          double w = 0;
          switch (shape) {
            case Shape::Scheme1:
            case Shape::OuterBound:
              w = px2.at(px2.row_index({uu, bb, ss}), xx);
              break;
            case Shape::Scheme2:
              w = px2.at(px2.row_index({bb, ss}), xx);
              break;
            case Shape::OneSideCsi:
              w = px2.at(px2.row_index({uu}), xx);
              break;
          }
          x2t[(((size_t)uu * u2 + bb) * c.s + ss) * c.x2 + xx] = w;
        }

  size_t o = 0;
  for (int vv = 0; vv < v; ++vv)
    for (int uu = 0; uu < u; ++uu)
      for (int a = 0; a < u1; ++a)
        for (int bb = 0; bb < u2; ++bb)
          for (int ss = 0; ss < c.s; ++ss) {
            double head = c.state[ss] * aux[(((size_t)ss * u + uu) * u1 + a) * u2 + bb];
            if (shape == Shape::Scheme1) head *= pv_s.at(ss, vv);
            for (int xx1 = 0; xx1 < c.x1; ++xx1) {
              double h1 = head * x1t[(((size_t)uu * u1 + a) * c.s + ss) * c.x1 + xx1];
              for (int xx2 = 0; xx2 < c.x2; ++xx2) {
                double h2 = h1 * x2t[(((size_t)uu * u2 + bb) * c.s + ss) * c.x2 + xx2];
                int row = xx1 * c.x2 * c.s + xx2 * c.s + ss;
                const double* wrow = &c.w.p[(size_t)row * c.w.out];
                for (int oy = 0; oy < c.y * c.z; ++oy) j.p[o++] = h2 * wrow[oy];
              }
            }
          }
  j.validate();
  return j;
}

static Kernel pmf_kernel(const Pmf& m) { return Kernel::from_pmf(m); }

FactoredJoint scheme1_joint(const SdMawc& ch, const Kernel& pv_s, const Pmf& pu,
                            const Kernel& pu1_u, const Kernel& pu2_u,
                            const Kernel& px1, const Kernel& px2) {
  FactoredJoint f;
  f.ch = &ch;
  f.shape = Shape::Scheme1;
  f.v = pv_s.out;
  f.u = pu.size();
  f.u1 = pu1_u.out;
  f.u2 = pu2_u.out;
  f.pv_s = pv_s;
  f.pu = pmf_kernel(pu);
  f.pu1 = pu1_u;
  f.pu2 = pu2_u;
  f.px1 = px1;
  f.px2 = px2;
  f.check_shape();
  return f;
}

FactoredJoint scheme2_joint(const SdMawc& ch, const Pmf& pu1, const Pmf& pu2,
                            const Kernel& px1, const Kernel& px2) {
  FactoredJoint f;
  f.ch = &ch;
  f.shape = Shape::Scheme2;
  f.u1 = pu1.size();
  f.u2 = pu2.size();
  f.pu1 = pmf_kernel(pu1);
  f.pu2 = pmf_kernel(pu2);
  f.px1 = px1;
  f.px2 = px2;
  f.check_shape();
  return f;
}

FactoredJoint outer_joint(const SdMawc& ch, const Kernel& paux_s, const Kernel& px1,
                          const Kernel& px2) {
  FactoredJoint f;
  f.ch = &ch;
  f.shape = Shape::OuterBound;
  // px1 conditioning (u,u1,s) carries the axis sizes; paux out must agree.
  f.u = px1.in_shape.size() == 3 ? px1.in_shape[0] : 1;
  f.u1 = px1.in_shape.size() == 3 ? px1.in_shape[1] : 1;
  f.u2 = px2.in_shape.size() == 3 ? px2.in_shape[1] : 1;
  f.paux = paux_s;
  f.px1 = px1;
  f.px2 = px2;
  f.check_shape();
  return f;
}

FactoredJoint one_side_joint(const SdMawc& ch, const Pmf& pu, const Kernel& px1_us,
                             const Kernel& px2_u) {
  FactoredJoint f;
  f.ch = &ch;
  f.shape = Shape::OneSideCsi;
  f.u = pu.size();
  f.pu = pmf_kernel(pu);
  f.px1 = px1_us;
  f.px2 = px2_u;
  f.check_shape();
  return f;
}

}  // namespace mawc
