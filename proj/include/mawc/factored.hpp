#pragma once
#include "mawc/channel.hpp"
#include "mawc/joint.hpp"

namespace mawc {

enum class Shape { Scheme1, Scheme2, OuterBound, OneSideCsi };

// A channel plus an auxiliary-variable factorization; assemble() produces the
// canonical 9-axis joint. Kernel roles per shape:
//   Scheme1:    pv_s: S->V, pu: ->U, pu1: U->U1, pu2: U->U2,
//               px1: (U,U1,S)->X1, px2: (U,U2,S)->X2
//   Scheme2:    pu1: ->U1, pu2: ->U2, px1: (U1,S)->X1, px2: (U2,S)->X2
//   OuterBound: paux: S->(U,U1,U2) jointly, px1: (U,U1,S)->X1, px2: (U,U2,S)->X2
//   OneSideCsi: pu: ->U, px1: (U,S)->X1, px2: U->X2
struct FactoredJoint {
  const SdMawc* ch = nullptr;
  Shape shape = Shape::Scheme2;
  int v = 1, u = 1, u1 = 1, u2 = 1;
  Kernel pv_s, pu, pu1, pu2, px1, px2, paux;

  void check_shape() const;       // kernel dims consistent with declared shape
  JointTensor assemble() const;   // validates, then builds the joint
};

FactoredJoint scheme1_joint(const SdMawc& ch, const Kernel& pv_s, const Pmf& pu,
                            const Kernel& pu1_u, const Kernel& pu2_u,
                            const Kernel& px1, const Kernel& px2);
FactoredJoint scheme2_joint(const SdMawc& ch, const Pmf& pu1, const Pmf& pu2,
                            const Kernel& px1, const Kernel& px2);
FactoredJoint outer_joint(const SdMawc& ch, const Kernel& paux_s,
                          const Kernel& px1, const Kernel& px2);
FactoredJoint one_side_joint(const SdMawc& ch, const Pmf& pu,
                             const Kernel& px1_us, const Kernel& px2_u);

}  // namespace mawc
