#pragma once
#include "mawc/factored.hpp"
#include "mawc/polytope.hpp"

namespace mawc {

enum class Variant {
  R01, R02, R03,                   // stateless three-variant region
  R11, R12, R13,                   // key-from-description scheme
  R21, R22, R23,                   // key-from-state scheme
  R31, R32, R33,                   // keyless scheme
  PW_R1, PW_R2,                    // earlier successive-decoding inner bound
  OUTER,                           // noncausal-side-information outer bound
  D11, D12, D21, D22, D3,          // degraded-message-set inner regions (R1, common R0)
  OCSI_IN, OCSI_OUT,               // one-side-CSI inner/outer bounds
  CSI_ED,                          // CSI at encoder and decoder (capacity form)
};

const char* variant_name(Variant v);

// Low-level builder used by the search loop: evaluates `which` on an already
// assembled joint. No shape checking (callers validate).
RegionPolytope build_region(EntropyCache& ec, Variant which);

// Shape-checked public evaluators.
RegionPolytope region_theorem1(const FactoredJoint& fj, Variant which);   // R01..R03, needs |S|=1
RegionPolytope region_scheme1(const FactoredJoint& fj, Variant which);    // R11..R13
RegionPolytope region_scheme2(const FactoredJoint& fj, Variant which);    // R21..R23
RegionPolytope region_scheme3(const FactoredJoint& fj, Variant which);    // R31..R33
RegionPolytope region_prior_work(const FactoredJoint& fj, Variant which); // PW_R1, PW_R2
RegionPolytope outer_bound(const FactoredJoint& fj);
RegionPolytope regions_degraded(const FactoredJoint& fj, Variant which);  // D*, OCSI_*, CSI_ED

struct StrategyGrid {
  double step = 1e-2;
};

// Single-sender capacity with causal encoder CSI and informed decoder:
// max over gridded P_{X|S} of min{I(X;Y|S)-I(X;Z|S)+H(S|Z), I(X;Y|S)}.
// Requires |X2| = 1.
double capacity_single_user(const SdMawc& ch, const StrategyGrid& grid = {});

}  // namespace mawc
