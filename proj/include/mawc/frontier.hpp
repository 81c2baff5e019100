#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "mawc/regions.hpp"

namespace mawc {

struct SearchConfig {
  double grid_step = 1.0 / 16;                 // simplex grid for free pmf parameters
  std::vector<double> anchors = {0.2, 0.5, 0.8};
  int det_cap = 4096;                          // max deterministic maps enumerated per sender
  int threads = 1;
  double budget_s = 0;                         // wall-clock cap; 0 = unlimited
  // Auxiliary alphabet sizes; 0 picks the family's default plan size.
  int aux_v = 0, aux_u = 0, aux_u1 = 0, aux_u2 = 0;
};

struct FrontierPoint {
  double r1 = 0, r2 = 0;
  std::string region;      // variant that produced the point
  std::string provenance;  // compact factorization descriptor
};

struct Frontier {
  std::vector<FrontierPoint> points;  // Pareto frontier, R1 ascending
  double max_r1 = 0, max_r2 = 0;      // best single-coordinate values seen
  bool partial = false;               // budget hit before the plan finished
};

// Families: theorem1, scheme1, scheme2, scheme3, prior, outer, dmset,
// D11, D12, D21, D22, D3, ocsi-in, ocsi-out, csi-ed.
Frontier search_frontier(const SdMawc& ch, const std::string& family,
                         const SearchConfig& cfg = {});

bool known_family(const std::string& family);

// CSV with header "R1,R2,region,provenance".
std::string frontier_csv(const Frontier& f, int digits = 6);

}  // namespace mawc
