#pragma once
#include <string>
#include <utility>
#include <vector>

namespace mawc {

// Linear-inequality system A x <= b over named rate variables, with x >= 0
// implied for every variable.
struct RegionPolytope {
  std::vector<std::string> vars;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  bool empty_flag = false;      // infeasible together with x >= 0
  bool unbounded_flag = false;  // projection produced an unbounded direction

  int dim() const { return (int)vars.size(); }
  void add(std::vector<double> coeff, double rhs);
};

// Exact Fourier-Motzkin projection onto `keep` (implied nonnegativity of the
// eliminated variables participates as lower bounds). Redundancy is removed by
// pairwise dominance during elimination and a vertex-support pass at the end.
RegionPolytope project(const RegionPolytope& poly, const std::vector<std::string>& keep);

// All vertices of {A x <= b, x >= 0}, deduplicated within tol.
std::vector<std::vector<double>> enumerate_vertices(const RegionPolytope& poly,
                                                    double tol = 1e-9);

// Monotone-chain hull; returns vertices in counterclockwise order.
std::vector<std::pair<double, double>> convex_hull_2d(
    std::vector<std::pair<double, double>> pts);

// Pareto-maximal subset, sorted R1 ascending / R2 strictly descending;
// near-duplicates merged within merge_tol.
std::vector<std::pair<double, double>> pareto_front(
    std::vector<std::pair<double, double>> pts, double merge_tol = 1e-9);

// CSV rows "coeffs...,const" with a header naming the variables.
std::string polytope_csv(const RegionPolytope& poly, int digits = 6);

}  // namespace mawc
