#pragma once
#include <array>
#include <cstddef>
#include <vector>

#include "mawc/base.hpp"

namespace mawc {

// Canonical axis order shared by every joint distribution in the project.
// Absent variables keep size-1 axes so one tensor type fits all formulas.
enum Axis : int {
  AXIS_V,
  AXIS_U,
  AXIS_U1,
  AXIS_U2,
  AXIS_S,
  AXIS_X1,
  AXIS_X2,
  AXIS_Y,
  AXIS_Z,
  NUM_AXES
};

using AxisSet = unsigned;
constexpr AxisSet A_V = 1u << AXIS_V;
constexpr AxisSet A_U = 1u << AXIS_U;
constexpr AxisSet A_U1 = 1u << AXIS_U1;
constexpr AxisSet A_U2 = 1u << AXIS_U2;
constexpr AxisSet A_S = 1u << AXIS_S;
constexpr AxisSet A_X1 = 1u << AXIS_X1;
constexpr AxisSet A_X2 = 1u << AXIS_X2;
constexpr AxisSet A_Y = 1u << AXIS_Y;
constexpr AxisSet A_Z = 1u << AXIS_Z;

struct JointTensor {
  std::array<int, NUM_AXES> dim{1, 1, 1, 1, 1, 1, 1, 1, 1};
  std::vector<double> p;  // dense, row-major, AXIS_V slowest

  static constexpr size_t kMaxCells = 1u << 20;

  size_t cells() const;
  void alloc();  // resize to cells() zero-filled; enforces kMaxCells
  size_t offset(const std::array<int, NUM_AXES>& ix) const;

  // Nonnegative entries, total mass 1 within tol.
  void validate(double tol = 1e-10) const;

  // Marginal over `keep`, row-major over kept axes in canonical order.
  std::vector<double> marginal(AxisSet keep) const;
  double entropy(AxisSet axes) const;  // in bits
};

double mutual_information(const JointTensor& j, AxisSet left, AxisSet right,
                          AxisSet given = 0);
double conditional_entropy(const JointTensor& j, AxisSet target, AxisSet given = 0);

// Memoizes subset entropies of one tensor (at most 2^9 subsets), computed
// lazily: region formulas touch only a handful of subsets per tensor.
struct EntropyCache {
  const JointTensor* j;
  AxisSet present;  // axes with size > 1; other axes never change an entropy
  std::array<double, 512> h;
  std::array<bool, 512> done;
  explicit EntropyCache(const JointTensor& t);
  explicit EntropyCache(JointTensor&&) = delete;  // cache keeps a pointer
  double H(AxisSet a);
  double Hc(AxisSet target, AxisSet given) { return H(target | given) - H(given); }
  double I(AxisSet l, AxisSet r, AxisSet g = 0) {
    return H(l | g) + H(r | g) - H(l | r | g) - H(g);
  }
};

}  // namespace mawc
