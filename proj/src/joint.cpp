#include "mawc/joint.hpp"

#include <cmath>

#include "mawc/info.hpp"

namespace mawc {

size_t JointTensor::cells() const {
  size_t c = 1;
  for (int d : dim) c *= (size_t)d;
  return c;
}

void JointTensor::alloc() {
  for (int d : dim)
    if (d < 1) throw validation_error("JointTensor: axis size must be >= 1");
  size_t c = cells();
  if (c > kMaxCells) throw budget_error("JointTensor: cell budget exceeded");
  p.assign(c, 0.0);
}

size_t JointTensor::offset(const std::array<int, NUM_AXES>& ix) const {
  size_t o = 0;
  for (int a = 0; a < NUM_AXES; ++a) o = o * (size_t)dim[a] + (size_t)ix[a];
  return o;
}

void JointTensor::validate(double tol) const {
  if (p.size() != cells()) throw validation_error("JointTensor: storage size mismatch");
  double mass = 0;
  for (double x : p) {
    if (x < -tol) throw validation_error("JointTensor: negative probability");
    if (!std::isfinite(x)) throw validation_error("JointTensor: non-finite probability");
    mass += x;
  }
  if (std::fabs(mass - 1.0) > tol)
    throw validation_error("JointTensor: total mass deviates from 1");
}

std::vector<double> JointTensor::marginal(AxisSet keep) const {
  size_t out_cells = 1;
  std::array<size_t, NUM_AXES> stride{};  // stride in the output for kept axes
  for (int a = NUM_AXES - 1; a >= 0; --a) {
    if (keep & (1u << a)) {
      stride[a] = out_cells;
      out_cells *= (size_t)dim[a];
    } else {
      stride[a] = 0;
    }
  }
  std::vector<double> m(out_cells, 0.0);
  std::array<int, NUM_AXES> ix{};
  size_t bucket = 0;
  for (double x : p) {
    m[bucket] += x;
    // Odometer step over the full tensor, maintaining the bucket index.
    for (int a = NUM_AXES - 1; a >= 0; --a) {
      if (++ix[a] < dim[a]) {
        bucket += stride[a];
        break;
      }
      ix[a] = 0;
      bucket -= stride[a] * (size_t)(dim[a] - 1);
    }
  }
  return m;
}

double JointTensor::entropy(AxisSet axes) const { return entropy_bits(marginal(axes)); }

double conditional_entropy(const JointTensor& j, AxisSet target, AxisSet given) {
  return j.entropy(target | given) - j.entropy(given);
}

double mutual_information(const JointTensor& j, AxisSet left, AxisSet right,
                          AxisSet given) {
  return j.entropy(left | given) + j.entropy(right | given) -
         j.entropy(left | right | given) - j.entropy(given);
}

EntropyCache::EntropyCache(const JointTensor& t) : j(&t), present(0) {
  for (int a = 0; a < NUM_AXES; ++a)
    if (t.dim[a] > 1) present |= 1u << a;
  h.fill(0.0);
  done.fill(false);
  done[0] = true;  // H(empty) = 0
}

double EntropyCache::H(AxisSet a) {
  a &= present;  // size-1 axes never affect an entropy
  if (!done[a]) {
    h[a] = j->entropy(a);
    done[a] = true;
  }
  return h[a];
}

}  // namespace mawc
