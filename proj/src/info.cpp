#include "mawc/info.hpp"

#include <cmath>
#include <limits>

#include "mawc/base.hpp"
#include "mawc/prob.hpp"

namespace mawc {

double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double x : p)
    if (x > 0) h -= x * std::log2(x);
  return h;
}

double entropy(const Pmf& p) {
  p.validate();
  return entropy_bits(p.p);
}

double binary_entropy(double x) {
  if (x <= 0 || x >= 1) {
    if (x < -1e-12 || x > 1 + 1e-12)
      throw validation_error("binary_entropy: argument outside [0,1]");
    return 0;
  }
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double binary_convolve(double a, double b) { return a * (1 - b) + (1 - a) * b; }

double kl_divergence(const Pmf& a, const Pmf& b, bool* support_violation) {
  a.validate();
  b.validate();
  if (a.size() != b.size())
    throw validation_error("kl_divergence: dimension mismatch");
  if (support_violation) *support_violation = false;
  double d = 0;
  for (size_t i = 0; i < a.p.size(); ++i) {
    if (a.p[i] <= 0) continue;
    if (b.p[i] <= 0) {
      if (support_violation) *support_violation = true;
      return std::numeric_limits<double>::infinity();
    }
    d += a.p[i] * std::log2(a.p[i] / b.p[i]);
  }
  return d;
}

}  // namespace mawc
