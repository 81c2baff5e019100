#include "mawc/prob.hpp"

#include <cmath>

namespace mawc {

Pmf Pmf::uniform(int n) {
  if (n < 1) throw validation_error("Pmf::uniform: empty alphabet");
  return Pmf(std::vector<double>((size_t)n, 1.0 / n));
}

Pmf Pmf::bern(double p1) {
  if (p1 < 0 || p1 > 1) throw validation_error("Pmf::bern: probability outside [0,1]");
  return Pmf({1.0 - p1, p1});
}

Pmf Pmf::point(int n, int at) {
  if (n < 1 || at < 0 || at >= n) throw validation_error("Pmf::point: index outside alphabet");
  std::vector<double> v((size_t)n, 0.0);
  v[(size_t)at] = 1.0;
  return Pmf(std::move(v));
}

void Pmf::validate(double tol) const {
  if (p.empty()) throw validation_error("Pmf: empty support");
  double mass = 0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -tol)
      throw validation_error("Pmf: invalid probability entry");
    mass += x;
  }
  if (std::fabs(mass - 1.0) > tol) throw validation_error("Pmf: mass deviates from 1");
}

int Kernel::rows() const {
  int r = 1;
  for (int d : in_shape) r *= d;
  return r;
}

int Kernel::row_index(const std::vector<int>& in) const {
  if (in.size() != in_shape.size())
    throw validation_error("Kernel: conditioning arity mismatch");
  int r = 0;
  for (size_t i = 0; i < in.size(); ++i) {
    if (in[i] < 0 || in[i] >= in_shape[i])
      throw validation_error("Kernel: conditioning index outside alphabet");
    r = r * in_shape[i] + in[i];
  }
  return r;
}

Kernel Kernel::from_pmf(const Pmf& m) {
  Kernel k;
  k.in_shape = {};
  k.out = m.size();
  k.p = m.p;
  return k;
}

Kernel Kernel::deterministic(std::vector<int> in_shape, int out,
                             const std::function<int(const std::vector<int>&)>& f) {
  Kernel k;
  k.in_shape = std::move(in_shape);
  k.out = out;
  k.p.assign((size_t)k.rows() * out, 0.0);
  std::vector<int> in(k.in_shape.size(), 0);
  for (int r = 0; r < k.rows(); ++r) {
    int o = f(in);
    if (o < 0 || o >= out)
      throw validation_error("Kernel::deterministic: map value outside alphabet");
    k.at(r, o) = 1.0;
    for (int i = (int)in.size() - 1; i >= 0; --i) {
      if (++in[i] < k.in_shape[i]) break;
      in[i] = 0;
    }
  }
  return k;
}

Kernel Kernel::tied(std::vector<int> in_shape, const Pmf& m) {
  Kernel k;
  k.in_shape = std::move(in_shape);
  k.out = m.size();
  k.p.reserve((size_t)k.rows() * k.out);
  for (int r = 0; r < k.rows(); ++r) k.p.insert(k.p.end(), m.p.begin(), m.p.end());
  return k;
}

void Kernel::validate(double tol) const {
  if (out < 1) throw validation_error("Kernel: empty output alphabet");
  for (int d : in_shape)
    if (d < 1) throw validation_error("Kernel: empty conditioning alphabet");
  if (p.size() != (size_t)rows() * out)
    throw validation_error("Kernel: storage size mismatch");
  for (int r = 0; r < rows(); ++r) {
    double mass = 0;
    for (int o = 0; o < out; ++o) {
      double x = at(r, o);
      if (!std::isfinite(x) || x < -tol)
        throw validation_error("Kernel: invalid probability entry");
      mass += x;
    }
    if (std::fabs(mass - 1.0) > tol)
      throw validation_error("Kernel: row mass deviates from 1");
  }
}

}  // namespace mawc
