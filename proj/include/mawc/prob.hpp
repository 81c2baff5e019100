#pragma once
#include <functional>
#include <vector>

#include "mawc/base.hpp"

namespace mawc {

// Probability mass function over a finite alphabet {0,...,n-1}.
struct Pmf {
  std::vector<double> p;

  Pmf() = default;
  explicit Pmf(std::vector<double> v) : p(std::move(v)) {}

  int size() const { return (int)p.size(); }
  double operator[](int i) const { return p[i]; }

  static Pmf uniform(int n);
  static Pmf bern(double p1);       // {1-p1, p1}, P{X=1} = p1
  static Pmf point(int n, int at);  // deterministic

  // Entries nonnegative and summing to 1 within tol.
  void validate(double tol = 1e-12) const;
};

// Conditional distribution: one output pmf per conditioning tuple.
// Rows are indexed row-major over in_shape (first coordinate slowest).
struct Kernel {
  std::vector<int> in_shape;
  int out = 1;
  std::vector<double> p;  // rows() x out

  int rows() const;
  int row_index(const std::vector<int>& in) const;
  double at(int row, int o) const { return p[(size_t)row * out + o]; }
  double& at(int row, int o) { return p[(size_t)row * out + o]; }

  static Kernel from_pmf(const Pmf& m);  // no conditioning (single row)
  static Kernel deterministic(std::vector<int> in_shape, int out,
                              const std::function<int(const std::vector<int>&)>& f);
  static Kernel tied(std::vector<int> in_shape, const Pmf& m);  // same pmf in every row

  void validate(double tol = 1e-12) const;
};

}  // namespace mawc
