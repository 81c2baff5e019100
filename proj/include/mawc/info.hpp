#pragma once
#include <vector>

#include "mawc/prob.hpp"

namespace mawc {

// -sum p log2 p with 0 log 0 = 0. No validation; use on raw marginals.
double entropy_bits(const std::vector<double>& w);

// H(p) in bits; validates normalization.
double entropy(const Pmf& m);

// h(x) = -x log2 x - (1-x) log2 (1-x); domain error outside [0,1].
double binary_entropy(double x);

// a*b = a(1-b) + (1-a)b; domain error outside [0,1].
double binary_convolve(double a, double b);

// D(a||b) in bits; support violation returns +inf and sets the flag.
double kl_divergence(const Pmf& a, const Pmf& b, bool* support_violation = nullptr);

}  // namespace mawc
