#include <array>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mawc/info.hpp"
#include "mawc/joint.hpp"
#include "mawc/prob.hpp"
#include "mawc/rng.hpp"

using namespace mawc;

namespace {

// Random strictly positive joint over the given axis sizes.
JointTensor random_joint(uint64_t seed, const std::array<int, NUM_AXES>& dim) {
  JointTensor j;
  j.dim = dim;
  j.alloc();
  Rng g(seed);
  double tot = 0;
  for (auto& c : j.p) {
    c = g.uni() + 1e-3;
    tot += c;
  }
  for (auto& c : j.p) c /= tot;
  j.validate();
  return j;
}

std::array<int, NUM_AXES> dims3(int a, int b, int c) {
  std::array<int, NUM_AXES> d;
  d.fill(1);
  d[AXIS_X1] = a;
  d[AXIS_Z] = b;
  d[AXIS_Y] = c;
  return d;
}

}  // namespace

TEST_SUITE("info") {

TEST_CASE("binary entropy reference values") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.2) == doctest::Approx(0.721928).epsilon(1e-6));
  CHECK(binary_entropy(0.3) == doctest::Approx(0.881291).epsilon(1e-6));
  CHECK(binary_entropy(0.1) == doctest::Approx(0.468996).epsilon(1e-6));
  CHECK(binary_entropy(0.68) == doctest::Approx(0.904381).epsilon(1e-6));
  Rng g(11);
  for (int i = 0; i < 50; ++i) {
    double x = g.uni();
    CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1 - x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(binary_entropy(-0.01), validation_error);
  CHECK_THROWS_AS(binary_entropy(1.01), validation_error);
}

TEST_CASE("binary entropy is concave") {
  Rng g(12);
  for (int i = 0; i < 200; ++i) {
    double a = g.uni(), b = g.uni(), t = g.uni();
    double mix = binary_entropy(t * a + (1 - t) * b);
    double avg = t * binary_entropy(a) + (1 - t) * binary_entropy(b);
    CHECK(mix >= avg - 1e-12);
  }
}

TEST_CASE("binary convolve") {
  CHECK(binary_convolve(0.1, 0.2) == doctest::Approx(0.26).epsilon(1e-12));
  Rng g(13);
  for (int i = 0; i < 50; ++i) {
    double a = g.uni(), b = g.uni();
    CHECK(binary_convolve(a, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(binary_convolve(0.0, a) == doctest::Approx(a).epsilon(1e-12));
    CHECK(binary_convolve(a, b) == doctest::Approx(binary_convolve(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("entropy of distributions") {
  CHECK(entropy(Pmf::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(Pmf::uniform(8)) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(entropy(Pmf::point(5, 2)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(entropy(Pmf({0.2, 0.8})) == doctest::Approx(binary_entropy(0.2)).epsilon(1e-12));
  CHECK(entropy_bits({0.5, 0.25, 0.25}) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("kl divergence basics") {
  Rng g(14);
  for (int i = 0; i < 30; ++i) {
    int k = 2 + (int)g.below(5);
    std::vector<double> a(k), b(k);
    double sa = 0, sb = 0;
    for (int j = 0; j < k; ++j) {
      a[j] = g.uni() + 1e-3;
      b[j] = g.uni() + 1e-3;
      sa += a[j];
      sb += b[j];
    }
    for (int j = 0; j < k; ++j) {
      a[j] /= sa;
      b[j] /= sb;
    }
    CHECK(kl_divergence(Pmf(a), Pmf(a)) == doctest::Approx(0.0).epsilon(1e-12));
    double d = kl_divergence(Pmf(a), Pmf(b));
    CHECK(d >= -1e-12);
  }
  // Support violation: mass where the reference has none.
  bool viol = false;
  double d = kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), &viol);
  CHECK(viol);
  CHECK(std::isinf(d));
  viol = true;
  kl_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5}), &viol);
  CHECK_FALSE(viol);
  CHECK_THROWS_AS(kl_divergence(Pmf({0.5, 0.5}), Pmf({1.0})), validation_error);
}

TEST_CASE("pmf and kernel validation") {
  CHECK_THROWS_AS(Pmf({0.5, 0.6}).validate(), validation_error);
  CHECK_THROWS_AS(Pmf({-0.1, 1.1}).validate(), validation_error);
  Pmf b = Pmf::bern(0.3);
  CHECK(b.p[0] == doctest::Approx(0.7));
  CHECK(b.p[1] == doctest::Approx(0.3));

  Kernel det = Kernel::deterministic({2, 3}, 4, [](const std::vector<int>& ix) {
    return (ix[0] + ix[1]) % 4;
  });
  det.validate();
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 3; ++c)
      CHECK(det.p[(a * 3 + c) * 4 + (a + c) % 4] == 1.0);

  Kernel tied = Kernel::tied({3}, Pmf({0.25, 0.75}));
  tied.validate();
  for (int r = 0; r < 3; ++r) CHECK(tied.p[2 * r] == doctest::Approx(0.25));

  Kernel bad = tied;
  bad.p[0] += 0.2;
  CHECK_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("joint tensor validation and budget") {
  JointTensor j;
  j.dim = dims3(2, 2, 2);
  j.alloc();
  for (auto& c : j.p) c = 1.0 / 8;
  j.validate();
  j.p[0] = -0.01;
  j.p[1] += 0.135;
  CHECK_THROWS_AS(j.validate(), validation_error);

  JointTensor big;
  big.dim.fill(1);
  big.dim[AXIS_Y] = 2048;
  big.dim[AXIS_Z] = 2048;
  CHECK_THROWS_AS(big.alloc(), budget_error);
}

TEST_CASE("entropy chain rule on random joints") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    JointTensor j = random_joint(seed, dims3(2, 3, 2));
    AxisSet X = A_X1, Z = A_Z, Y = A_Y;
    double hxy = j.entropy(X | Y);
    CHECK(hxy == doctest::Approx(j.entropy(X) + conditional_entropy(j, Y, X)).epsilon(1e-10));
    double i = mutual_information(j, X, Y);
    CHECK(i == doctest::Approx(j.entropy(X) + j.entropy(Y) - hxy).epsilon(1e-10));
    CHECK(i >= -1e-10);
    CHECK(mutual_information(j, X, Y, Z) >= -1e-10);
    // Conditioning a deterministic function of itself changes nothing.
    CHECK(j.entropy(X | Y | Z) == doctest::Approx(j.entropy(X | Y | Z)).epsilon(1e-12));
  }
}

TEST_CASE("marginals are distributions") {
  JointTensor j = random_joint(77, dims3(3, 2, 4));
  for (AxisSet keep : {A_X1, A_Z | A_Y}) {
    std::vector<double> m = j.marginal(keep);
    double tot = 0;
    for (double c : m) tot += c;
    CHECK(tot == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(j.entropy(0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("markov chain gives zero conditional information") {
  // Build p(x,z,y) = p(z) p(x|z) p(y|z): X - Z - Y.
  Rng g(99);
  JointTensor j;
  j.dim = dims3(2, 3, 2);
  j.alloc();
  std::vector<double> pz(3), pxz(3), pyz(3);
  double tot = 0;
  for (int z = 0; z < 3; ++z) {
    pz[z] = g.uni() + 0.1;
    tot += pz[z];
    pxz[z] = g.uni();
    pyz[z] = g.uni();
  }
  for (int z = 0; z < 3; ++z) pz[z] /= tot;
  std::array<int, NUM_AXES> ix{};
  for (int x = 0; x < 2; ++x)
    for (int z = 0; z < 3; ++z)
      for (int y = 0; y < 2; ++y) {
        ix[AXIS_X1] = x;
        ix[AXIS_Z] = z;
        ix[AXIS_Y] = y;
        double px = x == 0 ? pxz[z] : 1 - pxz[z];
        double py = y == 0 ? pyz[z] : 1 - pyz[z];
        j.p[j.offset(ix)] = pz[z] * px * py;
      }
  j.validate();
  double izero = mutual_information(j, A_X1, A_Y, A_Z);
  CHECK(izero == doctest::Approx(0.0).epsilon(1e-10));
  // Unconditionally X and Y are dependent through Z.
  CHECK(mutual_information(j, A_X1, A_Y) > 1e-4);
}

TEST_CASE("entropy cache matches direct computation") {
  JointTensor j = random_joint(123, dims3(2, 2, 3));
  EntropyCache ec(j);
  AxisSet X = A_X1, Z = A_Z, Y = A_Y;
  CHECK(ec.H(X | Y) == doctest::Approx(j.entropy(X | Y)).epsilon(1e-12));
  CHECK(ec.Hc(Y, X) == doctest::Approx(conditional_entropy(j, Y, X)).epsilon(1e-12));
  CHECK(ec.I(X, Y) == doctest::Approx(mutual_information(j, X, Y)).epsilon(1e-12));
  CHECK(ec.I(X, Y, Z) == doctest::Approx(mutual_information(j, X, Y, Z)).epsilon(1e-12));
  // I(X; Y,Z) decomposes as I(X;Z) + I(X;Y|Z).
  CHECK(ec.I(X, Y | Z) == doctest::Approx(ec.I(X, Z) + ec.I(X, Y, Z)).epsilon(1e-10));
}

}  // TEST_SUITE
