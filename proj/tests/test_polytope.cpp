#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "mawc/polytope.hpp"
#include "mawc/rng.hpp"

using namespace mawc;

namespace {

bool has_vertex(const std::vector<std::vector<double>>& vs, std::vector<double> v,
                double tol = 1e-9) {
  for (const auto& w : vs) {
    double d = 0;
    for (size_t i = 0; i < v.size(); ++i) d = std::max(d, std::fabs(w[i] - v[i]));
    if (d <= tol) return true;
  }
  return false;
}

// Random bounded polytope: explicit unit box plus random cuts.
RegionPolytope random_polytope(uint64_t seed, int nv, int extra_rows) {
  Rng g(seed);
  RegionPolytope poly;
  for (int i = 0; i < nv; ++i) poly.vars.push_back("x" + std::to_string(i));
  for (int i = 0; i < nv; ++i) {
    std::vector<double> row(nv, 0.0);
    row[i] = 1.0;
    poly.add(row, 0.5 + g.uni());
  }
  for (int r = 0; r < extra_rows; ++r) {
    std::vector<double> row(nv);
    for (auto& c : row) c = g.uni() * 1.5 - 0.5;
    poly.add(row, 0.2 + g.uni());
  }
  return poly;
}

// Max distance of any vertex of `a` from the point set `b` (symmetrized by the caller).
double vertex_set_gap(const std::vector<std::pair<double, double>>& a,
                      const std::vector<std::pair<double, double>>& b) {
  double worst = 0;
  for (auto& p : a) {
    double best = 1e300;
    for (auto& q : b)
      best = std::min(best, std::hypot(p.first - q.first, p.second - q.second));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

TEST_SUITE("polytope") {

TEST_CASE("unit square vertices") {
  RegionPolytope poly;
  poly.vars = {"R1", "R2"};
  poly.add({1, 0}, 1.0);
  poly.add({0, 1}, 1.0);
  auto vs = enumerate_vertices(poly);
  CHECK(vs.size() == 4);
  CHECK(has_vertex(vs, {0, 0}));
  CHECK(has_vertex(vs, {1, 0}));
  CHECK(has_vertex(vs, {0, 1}));
  CHECK(has_vertex(vs, {1, 1}));
}

TEST_CASE("simplex projection") {
  RegionPolytope poly;
  poly.vars = {"R1", "R2", "R3"};
  poly.add({1, 1, 1}, 1.0);
  RegionPolytope proj = project(poly, {"R1", "R2"});
  CHECK(proj.vars == std::vector<std::string>{"R1", "R2"});
  auto vs = enumerate_vertices(proj);
  CHECK(vs.size() == 3);
  CHECK(has_vertex(vs, {0, 0}));
  CHECK(has_vertex(vs, {1, 0}));
  CHECK(has_vertex(vs, {0, 1}));
}

TEST_CASE("projection equals vertex shadow on random polytopes") {
  int checked = 0;
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    int nv = 3 + (int)(seed % 2);
    RegionPolytope poly = random_polytope(seed * 71, nv, 4 + (int)(seed % 4));
    auto full = enumerate_vertices(poly);
    if (full.empty()) continue;  // cuts may exclude the origin orthant corner
    ++checked;
    std::vector<std::pair<double, double>> shadow;
    for (auto& v : full) shadow.emplace_back(v[0], v[1]);
    auto shadow_hull = convex_hull_2d(shadow);

    RegionPolytope proj = project(poly, {"x0", "x1"});
    auto pv = enumerate_vertices(proj);
    REQUIRE_FALSE(pv.empty());
    std::vector<std::pair<double, double>> proj_pts;
    for (auto& v : pv) proj_pts.emplace_back(v[0], v[1]);
    auto proj_hull = convex_hull_2d(proj_pts);

    CHECK(vertex_set_gap(proj_hull, shadow_hull) <= 1e-7);
    CHECK(vertex_set_gap(shadow_hull, proj_hull) <= 1e-7);
  }
  CHECK(checked >= 40);
}

TEST_CASE("infeasible system yields no vertices") {
  RegionPolytope poly;
  poly.vars = {"R1"};
  poly.add({1}, -1.0);  // R1 <= -1 contradicts R1 >= 0
  auto vs = enumerate_vertices(poly);
  CHECK(vs.empty());
}

TEST_CASE("convex hull is counterclockwise and drops interior points") {
  std::vector<std::pair<double, double>> pts = {
      {0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0.0}, {1, 0}};
  auto hull = convex_hull_2d(pts);
  CHECK(hull.size() == 4);
  double area2 = 0;
  for (size_t i = 0; i < hull.size(); ++i) {
    auto [x1, y1] = hull[i];
    auto [x2, y2] = hull[(i + 1) % hull.size()];
    area2 += x1 * y2 - x2 * y1;
  }
  CHECK(area2 == doctest::Approx(2.0));  // positive signed area = CCW
}

TEST_CASE("pareto front keeps only maximal points") {
  auto front = pareto_front({{0.2, 0.5}, {0.1, 0.6}, {0.15, 0.55}, {0.2, 0.4}, {0.05, 0.3}});
  REQUIRE(front.size() == 3);
  CHECK(front[0] == std::pair<double, double>{0.1, 0.6});
  CHECK(front[1] == std::pair<double, double>{0.15, 0.55});
  CHECK(front[2] == std::pair<double, double>{0.2, 0.5});
  for (size_t i = 1; i < front.size(); ++i) {
    CHECK(front[i].first > front[i - 1].first);
    CHECK(front[i].second < front[i - 1].second);
  }
}

TEST_CASE("csv dump names variables") {
  RegionPolytope poly;
  poly.vars = {"R1", "R2"};
  poly.add({1, 0}, 0.25);
  std::string csv = polytope_csv(poly);
  CHECK(csv.find("R1,R2,const\n") == 0);
  CHECK(csv.find("0.25") != std::string::npos);
}

}  // TEST_SUITE
