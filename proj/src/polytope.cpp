#include "mawc/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mawc/base.hpp"
#include "mawc/manifest.hpp"

namespace mawc {

namespace {

constexpr double kZero = 1e-12;  // coefficient treated as exactly zero

struct Row {
  std::vector<double> a;
  double b;
};

// Scale so max|coeff| == 1; returns false for an all-zero coefficient row.
bool normalize_row(Row& r) {
  double scale = 0;
  for (double c : r.a) scale = std::max(scale, std::fabs(c));
  if (scale <= kZero) return false;
  for (double& c : r.a) c /= scale;
  r.b /= scale;
  return true;
}

// Keeps one representative per coefficient direction (the smallest rhs).
void dedupe(std::vector<Row>& rows) {
  std::vector<Row> out;
  for (auto& r : rows) {
    bool merged = false;
    for (auto& o : out) {
      bool same = true;
      for (size_t i = 0; i < r.a.size() && same; ++i)
        if (std::fabs(r.a[i] - o.a[i]) > 1e-9) same = false;
      if (same) {
        o.b = std::min(o.b, r.b);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  rows.swap(out);
}

// Solve M x = r by Gaussian elimination with partial pivoting.
bool solve_square(std::vector<std::vector<double>> M, std::vector<double> r,
                  std::vector<double>& x) {
  int d = (int)r.size();
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int i = col + 1; i < d; ++i)
      if (std::fabs(M[i][col]) > std::fabs(M[piv][col])) piv = i;
    if (std::fabs(M[piv][col]) < 1e-11) return false;
    std::swap(M[piv], M[col]);
    std::swap(r[piv], r[col]);
    for (int i = col + 1; i < d; ++i) {
      double f = M[i][col] / M[col][col];
      if (f == 0) continue;
      for (int k = col; k < d; ++k) M[i][k] -= f * M[col][k];
      r[i] -= f * r[col];
    }
  }
  x.assign(d, 0.0);
  for (int i = d - 1; i >= 0; --i) {
    double s = r[i];
    for (int k = i + 1; k < d; ++k) s -= M[i][k] * x[k];
    x[i] = s / M[i][i];
  }
  return true;
}

// All rows of the system including the implied nonnegativity facets.
std::vector<Row> full_rows(const RegionPolytope& poly) {
  std::vector<Row> rows;
  for (size_t i = 0; i < poly.A.size(); ++i) rows.push_back({poly.A[i], poly.b[i]});
  for (int i = 0; i < poly.dim(); ++i) {
    Row ax{std::vector<double>((size_t)poly.dim(), 0.0), 0.0};
    ax.a[(size_t)i] = -1.0;
    rows.push_back(std::move(ax));
  }
  return rows;
}

// Visit every d-subset of [0, m); returns false from the visitor to stop.
template <class F>
void for_each_subset(int m, int d, F&& visit) {
  if (d > m) return;
  std::vector<int> pick(d);
  for (int i = 0; i < d; ++i) pick[i] = i;
  for (;;) {
    visit(pick);
    int i = d - 1;
    while (i >= 0 && pick[i] == m - d + i) --i;
    if (i < 0) return;
    ++pick[i];
    for (int k = i + 1; k < d; ++k) pick[k] = pick[k - 1] + 1;
  }
}

bool point_feasible(const std::vector<Row>& rows, const std::vector<double>& x,
                    double tol) {
  for (const auto& r : rows) {
    double lhs = 0;
    for (size_t i = 0; i < x.size(); ++i) lhs += r.a[i] * x[i];
    if (lhs > r.b + tol) return false;
  }
  return true;
}

// A nonzero direction d with A d <= 0, d >= 0 witnesses unboundedness.
bool has_recession_ray(const std::vector<Row>& rows, int dim) {
  std::vector<std::vector<double>> cands;
  for (int i = 0; i < dim; ++i) {
    std::vector<double> e((size_t)dim, 0.0);
    e[(size_t)i] = 1.0;
    cands.push_back(std::move(e));
  }
  // Extreme rays lie on dim-1 of the cone's hyperplanes; solve each subset's
  // null direction by fixing one coordinate to +-1.
  if (dim >= 2) {
    for_each_subset((int)rows.size(), dim - 1, [&](const std::vector<int>& pick) {
      for (int fixed = 0; fixed < dim; ++fixed) {
        for (double sign : {1.0, -1.0}) {
          std::vector<std::vector<double>> M;
          std::vector<double> r;
          for (int pi : pick) {
            M.push_back(rows[(size_t)pi].a);
            r.push_back(0.0);
          }
          std::vector<double> fixrow((size_t)dim, 0.0);
          fixrow[(size_t)fixed] = 1.0;
          M.push_back(std::move(fixrow));
          r.push_back(sign);
          std::vector<double> d;
          if (solve_square(std::move(M), std::move(r), d)) cands.push_back(std::move(d));
        }
      }
    });
  }
  for (auto& d : cands) {
    double mx = 0;
    for (double c : d) mx = std::max(mx, std::fabs(c));
    if (mx <= 1e-9) continue;
    for (double& c : d) c /= mx;
    bool ok = true;
    for (double c : d)
      if (c < -1e-9) { ok = false; break; }
    if (!ok) continue;
    for (const auto& r : rows) {
      double lhs = 0;
      for (int i = 0; i < dim; ++i) lhs += r.a[(size_t)i] * d[(size_t)i];
      if (lhs > 1e-9) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

void RegionPolytope::add(std::vector<double> coeff, double rhs) {
  if ((int)coeff.size() != dim())
    throw validation_error("polytope: coefficient arity mismatch");
  A.push_back(std::move(coeff));
  b.push_back(rhs);
}

std::vector<std::vector<double>> enumerate_vertices(const RegionPolytope& poly,
                                                    double tol) {
  if (poly.empty_flag) return {};
  int d = poly.dim();
  if (d == 0) return {};
  std::vector<Row> rows = full_rows(poly);
  int m = (int)rows.size();
  if (m > 48) throw budget_error("vertex enumeration: too many inequalities");
  std::vector<std::vector<double>> verts;
  for_each_subset(m, d, [&](const std::vector<int>& pick) {
    std::vector<std::vector<double>> M;
    std::vector<double> r;
    for (int pi : pick) {
      M.push_back(rows[(size_t)pi].a);
      r.push_back(rows[(size_t)pi].b);
    }
    std::vector<double> x;
    if (!solve_square(std::move(M), std::move(r), x)) return;
    for (double& c : x)
      if (std::fabs(c) < 1e-13) c = 0.0;
    if (!point_feasible(rows, x, tol)) return;
    for (const auto& v : verts) {
      double dist = 0;
      for (int i = 0; i < d; ++i) dist = std::max(dist, std::fabs(v[(size_t)i] - x[(size_t)i]));
      if (dist <= tol) return;
    }
    verts.push_back(std::move(x));
  });
  return verts;
}

RegionPolytope project(const RegionPolytope& poly, const std::vector<std::string>& keep) {
  std::vector<int> kidx;
  for (const auto& name : keep) {
    auto it = std::find(poly.vars.begin(), poly.vars.end(), name);
    if (it == poly.vars.end())
      throw validation_error("project: unknown variable " + name);
    int idx = (int)(it - poly.vars.begin());
    if (std::find(kidx.begin(), kidx.end(), idx) != kidx.end())
      throw validation_error("project: duplicate variable " + name);
    kidx.push_back(idx);
  }
  RegionPolytope out;
  out.vars = keep;
  if (poly.empty_flag) {
    out.empty_flag = true;
    return out;
  }

  // Each row remembers which original inequalities combined into it (the
  // implied lower bounds of eliminated variables count as originals too).
  // After k eliminations any row derived from more than k+1 originals is
  // redundant (Chernikov / Imbert acceleration), which keeps the row count
  // polynomial on dense systems. With > 64 originals the mask would overflow,
  // so the pruning rule is simply disabled there.
  struct HRow {
    Row r;
    uint64_t hist;
  };
  size_t eliminated_total = 0;
  for (int j = 0; j < poly.dim(); ++j)
    if (std::find(kidx.begin(), kidx.end(), j) == kidx.end()) ++eliminated_total;
  size_t origin_count = poly.A.size() + eliminated_total;
  bool prune_by_history = origin_count <= 64;
  size_t next_origin = 0;

  std::vector<HRow> rows;
  for (size_t i = 0; i < poly.A.size(); ++i) {
    uint64_t h = prune_by_history ? (uint64_t)1 << next_origin++ : 0;
    rows.push_back({{poly.A[i], poly.b[i]}, h});
  }

  auto dedupe_h = [](std::vector<HRow>& rs) {
    std::vector<HRow> out;
    for (auto& r : rs) {
      bool merged = false;
      for (auto& o : out) {
        bool same = true;
        for (size_t i = 0; i < r.r.a.size() && same; ++i)
          if (std::fabs(r.r.a[i] - o.r.a[i]) > 1e-9) same = false;
        if (same) {
          if (r.r.b < o.r.b - 1e-12 ||
              (std::fabs(r.r.b - o.r.b) <= 1e-12 &&
               std::popcount(r.hist) < std::popcount(o.hist)))
            o = r;
          merged = true;
          break;
        }
      }
      if (!merged) out.push_back(r);
    }
    rs.swap(out);
  };

  bool empty = false;
  int elim_done = 0;
  for (int j = 0; j < poly.dim() && !empty; ++j) {
    if (std::find(kidx.begin(), kidx.end(), j) != kidx.end()) continue;
    ++elim_done;
    // Implied lower bound of the variable being eliminated.
    HRow lower{{std::vector<double>((size_t)poly.dim(), 0.0), 0.0},
               prune_by_history ? (uint64_t)1 << next_origin++ : 0};
    lower.r.a[(size_t)j] = -1.0;
    rows.push_back(std::move(lower));

    std::vector<HRow> zero, pos, neg;
    for (auto& r : rows) {
      double c = r.r.a[(size_t)j];
      if (std::fabs(c) <= kZero) {
        r.r.a[(size_t)j] = 0.0;
        zero.push_back(std::move(r));
      } else if (c > 0) {
        pos.push_back(std::move(r));
      } else {
        neg.push_back(std::move(r));
      }
    }
    std::vector<HRow> next = std::move(zero);
    for (const auto& up : pos) {
      for (const auto& lo : neg) {
        uint64_t h = up.hist | lo.hist;
        if (prune_by_history && std::popcount(h) > elim_done + 1) continue;
        Row comb{std::vector<double>((size_t)poly.dim(), 0.0), 0.0};
        double wu = -lo.r.a[(size_t)j];  // > 0
        double wl = up.r.a[(size_t)j];   // > 0
        for (size_t i = 0; i < comb.a.size(); ++i)
          comb.a[i] = wu * up.r.a[i] + wl * lo.r.a[i];
        comb.a[(size_t)j] = 0.0;
        comb.b = wu * up.r.b + wl * lo.r.b;
        if (!normalize_row(comb)) {
          if (comb.b < -1e-9) { empty = true; break; }
          continue;  // trivially true
        }
        next.push_back({std::move(comb), h});
      }
      if (empty) break;
    }
    if (empty) break;
    dedupe_h(next);
    if (next.size() > 20000)
      throw budget_error("projection: intermediate system too large");
    rows = std::move(next);
  }
  if (empty) {
    out.empty_flag = true;
    out.add(std::vector<double>((size_t)out.dim(), 0.0), -1.0);
    return out;
  }

  // Restrict surviving rows to the kept columns (others are zero by now).
  std::vector<Row> low;
  for (auto& hr : rows) {
    Row lr{std::vector<double>(kidx.size(), 0.0), hr.r.b};
    for (size_t i = 0; i < kidx.size(); ++i) lr.a[i] = hr.r.a[(size_t)kidx[i]];
    if (!normalize_row(lr)) {
      if (lr.b < -1e-9) {
        out.empty_flag = true;
        out.add(std::vector<double>((size_t)out.dim(), 0.0), -1.0);
        return out;
      }
      continue;
    }
    low.push_back(std::move(lr));
  }
  dedupe(low);
  for (auto& r : low) out.add(r.a, r.b);

  // Final redundancy pass: in a pointed region every needed facet touches a
  // vertex. Skipped when enumeration would be disproportionate.
  if (out.dim() >= 1 && out.dim() <= 3 && out.A.size() + out.vars.size() <= 48) {
    auto verts = enumerate_vertices(out, 1e-9);
    if (!verts.empty()) {
      std::vector<Row> kept;
      for (size_t ri = 0; ri < out.A.size(); ++ri) {
        bool active = false;
        for (const auto& v : verts) {
          double lhs = 0;
          for (size_t i = 0; i < v.size(); ++i) lhs += out.A[ri][i] * v[i];
          if (std::fabs(lhs - out.b[ri]) <= 1e-7) { active = true; break; }
        }
        if (active) kept.push_back({out.A[ri], out.b[ri]});
      }
      out.A.clear();
      out.b.clear();
      for (auto& r : kept) out.add(r.a, r.b);
    } else if (!out.A.empty()) {
      // No vertex despite x >= 0: the system is infeasible.
      out.empty_flag = true;
    }
    if (!out.empty_flag) out.unbounded_flag = has_recession_ray(full_rows(out), out.dim());
  }
  return out;
}

std::vector<std::pair<double, double>> convex_hull_2d(
    std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return std::fabs(a.first - b.first) <= 1e-12 &&
                                 std::fabs(a.second - b.second) <= 1e-12;
                        }),
            pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const std::pair<double, double>& o, const std::pair<double, double>& a,
                  const std::pair<double, double>& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  size_t k = 0;
  for (const auto& p : pts) {  // lower chain
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
    hull[k++] = p;
  }
  size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {  // upper chain
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 1e-12) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::pair<double, double>> pareto_front(
    std::vector<std::pair<double, double>> pts, double merge_tol) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  std::vector<std::pair<double, double>> front;
  double best2 = -1e300;
  for (const auto& p : pts) {
    if (p.second > best2 + merge_tol) {
      if (!front.empty() && std::fabs(front.back().first - p.first) <= merge_tol) {
        // Same abscissa within tolerance: keep the higher ordinate only.
        front.back().second = p.second;
      } else {
        front.push_back(p);
      }
      best2 = p.second;
    }
  }
  std::reverse(front.begin(), front.end());  // R1 ascending, R2 descending
  return front;
}

std::string polytope_csv(const RegionPolytope& poly, int digits) {
  std::ostringstream os;
  for (const auto& v : poly.vars) os << csv_field(v) << ',';
  os << "const\n";
  for (size_t i = 0; i < poly.A.size(); ++i) {
    for (double c : poly.A[i]) os << format_sig(c, digits) << ',';
    os << format_sig(poly.b[i], digits) << '\n';
  }
  return os.str();
}

}  // namespace mawc
