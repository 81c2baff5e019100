#include "mawc/frontier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "mawc/manifest.hpp"

namespace mawc {

namespace {

uint64_t ipow_u(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Deterministic kernel reading only the conditioning coordinates in `use`;
// `code` selects the map (mixed-radix digits over the read sub-domain).
Kernel det_from_code(const std::vector<int>& in_shape, const std::vector<int>& use,
                     int out, uint64_t code) {
  return Kernel::deterministic(in_shape, out, [&](const std::vector<int>& ix) {
    uint64_t r = 0;
    for (int u : use) r = r * (uint64_t)in_shape[(size_t)u] + (uint64_t)ix[(size_t)u];
    return (int)((code / ipow_u((uint64_t)out, (int)r)) % (uint64_t)out);
  });
}

uint64_t det_count(const std::vector<int>& in_shape, const std::vector<int>& use, int out) {
  double cells = 1;
  for (int u : use) cells *= in_shape[(size_t)u];
  double total = std::pow((double)out, cells);
  return total > 1e15 ? (uint64_t)1 << 62 : (uint64_t)llround(total);
}

// Grid + anchor values for one binary-pmf parameter.
std::vector<double> param_values(const SearchConfig& cfg, bool with_grid) {
  std::vector<double> vals;
  if (with_grid) {
    int steps = std::max(1, (int)llround(1.0 / cfg.grid_step));
    for (int i = 0; i <= steps; ++i) vals.push_back((double)i / steps);
  } else {
    vals.push_back(0.5);
  }
  for (double a : cfg.anchors) vals.push_back(a);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end(),
                         [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
             vals.end());
  return vals;
}

std::vector<Pmf> pmf_list(int k, const SearchConfig& cfg, bool with_grid) {
  std::vector<Pmf> out;
  if (k <= 1) {
    out.push_back(Pmf::point(1, 0));
    return out;
  }
  if (k == 2) {
    for (double a : param_values(cfg, with_grid)) out.push_back(Pmf({1 - a, a}));
    return out;
  }
  // Larger alphabets: simplex grid, auto-coarsened to stay enumerable.
  int steps = std::max(1, (int)llround(1.0 / cfg.grid_step));
  auto count = [k](int st) {
    double c = 1;
    for (int i = 1; i < k; ++i) c *= (double)(st + i) / i;
    return c;
  };
  while (steps > 1 && count(steps) > 300) steps /= 2;
  std::vector<int> comp((size_t)k, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      comp[(size_t)pos] = left;
      std::vector<double> v((size_t)k);
      for (int i = 0; i < k; ++i) v[(size_t)i] = (double)comp[(size_t)i] / steps;
      out.push_back(Pmf(std::move(v)));
      return;
    }
    for (int t = 0; t <= left; ++t) {
      comp[(size_t)pos] = t;
      rec(pos + 1, left - t);
    }
  };
  rec(0, steps);
  return out;
}

std::string fmt_p(const Pmf& m) {
  if (m.size() == 1) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", m.p.back());
  return buf;
}

// The search walks a family-specific plan and hands every candidate
// factorization to the sink; the sink returns false to stop early.
using Sink = std::function<bool(const FactoredJoint&, const std::string&)>;

bool plan_scheme2_like(const SdMawc& ch, const SearchConfig& cfg, bool& truncated,
                       const Sink& sink) {
  int n1 = cfg.aux_u1 ? cfg.aux_u1 : 2;
  int n2 = cfg.aux_u2 ? cfg.aux_u2 : 2;
  auto p1s = pmf_list(n1, cfg, true);
  auto p2s = pmf_list(n2, cfg, true);
  uint64_t c1 = det_count({n1, ch.s}, {0, 1}, ch.x1);
  uint64_t c2 = det_count({n2, ch.s}, {0, 1}, ch.x2);
  if (c1 > (uint64_t)cfg.det_cap) { c1 = (uint64_t)cfg.det_cap; truncated = true; }
  if (c2 > (uint64_t)cfg.det_cap) { c2 = (uint64_t)cfg.det_cap; truncated = true; }
  char prov[128];
  for (uint64_t f1 = 0; f1 < c1; ++f1) {
    Kernel k1 = det_from_code({n1, ch.s}, {0, 1}, ch.x1, f1);
    for (uint64_t f2 = 0; f2 < c2; ++f2) {
      Kernel k2 = det_from_code({n2, ch.s}, {0, 1}, ch.x2, f2);
      for (const Pmf& a : p1s)
        for (const Pmf& b : p2s) {
          FactoredJoint fj = scheme2_joint(ch, a, b, k1, k2);
          std::snprintf(prov, sizeof prov, "u1=%s;u2=%s;f1=%llu;f2=%llu",
                        fmt_p(a).c_str(), fmt_p(b).c_str(),
                        (unsigned long long)f1, (unsigned long long)f2);
          if (!sink(fj, prov)) return false;
        }
    }
  }
  return true;
}

bool plan_scheme1_like(const SdMawc& ch, const SearchConfig& cfg, bool& truncated,
                       const Sink& sink) {
  // State-description choices: trivial, identity, and (binary state) noisy copies.
  std::vector<std::pair<std::string, Kernel>> vs;
  int want_v = cfg.aux_v;
  if (want_v == 0 || want_v == 1)
    vs.emplace_back("-", Kernel::tied({ch.s}, Pmf::point(1, 0)));
  if (want_v == 0 || want_v == ch.s) {
    vs.emplace_back("s", Kernel::deterministic({ch.s}, ch.s,
                                               [](const std::vector<int>& ix) { return ix[0]; }));
    if (ch.s == 2)
      for (double e : {0.1, 0.25}) {
        Kernel nz;
        nz.in_shape = {2};
        nz.out = 2;
        nz.p = {1 - e, e, e, 1 - e};
        char nm[16];
        std::snprintf(nm, sizeof nm, "n%g", e);
        vs.emplace_back(nm, std::move(nz));
      }
  }
  if (vs.empty())
    throw validation_error("search: unsupported state-description alphabet size");

  int nu = cfg.aux_u ? cfg.aux_u : 2;
  std::vector<Pmf> us = pmf_list(1, cfg, false);
  if (nu > 1) {
    auto more = pmf_list(nu, cfg, false);  // anchors only: the common layer is coarse
    us.insert(us.end(), more.begin(), more.end());
  }
  int n1 = cfg.aux_u1 ? cfg.aux_u1 : 2;
  int n2 = cfg.aux_u2 ? cfg.aux_u2 : 2;
  auto p1s = pmf_list(n1, cfg, false);
  std::vector<Pmf> p2s = pmf_list(1, cfg, false);  // trivial second layer first
  if (n2 > 1) {
    auto more = pmf_list(n2, cfg, false);
    p2s.insert(p2s.end(), more.begin(), more.end());
  }

  char prov[160];
  for (const auto& [vname, pv] : vs) {
    for (const Pmf& pu : us) {
      int u = pu.size();
      for (const Pmf& pa : p1s) {
        int u1 = pa.size();
        Kernel pu1 = Kernel::tied({u}, pa);
        uint64_t c1 = det_count({u, u1, ch.s}, {1, 2}, ch.x1);
        if (c1 > (uint64_t)cfg.det_cap) { c1 = (uint64_t)cfg.det_cap; truncated = true; }
        for (const Pmf& pb : p2s) {
          int u2 = pb.size();
          Kernel pu2 = Kernel::tied({u}, pb);
          // Sender 2 reads (u, u2) when a second layer exists, else (u, s):
          // the common layer doubles as its codeword, the state as fallback.
          std::vector<int> use2 = u2 > 1 ? std::vector<int>{0, 1} : std::vector<int>{0, 2};
          uint64_t c2 = det_count({u, u2, ch.s}, use2, ch.x2);
          if (c2 > (uint64_t)cfg.det_cap) { c2 = (uint64_t)cfg.det_cap; truncated = true; }
          for (uint64_t f1 = 0; f1 < c1; ++f1) {
            Kernel k1 = det_from_code({u, u1, ch.s}, {1, 2}, ch.x1, f1);
            for (uint64_t f2 = 0; f2 < c2; ++f2) {
              Kernel k2 = det_from_code({u, u2, ch.s}, use2, ch.x2, f2);
              FactoredJoint fj = scheme1_joint(ch, pv, pu, pu1, pu2, k1, k2);
              std::snprintf(prov, sizeof prov, "v=%s;u=%s;u1=%s;u2=%s;f1=%llu;f2=%llu",
                            vname.c_str(), fmt_p(pu).c_str(), fmt_p(pa).c_str(),
                            fmt_p(pb).c_str(), (unsigned long long)f1,
                            (unsigned long long)f2);
              if (!sink(fj, prov)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

bool plan_outer(const SdMawc& ch, const SearchConfig& cfg, bool& truncated,
                const Sink& sink) {
  int nu = cfg.aux_u ? cfg.aux_u : 1;
  int n1 = cfg.aux_u1 ? cfg.aux_u1 : 2;
  int n2 = cfg.aux_u2 ? cfg.aux_u2 : 2;
  int joint = nu * n1 * n2;
  // Joint auxiliary P(u,u1,u2|s): products of per-axis pmfs (state-free) plus
  // all deterministic maps s -> (u,u1,u2).
  std::vector<std::pair<std::string, Kernel>> primers;
  auto us = pmf_list(nu, cfg, false);
  auto a1s = pmf_list(n1, cfg, false);
  auto a2s = pmf_list(n2, cfg, false);
  for (const Pmf& pu : us)
    for (const Pmf& a : a1s)
      for (const Pmf& b : a2s) {
        Pmf prod;
        prod.p.reserve((size_t)joint);
        for (int iu = 0; iu < nu; ++iu)
          for (int i1 = 0; i1 < n1; ++i1)
            for (int i2 = 0; i2 < n2; ++i2)
              prod.p.push_back(pu[iu] * a[i1] * b[i2]);
        primers.emplace_back("p" + fmt_p(pu) + "," + fmt_p(a) + "," + fmt_p(b),
                             Kernel::tied({ch.s}, prod));
      }
  uint64_t dmaps = det_count({ch.s}, {0}, joint);
  if (dmaps > (uint64_t)cfg.det_cap) { dmaps = (uint64_t)cfg.det_cap; truncated = true; }
  for (uint64_t m = 0; m < dmaps; ++m) {
    char nm[32];
    std::snprintf(nm, sizeof nm, "d%llu", (unsigned long long)m);
    primers.emplace_back(nm, det_from_code({ch.s}, {0}, joint, m));
  }

  auto strat_codes = [&cfg, &truncated](uint64_t full) {
    if (full > (uint64_t)cfg.det_cap) { full = (uint64_t)cfg.det_cap; truncated = true; }
    return full;
  };
  uint64_t c1a = strat_codes(det_count({nu, n1, ch.s}, {1, 2}, ch.x1));
  uint64_t c1b = strat_codes(det_count({nu, n1, ch.s}, {0, 2}, ch.x1));
  uint64_t c2a = strat_codes(det_count({nu, n2, ch.s}, {1, 2}, ch.x2));
  uint64_t c2b = strat_codes(det_count({nu, n2, ch.s}, {0, 2}, ch.x2));
  char prov[160];
  for (const auto& [pname, paux] : primers) {
    for (uint64_t f1 = 0; f1 < c1a + c1b; ++f1) {
      bool alt1 = f1 >= c1a;
      Kernel k1 = det_from_code({nu, n1, ch.s}, alt1 ? std::vector<int>{0, 2} : std::vector<int>{1, 2},
                                ch.x1, alt1 ? f1 - c1a : f1);
      for (uint64_t f2 = 0; f2 < c2a + c2b; ++f2) {
        bool alt2 = f2 >= c2a;
        Kernel k2 = det_from_code({nu, n2, ch.s}, alt2 ? std::vector<int>{0, 2} : std::vector<int>{1, 2},
                                  ch.x2, alt2 ? f2 - c2a : f2);
        FactoredJoint fj = outer_joint(ch, paux, k1, k2);
        std::snprintf(prov, sizeof prov, "aux=%s;f1=%llu;f2=%llu", pname.c_str(),
                      (unsigned long long)f1, (unsigned long long)f2);
        if (!sink(fj, prov)) return false;
      }
    }
  }
  return true;
}

bool plan_one_side(const SdMawc& ch, const SearchConfig& cfg, bool& truncated,
                   const Sink& sink) {
  int nu = cfg.aux_u ? cfg.aux_u : 2;
  auto us = pmf_list(nu, cfg, true);
  uint64_t c1 = det_count({nu, ch.s}, {0, 1}, ch.x1);
  uint64_t c2 = det_count({nu}, {0}, ch.x2);
  if (c1 > (uint64_t)cfg.det_cap) { c1 = (uint64_t)cfg.det_cap; truncated = true; }
  if (c2 > (uint64_t)cfg.det_cap) { c2 = (uint64_t)cfg.det_cap; truncated = true; }
  char prov[128];
  for (const Pmf& pu : us) {
    for (uint64_t f1 = 0; f1 < c1; ++f1) {
      Kernel k1 = det_from_code({nu, ch.s}, {0, 1}, ch.x1, f1);
      for (uint64_t f2 = 0; f2 < c2; ++f2) {
        Kernel k2 = det_from_code({nu}, {0}, ch.x2, f2);
        FactoredJoint fj = one_side_joint(ch, pu, k1, k2);
        std::snprintf(prov, sizeof prov, "u=%s;f1=%llu;f2=%llu", fmt_p(pu).c_str(),
                      (unsigned long long)f1, (unsigned long long)f2);
        if (!sink(fj, prov)) return false;
      }
    }
    // Stochastic first-input strategies: codeword letter flipped with a gridded
    // probability, state ignored (binary alphabets only).
    if (nu == 2 && ch.x1 == 2) {
      for (double al : param_values(cfg, true)) {
        Kernel k1;
        k1.in_shape = {nu, ch.s};
        k1.out = 2;
        k1.p.clear();
        for (int uu = 0; uu < nu; ++uu)
          for (int ss = 0; ss < ch.s; ++ss) {
            (void)ss;
            double p1 = uu == 0 ? al : 1 - al;  // P{x1=1 | u}
            k1.p.push_back(1 - p1);
            k1.p.push_back(p1);
          }
        for (uint64_t f2 = 0; f2 < c2; ++f2) {
          Kernel k2 = det_from_code({nu}, {0}, ch.x2, f2);
          FactoredJoint fj = one_side_joint(ch, pu, k1, k2);
          std::snprintf(prov, sizeof prov, "u=%s;flip=%g;f2=%llu", fmt_p(pu).c_str(),
                        al, (unsigned long long)f2);
          if (!sink(fj, prov)) return false;
        }
      }
    }
  }
  return true;
}

struct FamilySpec {
  std::vector<Variant> variants;
  int plan;  // 0 scheme2-like, 1 scheme1-like, 2 outer, 3 one-side
};

const std::map<std::string, FamilySpec>& family_table() {
  static const std::map<std::string, FamilySpec> t = {
      {"theorem1", {{Variant::R01, Variant::R02, Variant::R03}, 0}},
      {"scheme1", {{Variant::R11, Variant::R12, Variant::R13}, 1}},
      {"scheme2", {{Variant::R21, Variant::R22, Variant::R23}, 0}},
      {"scheme3", {{Variant::R31, Variant::R32, Variant::R33}, 1}},
      {"prior", {{Variant::PW_R1, Variant::PW_R2}, 0}},
      {"outer", {{Variant::OUTER}, 2}},
      {"dmset",
       {{Variant::D11, Variant::D12, Variant::D21, Variant::D22, Variant::D3}, 1}},
      {"D11", {{Variant::D11}, 1}},
      {"D12", {{Variant::D12}, 1}},
      {"D21", {{Variant::D21}, 1}},
      {"D22", {{Variant::D22}, 1}},
      {"D3", {{Variant::D3}, 1}},
      {"ocsi-in", {{Variant::OCSI_IN}, 3}},
      {"ocsi-out", {{Variant::OCSI_OUT}, 3}},
      {"csi-ed", {{Variant::CSI_ED}, 3}},
  };
  return t;
}

uint64_t tensor_hash(const JointTensor& j) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (int d : j.dim) mix((uint64_t)d);
  for (double x : j.p) mix((uint64_t)(int64_t)llround(x * 1e12));
  return h;
}

struct PointTag {
  uint64_t ordinal;
  std::string label;  // "variant|provenance"
};

struct Collected {
  std::map<std::pair<int64_t, int64_t>, PointTag> pts;
  double mx1 = 0, mx2 = 0;
  bool stopped = false;
};

std::pair<int64_t, int64_t> qkey(double a, double b) {
  return {(int64_t)llround(a * 1e9), (int64_t)llround(b * 1e9)};
}

void run_plan(const SdMawc& ch, const FamilySpec& fam, const SearchConfig& cfg,
              int worker, int nworkers,
              std::chrono::steady_clock::time_point deadline, bool use_deadline,
              Collected& out, bool& truncated) {
  uint64_t ordinal = 0;
  std::unordered_set<uint64_t> seen;
  Sink sink = [&](const FactoredJoint& fj, const std::string& prov) -> bool {
    uint64_t my = ordinal++;
    if ((int)(my % (uint64_t)nworkers) != worker) return true;
    if (use_deadline && (my & 0x3f) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      out.stopped = true;
      return false;
    }
    JointTensor j = fj.assemble();
    if (!seen.insert(tensor_hash(j)).second) return true;
    EntropyCache ec(j);
    for (Variant var : fam.variants) {
      RegionPolytope region = build_region(ec, var);
      RegionPolytope flat = project(region, {region.vars[0], region.vars[1]});
      if (flat.empty_flag) continue;
      for (const auto& vtx : enumerate_vertices(flat, 1e-9)) {
        double a = std::max(0.0, vtx[0]);
        double b = std::max(0.0, vtx[1]);
        out.mx1 = std::max(out.mx1, a);
        out.mx2 = std::max(out.mx2, b);
        auto key = qkey(a, b);
        auto it = out.pts.find(key);
        if (it == out.pts.end())
          out.pts.emplace(key, PointTag{my, std::string(variant_name(var)) + "|" + prov});
        else if (my < it->second.ordinal)
          it->second = PointTag{my, std::string(variant_name(var)) + "|" + prov};
      }
    }
    return true;
  };
  bool finished = true;
  switch (fam.plan) {
    case 0: finished = plan_scheme2_like(ch, cfg, truncated, sink); break;
    case 1: finished = plan_scheme1_like(ch, cfg, truncated, sink); break;
    case 2: finished = plan_outer(ch, cfg, truncated, sink); break;
    case 3: finished = plan_one_side(ch, cfg, truncated, sink); break;
  }
  (void)finished;
}

}  // namespace

bool known_family(const std::string& family) {
  return family_table().count(family) > 0;
}

Frontier search_frontier(const SdMawc& ch, const std::string& family,
                         const SearchConfig& cfg) {
  auto it = family_table().find(family);
  if (it == family_table().end())
    throw validation_error("search: unknown region family '" + family + "'");
  const FamilySpec& fam = it->second;
  if (family == "theorem1" && ch.s != 1)
    throw validation_error("search: the stateless family needs |S| = 1");
  ch.validate();

  int nworkers = std::max(1, cfg.threads);
  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(cfg.budget_s));
  bool use_deadline = cfg.budget_s > 0;

  std::vector<Collected> parts((size_t)nworkers);
  std::vector<bool> trunc((size_t)nworkers, false);
  if (nworkers == 1) {
    bool t = false;
    run_plan(ch, fam, cfg, 0, 1, deadline, use_deadline, parts[0], t);
    trunc[0] = t;
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < nworkers; ++w)
      threads.emplace_back([&, w] {
        bool t = false;
        run_plan(ch, fam, cfg, w, nworkers, deadline, use_deadline, parts[(size_t)w], t);
        trunc[(size_t)w] = t;
      });
    for (auto& th : threads) th.join();
  }

  Frontier f;
  std::map<std::pair<int64_t, int64_t>, PointTag> merged;
  for (auto& part : parts) {
    f.partial = f.partial || part.stopped;
    f.max_r1 = std::max(f.max_r1, part.mx1);
    f.max_r2 = std::max(f.max_r2, part.mx2);
    for (auto& [k, v] : part.pts) {
      auto ex = merged.find(k);
      if (ex == merged.end() || v.ordinal < ex->second.ordinal) merged[k] = v;
    }
  }
  for (bool t : trunc) f.partial = f.partial || t;

  std::vector<std::pair<double, double>> cloud;
  cloud.reserve(merged.size());
  for (auto& [k, v] : merged)
    cloud.emplace_back((double)k.first * 1e-9, (double)k.second * 1e-9);
  auto hull = cloud.size() > 2 ? convex_hull_2d(cloud) : cloud;
  auto front = pareto_front(hull);

  auto lookup = [&merged](double a, double b) -> const PointTag* {
    auto base = qkey(a, b);
    for (int da = -1; da <= 1; ++da)
      for (int db = -1; db <= 1; ++db) {
        auto itp = merged.find({base.first + da, base.second + db});
        if (itp != merged.end()) return &itp->second;
      }
    return nullptr;
  };
  for (auto& [a, b] : front) {
    FrontierPoint fp;
    fp.r1 = a;
    fp.r2 = b;
    if (const PointTag* tag = lookup(a, b)) {
      auto bar = tag->label.find('|');
      fp.region = tag->label.substr(0, bar);
      fp.provenance = tag->label.substr(bar + 1);
    } else {
      fp.region = "merged";
      fp.provenance = "time-sharing";
    }
    f.points.push_back(std::move(fp));
  }
  return f;
}

std::string frontier_csv(const Frontier& f, int digits) {
  std::ostringstream os;
  os << "R1,R2,region,provenance\n";
  for (const auto& p : f.points)
    os << format_sig(p.r1, digits) << ',' << format_sig(p.r2, digits) << ','
       << csv_field(p.region) << ',' << csv_field(p.provenance) << '\n';
  return os.str();
}

}  // namespace mawc
