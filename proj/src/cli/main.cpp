// Command-line front end: rate-region frontiers, worked channel examples,
// block-Markov coding simulations, parameter sweeps, channel-file validation.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mawc/channel.hpp"
#include "mawc/factored.hpp"
#include "mawc/frontier.hpp"
#include "mawc/info.hpp"
#include "mawc/joint.hpp"
#include "mawc/manifest.hpp"
#include "mawc/measures.hpp"
#include "mawc/polytope.hpp"
#include "mawc/regions.hpp"
#include "mawc/scheme1.hpp"
#include "mawc/scheme2.hpp"

namespace {

using namespace mawc;

// Bad command lines and bad flag combinations; distinct from validation_error
// (malformed data) so the exit codes stay separable: 1 usage, 2 validation,
// 3 budget/partial.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- outputs ---

// Collects every file a run writes plus its input digests, then drops a
// manifest next to the first output so the run can be replayed and checked
// byte-for-byte.
struct OutputSink {
  std::vector<std::string> argv;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<std::pair<std::string, std::string>> outputs;

  void note_input(const std::string& path) {
    inputs.emplace_back(path, sha256_file_hex(path));
  }
  void write(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write " + path);
    out << content;
    if (!out) throw validation_error("short write on " + path);
    outputs.emplace_back(path, sha256_hex(content));
  }
  void finish() {
    if (outputs.empty()) return;
    RunManifest m;
    m.argv = argv;
    m.seed = seed;
    m.inputs = inputs;
    m.outputs = outputs;
    std::string path = outputs.front().first + ".manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write " + path);
    out << m.to_json();
  }
};

// ---------------------------------------------------------------- channel ---

struct ChannelOpts {
  std::string file, builtin;
};

void add_channel_opts(CLI::App* cmd, ChannelOpts& c) {
  cmd->add_option("--channel", c.file, "channel file (sdmawc-v1 text format)");
  cmd->add_option("--builtin", c.builtin,
                  "builtin channel: switch:p=0.8:z=x1 | xor:p=0.3 | "
                  "state-repro:q=0.25:p=0.1");
}

SdMawc resolve_channel(const ChannelOpts& c, OutputSink& sink) {
  if (c.file.empty() == c.builtin.empty())
    throw usage_error("give exactly one of --channel / --builtin");
  if (!c.file.empty()) {
    sink.note_input(c.file);
    return load_channel_file(c.file);
  }
  return parse_builtin(c.builtin);
}

// ---------------------------------------------------------------- helpers ---

// Smallest right-hand side among rows whose coefficient vector matches
// `pattern`; +inf when no row matches.
double min_rhs(const RegionPolytope& poly, const std::vector<double>& pattern) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < poly.A.size(); ++i) {
    if (poly.A[i].size() != pattern.size()) continue;
    bool same = true;
    for (size_t j = 0; j < pattern.size(); ++j)
      if (std::fabs(poly.A[i][j] - pattern[j]) > 1e-12) {
        same = false;
        break;
      }
    if (same) best = std::min(best, poly.b[i]);
  }
  return best;
}

// One report line "label=value (target t) PASS|FAIL". Two-sided by default;
// one_sided accepts any value >= target - tol.
bool report(const std::string& label, double got, double target, double tol,
            bool one_sided = false) {
  bool ok = one_sided ? got >= target - tol : std::fabs(got - target) <= tol;
  std::cout << label << "=" << format_sig(got, 6) << " (target "
            << (one_sided ? ">= " : "") << format_sig(target, 6) << ") "
            << (ok ? "PASS" : "FAIL") << "\n";
  return ok;
}

void parse_aux_sizes(const std::string& spec, SearchConfig& sc) {
  if (spec.empty()) return;
  int v = 0, u = 0, u1 = 0, u2 = 0;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%d,%d,%d,%d%c", &v, &u, &u1, &u2, &extra) != 4)
    throw usage_error("--aux-sizes wants four comma-separated integers v,u,u1,u2");
  if (v < 0 || u < 0 || u1 < 0 || u2 < 0)
    throw usage_error("--aux-sizes entries must be nonnegative");
  sc.aux_v = v;
  sc.aux_u = u;
  sc.aux_u1 = u1;
  sc.aux_u2 = u2;
}

// ------------------------------------------------- example factorizations ---

// Degraded-message-set working point: the described layer copies the state,
// both inputs are independent literals U1=X1, U2=X2 with Pr{Xi=0} = pi0.
FactoredJoint ex2_joint(const SdMawc& ch, const Pmf& px1m, const Pmf& px2m) {
  Kernel pv_s = Kernel::deterministic(
      {ch.s}, ch.s, [](const std::vector<int>& ix) { return ix[0]; });
  Pmf pu = Pmf::point(1, 0);
  Kernel pu1 = Kernel::tied({1}, px1m);
  Kernel pu2 = Kernel::tied({1}, px2m);
  Kernel k1 = Kernel::deterministic(
      {1, 2, ch.s}, ch.x1, [](const std::vector<int>& ix) { return ix[1]; });
  Kernel k2 = Kernel::deterministic(
      {1, 2, ch.s}, ch.x2, [](const std::vector<int>& ix) { return ix[1]; });
  return scheme1_joint(ch, pv_s, pu, pu1, pu2, k1, k2);
}

struct Ex2Metrics {
  double r1_cap = 0, i_s_y = 0, sum_rate = 0, z_channel = 0;
};

Ex2Metrics ex2_metrics(double p, double p10, double p20) {
  SdMawc ch = make_switch_channel(p, Eavesdrop::X1);
  FactoredJoint fj =
      ex2_joint(ch, Pmf(std::vector<double>{p10, 1 - p10}),
                Pmf(std::vector<double>{p20, 1 - p20}));
  JointTensor jt = fj.assemble();
  EntropyCache ec(jt);
  RegionPolytope d = regions_degraded(fj, Variant::D12);
  Ex2Metrics m;
  m.r1_cap = min_rhs(d, {1, 0});
  m.sum_rate = min_rhs(d, {1, 1});
  m.i_s_y = ec.I(A_S, A_Y);
  // Private-rate ceiling with the other input pinned to 0: best literal input
  // law on a gridded strategy parameter.
  double best = 0;
  for (int i = 0; i <= 1000; ++i) {
    double t = i / 1000.0;
    FactoredJoint g = ex2_joint(ch, Pmf(std::vector<double>{t, 1 - t}),
                                Pmf(std::vector<double>{1.0, 0.0}));
    JointTensor gj = g.assemble();
    EntropyCache gc(gj);
    best = std::max(best, gc.I(A_U1, A_Y, A_U | A_U2));
  }
  m.z_channel = best;
  return m;
}

// State-reproducing channel working point: informed sender transmits
// X1 = U xor S xor X' with X' ~ Bern(alpha); the uninformed sender holds
// X2 = 1 so the product output copies X1.
FactoredJoint ex3_joint(const SdMawc& ch, double alpha) {
  Pmf pu = Pmf::uniform(2);
  std::vector<double> rows;
  for (int u = 0; u < 2; ++u)
    for (int s = 0; s < 2; ++s) {
      double p0 = (u ^ s) == 0 ? 1 - alpha : alpha;
      rows.push_back(p0);
      rows.push_back(1 - p0);
    }
  Kernel px1{{2, 2}, 2, rows};
  Kernel px2 =
      Kernel::deterministic({2}, 2, [](const std::vector<int>&) { return 1; });
  return one_side_joint(ch, pu, px1, px2);
}

// Vertices of {R1 <= a, R1 + R0 <= b, R1 >= 0, R0 >= 0} for hull building.
void push_region_vertices(std::vector<std::pair<double, double>>& pts, double a,
                          double b) {
  a = std::max(0.0, a);
  b = std::max(0.0, b);
  double x = std::min(a, b);
  pts.emplace_back(0.0, 0.0);
  pts.emplace_back(0.0, b);
  pts.emplace_back(x, b - x);
  pts.emplace_back(x, 0.0);
}

double segment_distance(std::pair<double, double> a, std::pair<double, double> b,
                        std::pair<double, double> p) {
  double vx = b.first - a.first, vy = b.second - a.second;
  double wx = p.first - a.first, wy = p.second - a.second;
  double vv = vx * vx + vy * vy;
  double t = vv > 0 ? std::clamp((wx * vx + wy * vy) / vv, 0.0, 1.0) : 0.0;
  double dx = wx - t * vx, dy = wy - t * vy;
  return std::sqrt(dx * dx + dy * dy);
}

// Largest distance by which any of `pts` falls outside the CCW hull.
double outside_gap(const std::vector<std::pair<double, double>>& hull,
                   const std::vector<std::pair<double, double>>& pts) {
  double worst = 0;
  for (const auto& p : pts) {
    if (hull.empty()) {
      worst = std::max(worst, std::hypot(p.first, p.second));
      continue;
    }
    if (hull.size() == 1) {
      worst = std::max(worst, std::hypot(p.first - hull[0].first,
                                         p.second - hull[0].second));
      continue;
    }
    bool inside = true;
    double dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < hull.size(); ++i) {
      auto a = hull[i], b = hull[(i + 1) % hull.size()];
      double cross = (b.first - a.first) * (p.second - a.second) -
                     (b.second - a.second) * (p.first - a.first);
      if (cross < -1e-12) inside = false;
      dist = std::min(dist, segment_distance(a, b, p));
    }
    if (!inside) worst = std::max(worst, dist);
  }
  return worst;
}

// ------------------------------------------------------ example commands ----

struct ExampleOpts {
  std::string name;
  double p = -1, q = -1, p1 = -1, p2 = -1, tol = -1;
  int grid = 16, digits = 6;
  std::string out;
  uint64_t seed = 0;
};

bool run_ex1_switch(const ExampleOpts& o, OutputSink& sink) {
  double p = o.p < 0 ? 0.8 : o.p;
  double tol = o.tol < 0 ? 1e-3 : o.tol;
  double hp = binary_entropy(p);
  double target = std::min(1 - p, 1 - hp);
  std::cout << "one_minus_p=" << format_sig(1 - p, 6)
            << " one_minus_h_p=" << format_sig(1 - hp, 6)
            << " r1_target=" << format_sig(target, 6) << "\n";
  SdMawc ch = make_switch_channel(p, Eavesdrop::X2);
  SearchConfig sc;
  sc.grid_step = 1.0 / o.grid;
  Frontier f1 = search_frontier(ch, "scheme1", sc);
  bool ok = report("scheme1_max_r1", f1.max_r1, target, tol, true);
  Frontier f2 = search_frontier(ch, "scheme2", sc);
  std::cout << "scheme2_max_r1=" << format_sig(f2.max_r1, 6)
            << " strictly_below_scheme1="
            << (f2.max_r1 < f1.max_r1 - 1e-9 ? "yes" : "no") << "\n";
  if (!o.out.empty()) sink.write(o.out, frontier_csv(f1, o.digits));
  return ok;
}

bool run_ex1_xor(const ExampleOpts& o, OutputSink& sink) {
  double p = o.p < 0 ? 0.1 : o.p;
  double tol = o.tol < 0 ? 1e-3 : o.tol;
  double hp = binary_entropy(p);
  bool cond = 1 - hp >= hp;
  std::cout << "condition 1-h(p) >= h(p): " << (cond ? "HOLDS" : "FAILS")
            << " (1-h(p)=" << format_sig(1 - hp, 6)
            << ", h(p)=" << format_sig(hp, 6) << ")\n";
  SdMawc ch = make_xor_channel(p);
  SearchConfig sc;
  sc.grid_step = 1.0 / o.grid;
  Frontier f2 = search_frontier(ch, "scheme2", sc);
  Frontier f1 = search_frontier(ch, "scheme1", sc);
  bool ok = true;
  if (cond) {
    ok &= report("scheme2_max_r2", f2.max_r2, hp, tol, true);
    double gap = hp - f1.max_r2;
    std::cout << "scheme1_max_r2=" << format_sig(f1.max_r2, 6) << "\n";
    ok &= report("scheme1_gap_to_h_p", gap, 1e-3, 0.0, true);
  } else {
    std::cout << "scheme2_max_r2=" << format_sig(f2.max_r2, 6)
              << " (condition fails; frontier clamps below h(p))\n";
    std::cout << "scheme1_max_r2=" << format_sig(f1.max_r2, 6) << "\n";
  }
  if (!o.out.empty()) sink.write(o.out, frontier_csv(f2, o.digits));
  return ok;
}

bool run_ex2(const ExampleOpts& o, OutputSink& sink) {
  double p = o.p < 0 ? 0.8 : o.p;
  double p10 = o.p1 < 0 ? 0.2 : o.p1;
  double p20 = o.p2 < 0 ? 0.8 : o.p2;
  double tol = o.tol < 0 ? 1e-3 : o.tol;
  Ex2Metrics m = ex2_metrics(p, p10, p20);
  bool ok = true;
  ok &= report("R1_cap", m.r1_cap, 0.144, tol);
  ok &= report("I_S_Y", m.i_s_y, 0.182, tol);
  ok &= report("sum_rate", m.sum_rate, 0.182, tol);
  ok &= report("z_channel", m.z_channel, 0.114, tol);
  if (!o.out.empty()) {
    std::ostringstream csv;
    csv << "p,p1,p2,r1_cap,i_s_y,sum_rate,z_channel\n"
        << format_sig(p, o.digits) << "," << format_sig(p10, o.digits) << ","
        << format_sig(p20, o.digits) << "," << format_sig(m.r1_cap, o.digits)
        << "," << format_sig(m.i_s_y, o.digits) << ","
        << format_sig(m.sum_rate, o.digits) << ","
        << format_sig(m.z_channel, o.digits) << "\n";
    sink.write(o.out, csv.str());
  }
  return ok;
}

bool run_ex3(const ExampleOpts& o, OutputSink& sink) {
  double q = o.q < 0 ? 0.25 : o.q;
  double p = o.p < 0 ? 0.1 : o.p;
  double tol = o.tol < 0 ? 1e-6 : o.tol;
  std::string out = o.out.empty() ? "ex3_curves.csv" : o.out;
  SdMawc ch = make_state_reproducing_channel(q, p);
  double hq = binary_entropy(q), hp = binary_entropy(p);
  std::ostringstream csv;
  csv << "alpha,r1_inner,sum_inner,r1_closed,sum_closed\n";
  std::vector<std::pair<double, double>> vin, vcf;
  double sum_gap = 0, r1_gap = 0;
  for (int i = 0; i <= 32; ++i) {
    // alpha is the sender's randomization bias: X1 = U xor S xor X',
    // X' ~ Bern(alpha); the receiver-facing crossover is then p * alpha.
    double alpha = 0.5 + i / 64.0;
    FactoredJoint fj = ex3_joint(ch, alpha);
    RegionPolytope poly = regions_degraded(fj, Variant::OCSI_IN);
    double a_in = min_rhs(poly, {1, 0});
    double b_in = min_rhs(poly, {1, 1});
    double a_cf = std::min(binary_entropy(alpha) + hq -
                               binary_entropy(binary_convolve(p, alpha)) + hp,
                           binary_entropy(alpha));
    double b_cf = std::min(
        1 + hq - binary_entropy(binary_convolve(alpha, p)) + hp, 1.0);
    push_region_vertices(vin, a_in, b_in);
    push_region_vertices(vcf, a_cf, b_cf);
    sum_gap = std::max(sum_gap, std::fabs(b_in - b_cf));
    r1_gap = std::max(r1_gap, std::fabs(a_in - a_cf));
    csv << format_sig(alpha, o.digits) << "," << format_sig(a_in, o.digits)
        << "," << format_sig(b_in, o.digits) << ","
        << format_sig(a_cf, o.digits) << "," << format_sig(b_cf, o.digits)
        << "\n";
  }
  auto hin = convex_hull_2d(vin);
  auto hcf = convex_hull_2d(vcf);
  double gap = std::max(outside_gap(hin, vcf), outside_gap(hcf, vin));
  bool ok = true;
  ok &= report("r1_curve_gap", r1_gap, 0.0, tol);
  ok &= report("sum_curve_gap", sum_gap, 0.0, tol);
  ok &= report("frontier_gap", gap, 0.0, tol);
  sink.write(out, csv.str());
  return ok;
}

int cmd_example(const ExampleOpts& o, OutputSink& sink) {
  bool ok;
  if (o.name == "ex1-switch")
    ok = run_ex1_switch(o, sink);
  else if (o.name == "ex1-xor")
    ok = run_ex1_xor(o, sink);
  else if (o.name == "ex2-degraded")
    ok = run_ex2(o, sink);
  else if (o.name == "ex3-state-repro")
    ok = run_ex3(o, sink);
  else
    throw usage_error("unknown example '" + o.name +
                      "' (ex1-switch, ex1-xor, ex2-degraded, ex3-state-repro)");
  std::cout << "example " << o.name << ": " << (ok ? "PASS" : "FAIL") << "\n";
  sink.finish();
  return ok ? 0 : 2;
}

// ------------------------------------------------------------- region -------

struct RegionOpts {
  ChannelOpts ch;
  std::string family;
  int grid = 16, det_cap = 4096, threads = 1, digits = 6;
  double budget_s = 0;
  std::string aux_sizes, out = "frontier.csv";
  uint64_t seed = 0;
};

int cmd_region(const RegionOpts& o, OutputSink& sink) {
  if (!known_family(o.family))
    throw usage_error("unknown region family '" + o.family +
                      "' (theorem1, scheme1, scheme2, scheme3, prior, outer, "
                      "dmset, D11, D12, D21, D22, D3, ocsi-in, ocsi-out, "
                      "csi-ed)");
  if (o.grid < 1) throw usage_error("--grid must be >= 1");
  SdMawc ch = resolve_channel(o.ch, sink);
  SearchConfig sc;
  sc.grid_step = 1.0 / o.grid;
  sc.det_cap = o.det_cap;
  sc.threads = o.threads;
  sc.budget_s = o.budget_s;
  parse_aux_sizes(o.aux_sizes, sc);
  Frontier fr = search_frontier(ch, o.family, sc);
  sink.write(o.out, frontier_csv(fr, o.digits));
  if (o.ch.builtin.rfind("xor", 0) == 0 && o.family == "scheme2") {
    double p = ch.state.p.size() > 1 ? ch.state.p[1] : 0.0;
    double hp = binary_entropy(p);
    std::cout << "condition 1-h(p) >= h(p): "
              << (1 - hp >= hp ? "HOLDS" : "FAILS")
              << " (1-h(p)=" << format_sig(1 - hp, 6)
              << ", h(p)=" << format_sig(hp, 6) << ")\n";
  }
  std::cout << "family=" << o.family << " points=" << fr.points.size()
            << " max_r1=" << format_sig(fr.max_r1, 6)
            << " max_r2=" << format_sig(fr.max_r2, 6)
            << (fr.partial ? " (partial: budget hit)" : "") << "\n"
            << "wrote " << o.out << "\n";
  sink.finish();
  return fr.partial ? 3 : 0;
}

// ------------------------------------------------------------ simulate ------

struct SimulateOpts {
  ChannelOpts ch;
  std::string scheme;
  double r1 = 0, r2 = 0, delta = 0.3, tau = 0.02;
  std::vector<int> ns;
  int blocks = 4, trials = 100, threads = 1, digits = 6;
  uint64_t seed = 1;
  std::string out = "summary.csv", trace_path;
  bool leak = false;
};

enum class SimFlavor { Sender2Only, Sender1Only, Identity };

FactoredJoint sim_joint(const SdMawc& ch, bool key_assisted, SimFlavor f) {
  auto zero = [](const std::vector<int>&) { return 0; };
  auto second = [](const std::vector<int>& ix) { return ix[1]; };
  auto first = [](const std::vector<int>& ix) { return ix[0]; };
  if (key_assisted) {
    Kernel pv_s = Kernel::deterministic({ch.s}, 1, zero);
    Pmf pu = Pmf::point(1, 0);
    Kernel pu1, pu2, px1, px2;
    switch (f) {
      case SimFlavor::Sender2Only:
        pu1 = Kernel::deterministic({1}, 1, zero);
        pu2 = Kernel::tied({1}, Pmf::uniform(2));
        px1 = Kernel::deterministic({1, 1, ch.s}, ch.x1, zero);
        px2 = Kernel::deterministic({1, 2, ch.s}, ch.x2, second);
        break;
      case SimFlavor::Sender1Only:
        pu1 = Kernel::tied({1}, Pmf::uniform(2));
        pu2 = Kernel::deterministic({1}, 1, zero);
        px1 = Kernel::deterministic({1, 2, ch.s}, ch.x1, second);
        px2 = Kernel::deterministic({1, 1, ch.s}, ch.x2, zero);
        break;
      case SimFlavor::Identity:
        pu1 = Kernel::tied({1}, Pmf::uniform(ch.x1));
        pu2 = Kernel::tied({1}, Pmf::uniform(ch.x2));
        px1 = Kernel::deterministic({1, ch.x1, ch.s}, ch.x1, second);
        px2 = Kernel::deterministic({1, ch.x2, ch.s}, ch.x2, second);
        break;
    }
    return scheme1_joint(ch, pv_s, pu, pu1, pu2, px1, px2);
  }
  switch (f) {
    case SimFlavor::Sender2Only:
      return scheme2_joint(ch, Pmf::point(1, 0), Pmf::uniform(2),
                           Kernel::deterministic({1, ch.s}, ch.x1, zero),
                           Kernel::deterministic({2, ch.s}, ch.x2, first));
    case SimFlavor::Sender1Only:
      return scheme2_joint(ch, Pmf::uniform(2), Pmf::point(1, 0),
                           Kernel::deterministic({2, ch.s}, ch.x1, first),
                           Kernel::deterministic({1, ch.s}, ch.x2, zero));
    case SimFlavor::Identity:
    default:
      return scheme2_joint(ch, Pmf::uniform(ch.x1), Pmf::uniform(ch.x2),
                           Kernel::deterministic({ch.x1, ch.s}, ch.x1, first),
                           Kernel::deterministic({ch.x2, ch.s}, ch.x2, first));
  }
}

int cmd_simulate(const SimulateOpts& o, OutputSink& sink) {
  bool s1 = o.scheme == "scheme1";
  if (!s1 && o.scheme != "scheme2")
    throw usage_error("--scheme must be scheme1 or scheme2");
  std::vector<int> ns = o.ns.empty() ? std::vector<int>{8} : o.ns;
  for (int n : ns)
    if (n < 1) throw usage_error("--n must be positive");
  if (!o.trace_path.empty() && ns.size() != 1)
    throw usage_error("--trace needs exactly one --n value");
  if (o.leak && !s1) throw usage_error("--leak is measured for scheme1 only");
  SdMawc ch = resolve_channel(o.ch, sink);
  SimFlavor flavor = SimFlavor::Identity;
  if (o.ch.builtin.rfind("switch", 0) == 0)
    flavor = o.ch.builtin.find("z=x2") != std::string::npos
                 ? SimFlavor::Sender1Only
                 : SimFlavor::Sender2Only;
  FactoredJoint fj = sim_joint(ch, s1, flavor);
  JointTensor jt = fj.assemble();
  EntropyCache ec(jt);
  std::vector<SimSummary> rows;
  std::vector<BlockEvent> trace;
  std::vector<BlockEvent>* tp = o.trace_path.empty() ? nullptr : &trace;
  for (int n : ns) {
    SimSummary sum;
    if (s1) {
      Scheme1Config cfg{&ch,      &fj,      plan_scheme1(ec, o.r1, o.r2, o.tau),
                        n,        o.blocks, o.delta,
                        o.trials, o.seed};
      sum = run_scheme1(cfg, tp);
      if (o.leak) sum.leak_bits = scheme1_block_leakage(cfg, o.seed);
    } else {
      Scheme2Config cfg{&ch,      &fj,      plan_scheme2(ec, o.r1, o.r2, o.tau),
                        n,        o.blocks, o.delta,
                        o.trials, o.seed};
      sum = run_scheme2(cfg, tp);
    }
    std::cout << "n=" << sum.n << " blocks=" << sum.blocks << " rate=("
              << sum.rate_point << ") err_rate=" << format_sig(sum.err_rate, 6);
    if (sum.leak_bits >= 0)
      std::cout << " leak_bits=" << format_sig(sum.leak_bits, 6);
    std::cout << "\n";
    rows.push_back(sum);
  }
  sink.write(o.out, summary_csv(rows, o.digits));
  std::cout << "wrote " << o.out << "\n";
  if (tp) {
    sink.write(o.trace_path, trace_csv(trace));
    std::cout << "wrote " << o.trace_path << "\n";
  }
  sink.finish();
  return 0;
}

// --------------------------------------------------------------- sweep ------

struct SweepOpts {
  std::string example = "ex1-switch", param;
  double from = 0, to = 0, step = 0;
  double p = -1, q = -1, p1 = -1, p2 = -1;
  int digits = 6;
  std::string out = "sweep.csv";
  uint64_t seed = 0;
};

int cmd_sweep(const SweepOpts& o, OutputSink& sink) {
  if (!(o.step > 0)) throw usage_error("--step must be positive");
  long nsteps = (long)std::floor((o.to - o.from) / o.step + 1e-9);
  if (o.to < o.from - 1e-12 || nsteps < 0)
    throw usage_error("empty sweep range");
  std::vector<double> values;
  for (long i = 0; i <= nsteps; ++i) values.push_back(o.from + i * o.step);
  if (values.empty()) throw usage_error("empty sweep range");

  std::string param = o.param;
  std::ostringstream csv;
  int rows = 0;
  auto skip = [&](double v, const std::string& why) {
    std::cerr << "skipping " << param << "=" << format_sig(v, 6) << ": " << why
              << "\n";
  };

  if (o.example == "ex1-switch" || o.example == "ex1-xor") {
    if (param.empty()) param = "p";
    if (param != "p")
      throw usage_error("example " + o.example + " sweeps --param p only");
    bool sw = o.example == "ex1-switch";
    csv << (sw ? "p,one_minus_p,one_minus_h_p,r1_target\n"
               : "p,h_p,one_minus_h_p,condition_holds\n");
    for (double v : values) {
      if (v < 0 || v > 1) {
        skip(v, "probability outside [0,1]");
        continue;
      }
      double hp = binary_entropy(v);
      if (sw)
        csv << format_sig(v, o.digits) << "," << format_sig(1 - v, o.digits)
            << "," << format_sig(1 - hp, o.digits) << ","
            << format_sig(std::min(1 - v, 1 - hp), o.digits) << "\n";
      else
        csv << format_sig(v, o.digits) << "," << format_sig(hp, o.digits)
            << "," << format_sig(1 - hp, o.digits) << ","
            << (1 - hp >= hp ? 1 : 0) << "\n";
      ++rows;
    }
  } else if (o.example == "ex2-degraded") {
    if (param.empty()) param = "p";
    if (param != "p" && param != "p1" && param != "p2")
      throw usage_error("example ex2-degraded sweeps --param p, p1, or p2");
    double p = o.p < 0 ? 0.8 : o.p;
    double p10 = o.p1 < 0 ? 0.2 : o.p1;
    double p20 = o.p2 < 0 ? 0.8 : o.p2;
    csv << "p,p1,p2,r1_cap,i_s_y,sum_rate,z_channel\n";
    for (double v : values) {
      if (v < 0 || v > 1) {
        skip(v, "probability outside [0,1]");
        continue;
      }
      double pp = param == "p" ? v : p;
      double a = param == "p1" ? v : p10;
      double b = param == "p2" ? v : p20;
      Ex2Metrics m = ex2_metrics(pp, a, b);
      csv << format_sig(pp, o.digits) << "," << format_sig(a, o.digits) << ","
          << format_sig(b, o.digits) << "," << format_sig(m.r1_cap, o.digits)
          << "," << format_sig(m.i_s_y, o.digits) << ","
          << format_sig(m.sum_rate, o.digits) << ","
          << format_sig(m.z_channel, o.digits) << "\n";
      ++rows;
    }
  } else if (o.example == "ex3-state-repro") {
    if (param.empty()) param = "alpha";
    if (param != "alpha")
      throw usage_error("example ex3-state-repro sweeps --param alpha only");
    double q = o.q < 0 ? 0.25 : o.q;
    double p = o.p < 0 ? 0.1 : o.p;
    SdMawc ch = make_state_reproducing_channel(q, p);
    double hq = binary_entropy(q), hp = binary_entropy(p);
    csv << "alpha,h_alpha,r1_inner,sum_inner,r1_closed,sum_closed\n";
    for (double v : values) {
      if (v < 0.5 - 1e-9 || v > 1 + 1e-9) {
        skip(v, "alpha must lie in [1/2, 1]");
        continue;
      }
      FactoredJoint fj = ex3_joint(ch, std::clamp(v, 0.0, 1.0));
      RegionPolytope poly = regions_degraded(fj, Variant::OCSI_IN);
      double a_in = min_rhs(poly, {1, 0});
      double b_in = min_rhs(poly, {1, 1});
      double a_cf =
          std::min(binary_entropy(v) + hq -
                       binary_entropy(binary_convolve(p, v)) + hp,
                   binary_entropy(v));
      double b_cf =
          std::min(1 + hq - binary_entropy(binary_convolve(v, p)) + hp, 1.0);
      csv << format_sig(v, o.digits) << ","
          << format_sig(binary_entropy(v), o.digits) << ","
          << format_sig(a_in, o.digits) << "," << format_sig(b_in, o.digits)
          << "," << format_sig(a_cf, o.digits) << ","
          << format_sig(b_cf, o.digits) << "\n";
      ++rows;
    }
  } else {
    throw usage_error("unknown example '" + o.example +
                      "' (ex1-switch, ex1-xor, ex2-degraded, ex3-state-repro)");
  }

  sink.write(o.out, csv.str());
  std::cout << "swept " << param << " over " << values.size() << " values, "
            << rows << " rows\nwrote " << o.out << "\n";
  sink.finish();
  return 0;
}

// ----------------------------------------------------- channel-validate -----

struct ValidateOpts {
  ChannelOpts ch;
  std::string out;
  uint64_t seed = 0;
};

int cmd_channel_validate(const ValidateOpts& o, OutputSink& sink) {
  SdMawc ch = resolve_channel(o.ch, sink);
  ch.validate();
  std::cout << "valid channel: |X1|=" << ch.x1 << " |X2|=" << ch.x2
            << " |S|=" << ch.s << " |Y|=" << ch.y << " |Z|=" << ch.z << "\n";
  std::cout << "state_pmf=[";
  for (size_t i = 0; i < ch.state.p.size(); ++i)
    std::cout << (i ? "," : "") << format_sig(ch.state.p[i], 6);
  std::cout << "]\n";
  if (!o.out.empty()) {
    sink.write(o.out, channel_to_text(ch));
    std::cout << "wrote " << o.out << "\n";
  }
  sink.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rate regions and block-Markov coding simulations for two-sender "
      "state-dependent wiretap channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "mawc 1.0.0");

  RegionOpts ro;
  auto* reg = app.add_subcommand(
      "region", "search a rate-region family and emit the frontier CSV");
  add_channel_opts(reg, ro.ch);
  reg->add_option("--family", ro.family,
                  "region family: theorem1 | scheme1 | scheme2 | scheme3 | "
                  "prior | outer | dmset | D11 | D12 | D21 | D22 | D3 | "
                  "ocsi-in | ocsi-out | csi-ed")
      ->required();
  reg->add_option("--grid", ro.grid, "simplex grid density (step = 1/grid)");
  reg->add_option("--aux-sizes", ro.aux_sizes,
                  "auxiliary alphabet sizes v,u,u1,u2 (0 = family default)");
  reg->add_option("--det-cap", ro.det_cap,
                  "max deterministic strategy maps per sender");
  reg->add_option("--threads", ro.threads, "worker threads for the search");
  reg->add_option("--budget-s", ro.budget_s,
                  "wall-clock budget in seconds (0 = unlimited; exceeding it "
                  "yields a partial frontier and exit code 3)");
  reg->add_option("--out", ro.out, "frontier CSV path");
  reg->add_option("--digits", ro.digits, "significant digits in CSV output");
  reg->add_option("--seed", ro.seed, "seed recorded in the manifest");

  ExampleOpts eo;
  auto* exc = app.add_subcommand(
      "example", "recompute a worked channel example and report pass/fail");
  exc->add_option("name", eo.name,
                  "ex1-switch | ex1-xor | ex2-degraded | ex3-state-repro")
      ->required();
  exc->add_option("--p", eo.p, "channel parameter p (default per example)");
  exc->add_option("--q", eo.q, "state bias q (ex3; default 0.25)");
  exc->add_option("--p1", eo.p1, "Pr{X1=0} (ex2; default 0.2)");
  exc->add_option("--p2", eo.p2, "Pr{X2=0} (ex2; default 0.8)");
  exc->add_option("--tol", eo.tol,
                  "pass/fail tolerance (default 1e-3; ex3 1e-6)");
  exc->add_option("--grid", eo.grid, "simplex grid density for searches");
  exc->add_option("--out", eo.out,
                  "CSV path (ex3 default ex3_curves.csv; optional elsewhere)");
  exc->add_option("--digits", eo.digits, "significant digits in CSV output");
  exc->add_option("--seed", eo.seed, "seed recorded in the manifest");

  SimulateOpts so;
  auto* sim = app.add_subcommand(
      "simulate", "run a block-Markov coding scheme at desk scale");
  add_channel_opts(sim, so.ch);
  sim->add_option("--scheme", so.scheme, "scheme1 (key-assisted) | scheme2 "
                                         "(state-keyed)")
      ->required();
  sim->add_option("--r1", so.r1, "message-1 rate (bits/use)");
  sim->add_option("--r2", so.r2, "message-2 rate (bits/use)");
  sim->add_option("--n", so.ns, "block length(s); repeat for a trend run");
  sim->add_option("--blocks", so.blocks, "blocks per trial");
  sim->add_option("--trials", so.trials, "Monte Carlo trials");
  sim->add_option("--delta", so.delta, "typicality window per symbol");
  sim->add_option("--tau", so.tau, "rate-allocation slack");
  sim->add_option("--seed", so.seed, "root RNG seed");
  sim->add_option("--threads", so.threads, "worker threads (runs are serial "
                                           "per trial; accepted for parity)");
  sim->add_option("--out", so.out, "summary CSV path");
  sim->add_option("--trace", so.trace_path,
                  "also write a per-event trace CSV (single --n only)");
  sim->add_flag("--leak", so.leak,
                "measure exact single-block leakage (scheme1)");
  sim->add_option("--digits", so.digits, "significant digits in CSV output");

  SweepOpts wo;
  auto* swp = app.add_subcommand(
      "sweep", "recompute an example's metrics across a parameter range");
  swp->add_option("--example", wo.example,
                  "ex1-switch | ex1-xor | ex2-degraded | ex3-state-repro");
  swp->add_option("--param", wo.param,
                  "swept parameter (p | p1 | p2 | alpha; default per example)");
  swp->add_option("--from", wo.from, "range start")->required();
  swp->add_option("--to", wo.to, "range end (inclusive)")->required();
  swp->add_option("--step", wo.step, "range step (> 0)")->required();
  swp->add_option("--p", wo.p, "fixed channel parameter p");
  swp->add_option("--q", wo.q, "fixed state bias q (ex3)");
  swp->add_option("--p1", wo.p1, "fixed Pr{X1=0} (ex2)");
  swp->add_option("--p2", wo.p2, "fixed Pr{X2=0} (ex2)");
  swp->add_option("--out", wo.out, "sweep CSV path");
  swp->add_option("--digits", wo.digits, "significant digits in CSV output");
  swp->add_option("--seed", wo.seed, "seed recorded in the manifest");

  ValidateOpts vo;
  auto* val = app.add_subcommand(
      "channel-validate", "load a channel, check it, and print its shape");
  add_channel_opts(val, vo.ch);
  val->add_option("--out", vo.out, "write the normalized channel text here");
  val->add_option("--seed", vo.seed, "seed recorded in the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  OutputSink sink;
  sink.argv.assign(argv, argv + argc);
  try {
    if (reg->parsed()) {
      sink.seed = ro.seed;
      return cmd_region(ro, sink);
    }
    if (exc->parsed()) {
      sink.seed = eo.seed;
      return cmd_example(eo, sink);
    }
    if (sim->parsed()) {
      sink.seed = so.seed;
      return cmd_simulate(so, sink);
    }
    if (swp->parsed()) {
      sink.seed = wo.seed;
      return cmd_sweep(wo, sink);
    }
    if (val->parsed()) {
      sink.seed = vo.seed;
      return cmd_channel_validate(vo, sink);
    }
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
