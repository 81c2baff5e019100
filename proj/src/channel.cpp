#include "mawc/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mawc {

double SdMawc::wp(int xx1, int xx2, int ss, int yy, int zz) const {
  return w.at(w.row_index({xx1, xx2, ss}), yy * z + zz);
}

void SdMawc::validate(double tol) const {
  if (x1 < 1 || x2 < 1 || s < 1 || y < 1 || z < 1)
    throw validation_error("channel: alphabet sizes must be >= 1");
  if (w.in_shape != std::vector<int>{x1, x2, s} || w.out != y * z)
    throw validation_error("channel: kernel shape mismatch");
  w.validate(tol);
  if (state.size() != s) throw validation_error("channel: state pmf size mismatch");
  state.validate(tol);
}

SdMawc make_switch_channel(double p, Eavesdrop ev) {
  SdMawc c;
  c.x1 = 2, c.x2 = 2, c.s = 2, c.y = 2, c.z = 2;
  c.state = Pmf::bern(p);
  c.w = Kernel::deterministic({2, 2, 2}, 4, [ev](const std::vector<int>& in) {
    int yy = in[2] == 0 ? in[0] : in[1];
    int zz = ev == Eavesdrop::X1 ? in[0] : in[1];
    return yy * 2 + zz;
  });
  return c;
}

SdMawc make_xor_channel(double p) {
  SdMawc c;
  c.x1 = 2, c.x2 = 2, c.s = 2, c.y = 2, c.z = 2;
  c.state = Pmf::bern(p);
  c.w = Kernel::deterministic({2, 2, 2}, 4, [](const std::vector<int>& in) {
    int yy = in[0] ^ in[1] ^ in[2];
    return yy * 2 + in[1];
  });
  return c;
}

SdMawc make_state_reproducing_channel(double q, double p) {
  if (q < 0 || q > 0.5 || p < 0 || p > 0.5)
    throw validation_error("state-repro: parameters must lie in [0, 1/2]");
  SdMawc c;
  c.x1 = 2, c.x2 = 2, c.s = 2, c.y = 4, c.z = 2;
  c.state = Pmf::bern(q);
  c.w.in_shape = {2, 2, 2};
  c.w.out = 8;
  c.w.p.assign(8 * 8, 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ss = 0; ss < 2; ++ss) {
        int y2 = a & b;
        int y1 = y2 ^ ss;
        int yy = 2 * y1 + y2;
        int row = c.w.row_index({a, b, ss});
        c.w.at(row, yy * 2 + y2) = 1 - p;       // z = y2 (noise off)
        c.w.at(row, yy * 2 + (y2 ^ 1)) = p;     // z = y2 xor 1 (noise on)
      }
  return c;
}

static std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos || line[i] == '#') continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }
  throw validation_error("channel file: unexpected end of input");
}

SdMawc load_channel(std::istream& in) {
  if (next_data_line(in) != "sdmawc-v1")
    throw validation_error("channel file: missing sdmawc-v1 header");
  {
    std::istringstream ls(next_data_line(in));
    std::string kw, a, b, c, d, e;
    ls >> kw >> a >> b >> c >> d >> e;
    if (kw != "axes" || a != "x1" || b != "x2" || c != "s" || d != "y" || e != "z")
      throw validation_error("channel file: bad axes declaration");
  }
  SdMawc ch;
  {
    std::istringstream ls(next_data_line(in));
    std::string kw;
    ls >> kw >> ch.x1 >> ch.x2 >> ch.s >> ch.y >> ch.z;
    if (kw != "sizes" || !ls)
      throw validation_error("channel file: bad sizes line");
    if (ch.x1 < 1 || ch.x2 < 1 || ch.s < 1 || ch.y < 1 || ch.z < 1)
      throw validation_error("channel file: alphabet sizes must be >= 1");
  }
  {
    std::istringstream ls(next_data_line(in));
    std::string kw;
    ls >> kw;
    if (kw != "state") throw validation_error("channel file: bad state line");
    ch.state.p.assign((size_t)ch.s, 0.0);
    for (int i = 0; i < ch.s; ++i)
      if (!(ls >> ch.state.p[i]))
        throw validation_error("channel file: short state line");
  }
  ch.w.in_shape = {ch.x1, ch.x2, ch.s};
  ch.w.out = ch.y * ch.z;
  ch.w.p.assign((size_t)ch.w.rows() * ch.w.out, 0.0);
  for (int a = 0; a < ch.x1; ++a)
    for (int b = 0; b < ch.x2; ++b)
      for (int ss = 0; ss < ch.s; ++ss) {
        std::istringstream ls(next_data_line(in));
        std::string kw;
        int ia, ib, is;
        ls >> kw >> ia >> ib >> is;
        if (kw != "w" || ia != a || ib != b || is != ss)
          throw validation_error("channel file: w rows must appear row-major");
        int row = ch.w.row_index({a, b, ss});
        for (int o = 0; o < ch.w.out; ++o)
          if (!(ls >> ch.w.p[(size_t)row * ch.w.out + o]))
            throw validation_error("channel file: short w row");
      }
  // Accept mild rounding noise, then renormalize to exact simplex points.
  ch.validate(1e-9);
  double sm = 0;
  for (double& x : ch.state.p) sm += x;
  for (double& x : ch.state.p) x /= sm;
  for (int r = 0; r < ch.w.rows(); ++r) {
    double rm = 0;
    for (int o = 0; o < ch.w.out; ++o) rm += ch.w.at(r, o);
    for (int o = 0; o < ch.w.out; ++o) ch.w.at(r, o) /= rm;
  }
  return ch;
}

SdMawc load_channel_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("channel file: cannot open " + path);
  return load_channel(f);
}

static std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void save_channel(const SdMawc& c, std::ostream& out) {
  out << "sdmawc-v1\n";
  out << "axes x1 x2 s y z\n";
  out << "sizes " << c.x1 << ' ' << c.x2 << ' ' << c.s << ' ' << c.y << ' ' << c.z
      << '\n';
  out << "state";
  for (int i = 0; i < c.s; ++i) out << ' ' << g17(c.state[i]);
  out << '\n';
  for (int a = 0; a < c.x1; ++a)
    for (int b = 0; b < c.x2; ++b)
      for (int ss = 0; ss < c.s; ++ss) {
        out << "w " << a << ' ' << b << ' ' << ss;
        for (int yy = 0; yy < c.y; ++yy)
          for (int zz = 0; zz < c.z; ++zz) out << ' ' << g17(c.wp(a, b, ss, yy, zz));
        out << '\n';
      }
}

std::string channel_to_text(const SdMawc& c) {
  std::ostringstream os;
  save_channel(c, os);
  return os.str();
}

SdMawc parse_builtin(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else cur.push_back(ch);
  }
  parts.push_back(cur);
  const std::string& name = parts[0];
  std::vector<std::pair<std::string, std::string>> kv;
  for (size_t i = 1; i < parts.size(); ++i) {
    size_t eq = parts[i].find('=');
    if (eq == std::string::npos)
      throw validation_error("builtin: expected key=value, got '" + parts[i] + "'");
    kv.emplace_back(parts[i].substr(0, eq), parts[i].substr(eq + 1));
  }
  auto take = [&kv](const std::string& key, const char* fallback) -> std::string {
    for (auto& e : kv)
      if (e.first == key) {
        std::string v = e.second;
        e.second.clear();
        e.first.clear();
        return v;
      }
    if (!fallback) throw validation_error("builtin: missing parameter " + key);
    return fallback;
  };
  auto done = [&kv] {
    for (auto& e : kv)
      if (!e.first.empty())
        throw validation_error("builtin: unknown parameter " + e.first);
  };
  auto num = [](const std::string& v) {
    try {
      size_t pos = 0;
      double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw validation_error("builtin: bad numeric value '" + v + "'");
    }
  };
  if (name == "switch") {
    double p = num(take("p", nullptr));
    std::string zs = take("z", "x2");
    if (zs != "x1" && zs != "x2")
      throw validation_error("builtin: switch z must be x1 or x2");
    done();
    if (p < 0 || p > 1) throw validation_error("builtin: p outside [0,1]");
    return make_switch_channel(p, zs == "x1" ? Eavesdrop::X1 : Eavesdrop::X2);
  }
  if (name == "xor") {
    double p = num(take("p", nullptr));
    done();
    if (p < 0 || p > 1) throw validation_error("builtin: p outside [0,1]");
    return make_xor_channel(p);
  }
  if (name == "state-repro") {
    double q = num(take("q", nullptr));
    double p = num(take("p", nullptr));
    done();
    return make_state_reproducing_channel(q, p);
  }
  throw validation_error("builtin: unknown channel family '" + name + "'");
}

}  // namespace mawc
