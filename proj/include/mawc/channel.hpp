#pragma once
#include <iosfwd>
#include <string>

#include "mawc/prob.hpp"

namespace mawc {

enum class Eavesdrop { X1, X2 };

// Two-sender state-dependent wiretap channel: kernel (x1,x2,s) -> (y,z)
// plus an i.i.d. state distribution. Memorylessness is structural.
struct SdMawc {
  int x1 = 2, x2 = 2, s = 1, y = 2, z = 2;
  Kernel w;   // in_shape {x1,x2,s}, out = y*z, output index yy*z + zz
  Pmf state;  // over S

  double wp(int xx1, int xx2, int ss, int yy, int zz) const;
  void validate(double tol = 1e-12) const;
};

// Y = X1 when S=0 and X2 when S=1; Z copies the designated sender; Pr{S=1}=p.
SdMawc make_switch_channel(double p, Eavesdrop ev);

// Y = X1 xor X2 xor S, Z = X2, S ~ Bern(p).
SdMawc make_xor_channel(double p);

// Y = (Y1,Y2) with Y2 = X1*X2, Y1 = Y2 xor S, Z = Y2 xor N;
// S ~ Bern(q), N ~ Bern(p), q,p in [0,1/2]; y flattened as 2*y1 + y2.
SdMawc make_state_reproducing_channel(double q, double p);

// Text format "sdmawc-v1": header line, axis declaration, sizes, state pmf,
// one `w` line per (x1,x2,s) tuple row-major. Round-trips bit-exactly.
SdMawc load_channel(std::istream& in);
SdMawc load_channel_file(const std::string& path);
void save_channel(const SdMawc& c, std::ostream& out);
std::string channel_to_text(const SdMawc& c);

// Builtin syntax: "switch:p=0.8:z=x1", "xor:p=0.3", "state-repro:q=0.25:p=0.1".
SdMawc parse_builtin(const std::string& spec);

}  // namespace mawc
