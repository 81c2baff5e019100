#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "mawc/channel.hpp"
#include "mawc/factored.hpp"
#include "mawc/joint.hpp"
#include "mawc/prob.hpp"

using namespace mawc;

namespace {

Kernel identity_input(int states) {
  // (u, s) -> x = u over binary alphabets.
  return Kernel::deterministic({2, states}, 2,
                               [](const std::vector<int>& ix) { return ix[0]; });
}

}  // namespace

TEST_SUITE("channel") {

TEST_CASE("switch channel law") {
  for (double p : {0.3, 0.8}) {
    for (Eavesdrop ev : {Eavesdrop::X1, Eavesdrop::X2}) {
      SdMawc ch = make_switch_channel(p, ev);
      ch.validate();
      CHECK(ch.state.p[1] == doctest::Approx(p).epsilon(1e-15));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int s = 0; s < 2; ++s) {
            int y = s == 0 ? a : b;
            int z = ev == Eavesdrop::X1 ? a : b;
            CHECK(ch.wp(a, b, s, y, z) == 1.0);
          }
    }
  }
}

TEST_CASE("xor channel law") {
  SdMawc ch = make_xor_channel(0.3);
  ch.validate();
  CHECK(ch.state.p[1] == doctest::Approx(0.3));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s) CHECK(ch.wp(a, b, s, a ^ b ^ s, b) == 1.0);
}

TEST_CASE("state reproducing channel law") {
  SdMawc ch = make_state_reproducing_channel(0.25, 0.1);
  ch.validate();
  CHECK(ch.y == 4);
  CHECK(ch.state.p[1] == doctest::Approx(0.25));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s) {
        int y2 = a * b;
        int y1 = y2 ^ s;
        int y = 2 * y1 + y2;
        CHECK(ch.wp(a, b, s, y, y2) == doctest::Approx(0.9));
        CHECK(ch.wp(a, b, s, y, y2 ^ 1) == doctest::Approx(0.1));
      }
}

TEST_CASE("receiver recovers the state on the reproducing channel") {
  SdMawc ch = make_state_reproducing_channel(0.25, 0.1);
  FactoredJoint fj = scheme2_joint(ch, Pmf::uniform(2), Pmf::uniform(2),
                                   identity_input(2), identity_input(2));
  JointTensor j = fj.assemble();
  EntropyCache ec(j);
  CHECK(ec.Hc(A_S, A_Y) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("watching sender 2 reveals nothing new about sender 1") {
  SdMawc ch = make_switch_channel(0.7, Eavesdrop::X2);
  FactoredJoint fj = scheme2_joint(ch, Pmf({0.6, 0.4}), Pmf({0.3, 0.7}),
                                   identity_input(2), identity_input(2));
  JointTensor j = fj.assemble();
  EntropyCache ec(j);
  CHECK(ec.I(A_U1, A_Z, A_S) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ec.I(A_U1, A_Z | A_S) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("text round trip is exact") {
  for (const char* spec : {"switch:p=0.8:z=x1", "switch:p=0.35:z=x2", "xor:p=0.1",
                           "state-repro:q=0.25:p=0.1"}) {
    SdMawc ch = parse_builtin(spec);
    std::string text = channel_to_text(ch);
    std::istringstream in(text);
    SdMawc back = load_channel(in);
    back.validate();
    CHECK(channel_to_text(back) == text);
  }
}

TEST_CASE("file round trip") {
  SdMawc ch = make_xor_channel(0.2);
  std::string path = "/tmp/mawc_test_channel.txt";
  {
    std::ofstream out(path);
    save_channel(ch, out);
  }
  SdMawc back = load_channel_file(path);
  CHECK(channel_to_text(back) == channel_to_text(ch));
  std::remove(path.c_str());
  CHECK_THROWS(load_channel_file("/tmp/mawc_no_such_file.txt"));
}

TEST_CASE("loader rejects malformed input") {
  auto loads = [](const std::string& text) {
    std::istringstream in(text);
    return load_channel(in);
  };
  CHECK_THROWS_AS(loads("bogus-header\n"), validation_error);
  CHECK_THROWS_AS(loads("sdmawc-v1\naxes x1 x2 s y z\nsizes 2 2\n"), validation_error);
  // Kernel row failing normalization.
  std::string good = channel_to_text(make_switch_channel(0.5, Eavesdrop::X1));
  std::string broken = good;
  size_t pos = broken.find("w 0 0 0 1");
  REQUIRE(pos != std::string::npos);
  broken.replace(pos, 9, "w 0 0 0 2");
  CHECK_THROWS_AS(loads(broken), validation_error);
  // Truncated file.
  CHECK_THROWS_AS(loads(good.substr(0, good.size() / 2)), validation_error);
}

TEST_CASE("builtin specs") {
  CHECK(channel_to_text(parse_builtin("switch:p=0.8:z=x2")) ==
        channel_to_text(make_switch_channel(0.8, Eavesdrop::X2)));
  CHECK(channel_to_text(parse_builtin("xor:p=0.3")) ==
        channel_to_text(make_xor_channel(0.3)));
  CHECK(channel_to_text(parse_builtin("state-repro:q=0.3:p=0.05")) ==
        channel_to_text(make_state_reproducing_channel(0.3, 0.05)));
  CHECK_THROWS_AS(parse_builtin("bsc:p=0.1"), validation_error);
  CHECK_THROWS_AS(parse_builtin("switch:p=1.5:z=x1"), validation_error);
}

TEST_CASE("validate catches corruption") {
  SdMawc ch = make_switch_channel(0.5, Eavesdrop::X1);
  ch.validate();
  SdMawc bad = ch;
  bad.w.p[0] += 0.1;
  CHECK_THROWS_AS(bad.validate(), validation_error);
  SdMawc shape = ch;
  shape.y = 3;
  CHECK_THROWS_AS(shape.validate(), validation_error);
}

}  // TEST_SUITE
