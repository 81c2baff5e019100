#include "mawc/seq.hpp"

#include <cmath>
#include <stdexcept>

namespace mawc {

bool TypicalityTest::accept(const std::vector<const Seq*>& streams) const {
  if (streams.empty() || streams.size() != sizes.size())
    throw std::invalid_argument("typicality: stream/alphabet count mismatch");
  size_t n = streams[0]->size();
  size_t cells = 1;
  for (int s : sizes) cells *= (size_t)s;
  std::vector<int> count(cells, 0);
  for (size_t t = 0; t < n; ++t) {
    size_t cell = 0;
    for (size_t j = 0; j < streams.size(); ++j) {
      if (streams[j]->size() != n)
        throw std::invalid_argument("typicality: stream length mismatch");
      cell = cell * (size_t)sizes[j] + (*streams[j])[t];
    }
    ++count[cell];
  }
  // Strong typicality: zero-probability cells must be empty; the rest stay
  // within an additive frequency window.
  double inv = 1.0 / (double)n;
  for (size_t c = 0; c < cells; ++c) {
    if (pmf[c] < 1e-15) {
      if (count[c] != 0) return false;
    } else if (std::fabs(count[c] * inv - pmf[c]) > delta + 1e-12) {
      return false;
    }
  }
  return true;
}

bool TypicalityTest::accept2(const Seq& a, const Seq& b) const {
  return accept({&a, &b});
}

bool TypicalityTest::accept3(const Seq& a, const Seq& b, const Seq& c) const {
  return accept({&a, &b, &c});
}

Seq draw_iid(Rng& rng, const std::vector<double>& p, int n) {
  Seq s((size_t)n);
  for (int t = 0; t < n; ++t)
    s[(size_t)t] = (uint8_t)rng.categorical(p.data(), (int)p.size());
  return s;
}

Seq draw_conditional(Rng& rng, const std::vector<double>& rows, int out,
                     const std::vector<const Seq*>& parents,
                     const std::vector<int>& parent_sizes) {
  size_t n = parents.empty() ? 0 : parents[0]->size();
  Seq s(n);
  for (size_t t = 0; t < n; ++t) {
    size_t r = 0;
    for (size_t j = 0; j < parents.size(); ++j)
      r = r * (size_t)parent_sizes[j] + (*parents[j])[t];
    s[t] = (uint8_t)rng.categorical(rows.data() + r * (size_t)out, out);
  }
  return s;
}

}  // namespace mawc
