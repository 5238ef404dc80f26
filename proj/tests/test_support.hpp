#pragma once

#include <random>

#include "phclose/degree.hpp"

namespace phclose::testing {

// Random maps satisfying the fixed-point lemma hypotheses by construction:
// h1 pulls the t-caps inward (affine contraction toward an interior anchor
// plus bounded smooth bumps), h2 maps into the open unit ball.
inline MapHandle random_admissible_map(std::mt19937_64& rng,
                                       const BoxDomain& dom) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double mid = 0.5 * (dom.a + dom.b), half = 0.5 * (dom.b - dom.a);
  double anchor = mid + 0.3 * half * u(rng);
  double slope = 0.4 * u(rng);            // |slope| <= 0.4
  double amp = 0.15 * half * u(rng);      // bump amplitude
  double freq = 1.0 + 2.0 * std::abs(u(rng));
  double phase = 3.0 * u(rng);
  int s = dom.s;
  std::vector<double> vslope(s), vamp(s), vfreq(s), vphase(s);
  for (int i = 0; i < s; ++i) {
    vslope[i] = 0.45 * u(rng);
    vamp[i] = 0.2 * u(rng);
    vfreq[i] = 1.0 + 2.0 * std::abs(u(rng));
    vphase[i] = 3.0 * u(rng);
  }
  MapHandle H;
  H.eval = [=](double t, const Vec& v) {
    Vec out(1 + s);
    double tn = (t - mid) / half;  // in [-1, 1]
    double vsum = 0.0;
    for (int i = 0; i < s; ++i) vsum += v[i];
    out[0] = anchor + slope * half * tn +
             amp * std::sin(freq * tn + 0.7 * vsum + phase);
    for (int i = 0; i < s; ++i)
      out[1 + i] = vslope[i] * v[i] +
                   vamp[i] * std::sin(vfreq[i] * tn + vsum + vphase[i]);
    return out;
  };
  return H;
}

}  // namespace phclose::testing
