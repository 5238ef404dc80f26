#pragma once

#include <functional>

#include "phclose/geometry.hpp"

namespace phclose {

/// Cylinder [a,b] x D^s. s = 0 degenerates to the bare interval [a,b],
/// which is what the stable-disk holonomy solve needs when dim E^s = 1.
struct BoxDomain {
  double a = -1.0;
  double b = 1.0;
  int s = 1;  // 0, 1 or 2
};

/// Continuous map H(t,v) = (h1, h2) in R x R^s, packed as a (1+s)-vector.
struct MapHandle {
  std::function<Vec(double t, const Vec& v)> eval;
  double lipschitz_hint = 0.0;  // optional
};

struct BoundaryReport {
  double slack_h2 = 0.0;  // 1 - max ||h2||
  double slack_a = 0.0;   // min h1(a,v) - a
  double slack_b = 0.0;   // min b - h1(b,v)
  bool pass = false;
};

struct FixedPointResult {
  double t = 0.0;
  Vec v;
  double residual = 0.0;
  int boundary_degree = 0;
  long evaluations = 0;
  int subdivisions = 0;
};

// Sampled slacks of the fixed-point lemma hypotheses: ||h2|| < 1 on the
// cylinder and h1(a,.) > a, h1(b,.) < b on the caps. Report-only.
BoundaryReport boundary_hypotheses_check(const MapHandle& H,
                                         const BoxDomain& dom,
                                         int samples = 512);

// Degree of the displacement (t,v) - H(t,v) on the boundary of the cylinder.
// s=1: winding number from an adaptively refined boundary polyline;
// s=2: solid-angle sum over a triangulated boundary surface;
// s=0: sign count of the displacement at the two endpoints (0 or 1).
int boundary_degree(const MapHandle& H, const BoxDomain& dom);

// Fixed point of H under the boundary hypotheses. Asserts the boundary
// degree of the displacement equals one, then localizes the fixed point by
// damped Newton runs interleaved with t-subdivision (children keep the
// cylinder shape, so their degrees are computed by the same routine).
FixedPointResult degree_fixed_point(const MapHandle& H, const BoxDomain& dom,
                                    double tol = 1e-10);

}  // namespace phclose
