#pragma once

#include <functional>
#include <string>
#include <vector>

#include "phclose/geometry.hpp"

namespace phclose {

// Catalog of concrete partially hyperbolic maps on T^3. All three share the
// hyperbolic base A = [[2,1],[1,1]] on T^2 and differ in the circle fiber:
//   product:   theta' = theta + omega
//   skew:      theta' = theta + omega + epsilon * sin(2 pi x)
//   reversing: theta' = -theta + omega
struct MapSpec {
  std::string id = "product";  // product | skew | reversing
  double omega = 0.41421356237309515;  // sqrt(2) - 1
  double epsilon = 0.05;               // used by skew only

  bool operator==(const MapSpec&) const = default;
};

struct SystemInstance {
  MapSpec spec;
  int dim = 3;
  bool volume_preserving = true;
  bool reverses_center = false;  // Df maps (0,0,1) to (0,0,-1)

  std::function<TorusPoint(const TorusPoint&)> eval;
  std::function<Mat(const TorusPoint&)> jacobian;
  // Closed-form inverse when available; empty triggers the Newton fallback.
  std::function<TorusPoint(const TorusPoint&)> inverse_rule;

  TorusPoint inverse(const TorusPoint& y) const;
  TorusPoint iterate(const TorusPoint& x, int k) const;  // k may be negative
  Mat orbit_jacobian(const TorusPoint& x, int k) const;  // D(f^k)(x), k >= 0
};

std::vector<MapSpec> catalog();
SystemInstance make_system(const MapSpec& spec);

// Newton fallback used when no closed-form inverse is installed; diverges
// into NewtonDivergence after 50 iterations.
TorusPoint newton_inverse(const SystemInstance& f, const TorusPoint& y,
                          const TorusPoint& guess);

}  // namespace phclose
