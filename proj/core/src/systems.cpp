#include "phclose/systems.hpp"

#include <cmath>

namespace phclose {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

Vec apply_base(double a, double b, double c, double d, const Vec& p) {
  Vec out = p;
  out[0] = a * p[0] + b * p[1];
  out[1] = c * p[0] + d * p[1];
  return out;
}
}  // namespace

std::vector<MapSpec> catalog() {
  MapSpec product{"product", std::sqrt(2.0) - 1.0, 0.0};
  MapSpec skew{"skew", std::sqrt(2.0) - 1.0, 0.05};
  MapSpec reversing{"reversing", std::sqrt(2.0) - 1.0, 0.0};
  return {product, skew, reversing};
}

SystemInstance make_system(const MapSpec& spec) {
  SystemInstance sys;
  sys.spec = spec;
  sys.dim = 3;
  sys.volume_preserving = true;

  const double omega = spec.omega;
  const double eps = spec.epsilon;

  if (spec.id == "product") {
    sys.eval = [omega](const TorusPoint& p) {
      Vec v = apply_base(2, 1, 1, 1, p.coords);
      v[2] = p.coords[2] + omega;
      return TorusPoint(v);
    };
    sys.jacobian = [](const TorusPoint&) {
      Mat J(3, 3);
      J << 2, 1, 0, 1, 1, 0, 0, 0, 1;
      return J;
    };
    sys.inverse_rule = [omega](const TorusPoint& p) {
      Vec v = apply_base(1, -1, -1, 2, p.coords);
      v[2] = p.coords[2] - omega;
      return TorusPoint(v);
    };
  } else if (spec.id == "skew") {
    sys.eval = [omega, eps](const TorusPoint& p) {
      Vec v = apply_base(2, 1, 1, 1, p.coords);
      v[2] = p.coords[2] + omega + eps * std::sin(kTwoPi * p.coords[0]);
      return TorusPoint(v);
    };
    sys.jacobian = [eps](const TorusPoint& p) {
      Mat J(3, 3);
      J << 2, 1, 0, 1, 1, 0, kTwoPi * eps * std::cos(kTwoPi * p.coords[0]), 0,
          1;
      return J;
    };
    sys.inverse_rule = [omega, eps](const TorusPoint& p) {
      Vec v = apply_base(1, -1, -1, 2, p.coords);
      // theta recovered from the pre-image base coordinate
      double x = v[0] - std::floor(v[0]);
      v[2] = p.coords[2] - omega - eps * std::sin(kTwoPi * x);
      return TorusPoint(v);
    };
  } else if (spec.id == "reversing") {
    sys.reverses_center = true;
    sys.eval = [omega](const TorusPoint& p) {
      Vec v = apply_base(2, 1, 1, 1, p.coords);
      v[2] = omega - p.coords[2];
      return TorusPoint(v);
    };
    sys.jacobian = [](const TorusPoint&) {
      Mat J(3, 3);
      J << 2, 1, 0, 1, 1, 0, 0, 0, -1;
      return J;
    };
    sys.inverse_rule = [omega](const TorusPoint& p) {
      Vec v = apply_base(1, -1, -1, 2, p.coords);
      v[2] = omega - p.coords[2];
      return TorusPoint(v);
    };
  } else {
    throw ConfigInvalid("unknown system id '" + spec.id + "'");
  }
  return sys;
}

TorusPoint newton_inverse(const SystemInstance& f, const TorusPoint& y,
                          const TorusPoint& guess) {
  TorusPoint x = guess;
  for (int it = 0; it < 50; ++it) {
    Vec r = log_map(y, f.eval(x)).components;
    if (r.norm() < 1e-13) return x;
    Vec step = f.jacobian(x).partialPivLu().solve(r);
    if (!step.allFinite() || step.norm() > 0.5)
      throw NewtonDivergence("newton_inverse step");
    x = exp_map(x, Vec(-step));
  }
  throw NewtonDivergence("newton_inverse: no convergence in 50 iterations");
}

TorusPoint SystemInstance::inverse(const TorusPoint& y) const {
  if (inverse_rule) return inverse_rule(y);
  return newton_inverse(*this, y, y);
}

TorusPoint SystemInstance::iterate(const TorusPoint& x, int k) const {
  TorusPoint p = x;
  if (k >= 0)
    for (int i = 0; i < k; ++i) p = eval(p);
  else
    for (int i = 0; i < -k; ++i) p = inverse(p);
  return p;
}

Mat SystemInstance::orbit_jacobian(const TorusPoint& x, int k) const {
  Mat J = Mat::Identity(dim, dim);
  TorusPoint p = x;
  for (int i = 0; i < k; ++i) {
    J = jacobian(p) * J;
    p = eval(p);
  }
  return J;
}

}  // namespace phclose
