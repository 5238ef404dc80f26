#include "phclose/degree.hpp"

#include <cmath>
#include <vector>

namespace phclose {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Evaluator {
  const MapHandle* H;
  mutable long count = 0;

  Vec displacement(double t, const Vec& v) const {
    ++count;
    Vec img = H->eval(t, v);
    Vec p(v.size() + 1);
    p[0] = t;
    p.tail(v.size()) = v;
    return p - img;
  }
};

// ---- s = 1: winding number on a rectangle boundary --------------------

double angle_of(const Vec& w) { return std::atan2(w[1], w[0]); }

// Accumulates the angle swept by the displacement between two boundary
// parameters, refining recursively until each step turns by < pi/4.
double sweep(const Evaluator& ev,
             const std::function<std::pair<double, Vec>(double)>& edge,
             double s0, double s1, const Vec& w0, const Vec& w1, int depth) {
  double d = angle_of(w1) - angle_of(w0);
  while (d > kPi) d -= 2 * kPi;
  while (d <= -kPi) d += 2 * kPi;
  if (std::abs(d) < kPi / 4 || depth > 24) return d;
  double sm = 0.5 * (s0 + s1);
  auto [t, v] = edge(sm);
  Vec wm = ev.displacement(t, v);
  if (wm.norm() < 1e-12) throw DegreeZeroUnexpected("zero on boundary");
  return sweep(ev, edge, s0, sm, w0, wm, depth + 1) +
         sweep(ev, edge, sm, s1, wm, w1, depth + 1);
}

// Winding of the displacement around the rectangle [t0,t1] x [v0,v1].
int winding_rect(const Evaluator& ev, double t0, double t1, double v0,
                 double v1, int base_samples) {
  // boundary parametrized counterclockwise by s in [0,4)
  auto edge = [&](double s) -> std::pair<double, Vec> {
    Vec v(1);
    double seg = s - std::floor(s / 4.0) * 4.0;
    if (seg < 1) {
      v[0] = v0;
      return {t0 + seg * (t1 - t0), v};
    } else if (seg < 2) {
      v[0] = v0 + (seg - 1) * (v1 - v0);
      return {t1, v};
    } else if (seg < 3) {
      v[0] = v1;
      return {t1 - (seg - 2) * (t1 - t0), v};
    }
    v[0] = v1 - (seg - 3) * (v1 - v0);
    return {t0, v};
  };
  int n = std::max(16, base_samples);
  std::vector<Vec> w(n + 1);
  std::vector<double> s(n + 1);
  for (int i = 0; i <= n; ++i) {
    s[i] = 4.0 * i / n;
    auto [t, v] = edge(s[i]);
    w[i] = ev.displacement(t, v);
    if (w[i].norm() < 1e-12) throw DegreeZeroUnexpected("zero on boundary");
  }
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += sweep(ev, edge, s[i], s[i + 1], w[i], w[i + 1], 0);
  return static_cast<int>(std::lround(total / (2 * kPi)));
}

// ---- s = 2: solid-angle degree on the cylinder boundary ----------------

double solid_angle(const Vec& a, const Vec& b, const Vec& c) {
  // Van Oosterom-Strackee
  double det = a[0] * (b[1] * c[2] - b[2] * c[1]) -
               a[1] * (b[0] * c[2] - b[2] * c[0]) +
               a[2] * (b[0] * c[1] - b[1] * c[0]);
  double denom = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
  return 2.0 * std::atan2(det, denom);
}

struct Tri {
  Vec p0, p1, p2;  // domain points (t, v1, v2), outward oriented
};

Vec cyl_point(double t, double r, double phi) {
  Vec p(3);
  p << t, r * std::cos(phi), r * std::sin(phi);
  return p;
}

void push_quad(std::vector<Tri>& tris, const Vec& a, const Vec& b,
               const Vec& c, const Vec& d) {
  tris.push_back({a, b, c});
  tris.push_back({a, c, d});
}

// Triangulated boundary of [t0,t1] x D^2, outward oriented.
std::vector<Tri> cylinder_boundary(double t0, double t1, int nr, int nphi) {
  std::vector<Tri> tris;
  auto phi_at = [&](int j) { return 2 * kPi * j / nphi; };
  // side r = 1: outward normal points away from the axis
  for (int j = 0; j < nphi; ++j) {
    Vec a = cyl_point(t0, 1, phi_at(j)), b = cyl_point(t1, 1, phi_at(j));
    Vec c = cyl_point(t1, 1, phi_at(j + 1)), d = cyl_point(t0, 1, phi_at(j + 1));
    push_quad(tris, a, b, c, d);
  }
  // caps: t = t0 (outward = -t), t = t1 (outward = +t)
  for (int i = 0; i < nr; ++i) {
    double r0 = static_cast<double>(i) / nr, r1 = static_cast<double>(i + 1) / nr;
    for (int j = 0; j < nphi; ++j) {
      double p0 = phi_at(j), p1 = phi_at(j + 1);
      if (i == 0) {
        tris.push_back({cyl_point(t1, 0, 0), cyl_point(t1, r1, p0),
                        cyl_point(t1, r1, p1)});
        tris.push_back({cyl_point(t0, 0, 0), cyl_point(t0, r1, p1),
                        cyl_point(t0, r1, p0)});
      } else {
        push_quad(tris, cyl_point(t1, r0, p0), cyl_point(t1, r1, p0),
                  cyl_point(t1, r1, p1), cyl_point(t1, r0, p1));
        push_quad(tris, cyl_point(t0, r0, p1), cyl_point(t0, r1, p1),
                  cyl_point(t0, r1, p0), cyl_point(t0, r0, p0));
      }
    }
  }
  return tris;
}

Vec unit_displacement(const Evaluator& ev, const Vec& p) {
  Vec w = ev.displacement(p[0], p.tail(p.size() - 1));
  double n = w.norm();
  if (n < 1e-12) throw DegreeZeroUnexpected("zero on boundary");
  return w / n;
}

double tri_solid_angle(const Evaluator& ev, const Tri& tri, const Vec& u0,
                       const Vec& u1, const Vec& u2, int depth) {
  double spread = std::max({(u0 - u1).norm(), (u1 - u2).norm(),
                            (u0 - u2).norm()});
  if (spread < 0.5 || depth > 8) return solid_angle(u0, u1, u2);
  Vec m01 = 0.5 * (tri.p0 + tri.p1), m12 = 0.5 * (tri.p1 + tri.p2),
      m02 = 0.5 * (tri.p0 + tri.p2);
  Vec v01 = unit_displacement(ev, m01), v12 = unit_displacement(ev, m12),
      v02 = unit_displacement(ev, m02);
  return tri_solid_angle(ev, {tri.p0, m01, m02}, u0, v01, v02, depth + 1) +
         tri_solid_angle(ev, {m01, tri.p1, m12}, v01, u1, v12, depth + 1) +
         tri_solid_angle(ev, {m02, m12, tri.p2}, v02, v12, u2, depth + 1) +
         tri_solid_angle(ev, {m01, m12, m02}, v01, v12, v02, depth + 1);
}

int degree_s2(const Evaluator& ev, double t0, double t1) {
  auto tris = cylinder_boundary(t0, t1, 6, 24);
  double total = 0.0;
  for (const auto& tri : tris) {
    Vec u0 = unit_displacement(ev, tri.p0);
    Vec u1 = unit_displacement(ev, tri.p1);
    Vec u2 = unit_displacement(ev, tri.p2);
    total += tri_solid_angle(ev, tri, u0, u1, u2, 0);
  }
  return static_cast<int>(std::lround(total / (4 * kPi)));
}

int degree_on(const Evaluator& ev, const BoxDomain& dom, double t0, double t1) {
  if (dom.s == 0) {
    Vec none(0);
    double da = ev.displacement(t0, none)[0];
    double db = ev.displacement(t1, none)[0];
    if (std::abs(da) < 1e-14 || std::abs(db) < 1e-14)
      throw DegreeZeroUnexpected("zero on interval endpoint");
    return (da < 0 && db > 0) ? 1 : ((da > 0 && db < 0) ? -1 : 0);
  }
  if (dom.s == 1) return winding_rect(ev, t0, t1, -1.0, 1.0, 256);
  if (dom.s == 2) return degree_s2(ev, t0, t1);
  throw ConfigInvalid("degree: s must be 0, 1 or 2");
}

// Damped Newton on the displacement with finite-difference Jacobian.
bool newton_fixed_point(const Evaluator& ev, const BoxDomain& dom, double t0,
                        double t1, Vec p, double tol, double* rt, Vec* rv,
                        double* rres) {
  int n = 1 + dom.s;
  auto clamp = [&](Vec q) {
    q[0] = std::min(t1, std::max(t0, q[0]));
    if (dom.s > 0) {
      double vn = q.tail(dom.s).norm();
      if (vn > 1.0) q.tail(dom.s) *= 1.0 / vn;
    }
    return q;
  };
  Vec P = ev.displacement(p[0], p.tail(dom.s));
  for (int it = 0; it < 60; ++it) {
    double res = P.norm();
    if (res < tol) {
      *rt = p[0];
      *rv = p.tail(dom.s);
      *rres = res;
      return true;
    }
    Mat J(n, n);
    double h = 1e-6;
    for (int j = 0; j < n; ++j) {
      Vec pp = p, pm = p;
      pp[j] += h;
      pm[j] -= h;
      J.col(j) = (ev.displacement(pp[0], pp.tail(dom.s)) -
                  ev.displacement(pm[0], pm.tail(dom.s))) /
                 (2 * h);
    }
    Vec step = J.fullPivLu().solve(P);
    if (!step.allFinite()) return false;
    double damp = 1.0;
    bool improved = false;
    for (int half = 0; half < 12; ++half) {
      Vec q = clamp(p - damp * step);
      Vec Pq = ev.displacement(q[0], q.tail(dom.s));
      if (Pq.norm() < res) {
        p = q;
        P = Pq;
        improved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!improved) return false;
  }
  return false;
}

}  // namespace

BoundaryReport boundary_hypotheses_check(const MapHandle& H,
                                         const BoxDomain& dom, int samples) {
  BoundaryReport rep;
  rep.slack_h2 = 1.0;
  rep.slack_a = 1e300;
  rep.slack_b = 1e300;
  int nt = std::max(4, static_cast<int>(std::sqrt(double(samples))));
  int nv = std::max(4, samples / nt);
  auto ball_point = [&](int i, int total) {
    Vec v(dom.s);
    if (dom.s == 1) {
      v[0] = -1.0 + 2.0 * i / std::max(1, total - 1);
    } else if (dom.s == 2) {
      double r = std::sqrt(static_cast<double>(i % 17) / 16.0);
      double phi = 2 * kPi * (i * 0.61803398874989479);
      v << r * std::cos(phi), r * std::sin(phi);
    }
    return v;
  };
  for (int i = 0; i < nt; ++i) {
    double t = dom.a + (dom.b - dom.a) * i / std::max(1, nt - 1);
    for (int j = 0; j < nv; ++j) {
      Vec v = ball_point(j, nv);
      Vec img = H.eval(t, v);
      if (dom.s > 0)
        rep.slack_h2 = std::min(rep.slack_h2, 1.0 - img.tail(dom.s).norm());
    }
  }
  for (int j = 0; j < std::max(nv, samples / 2); ++j) {
    Vec v = ball_point(j, std::max(nv, samples / 2));
    rep.slack_a = std::min(rep.slack_a, H.eval(dom.a, v)[0] - dom.a);
    rep.slack_b = std::min(rep.slack_b, dom.b - H.eval(dom.b, v)[0]);
  }
  rep.pass = rep.slack_a > 0 && rep.slack_b > 0 &&
             (dom.s == 0 || rep.slack_h2 > 0);
  return rep;
}

int boundary_degree(const MapHandle& H, const BoxDomain& dom) {
  Evaluator ev{&H};
  return degree_on(ev, dom, dom.a, dom.b);
}

FixedPointResult degree_fixed_point(const MapHandle& H, const BoxDomain& dom,
                                    double tol) {
  Evaluator ev{&H};
  FixedPointResult result;
  result.boundary_degree = degree_on(ev, dom, dom.a, dom.b);
  if (result.boundary_degree != 1)
    throw DegreeZeroUnexpected(
        "initial boundary degree " + std::to_string(result.boundary_degree) +
        " != 1; refine the hypotheses sampling");

  double t0 = dom.a, t1 = dom.b;
  for (int level = 0; level < 80; ++level) {
    // Newton attempts from a small deterministic grid of starts.
    for (int gi = 0; gi < 3; ++gi) {
      for (int gj = 0; gj < (dom.s == 0 ? 1 : 3); ++gj) {
        Vec p(1 + dom.s);
        p[0] = t0 + (t1 - t0) * (0.25 + 0.25 * gi);
        if (dom.s == 1) p[1] = -0.5 + 0.5 * gj;
        if (dom.s == 2) {
          p[1] = -0.4 + 0.4 * gj;
          p[2] = 0.2 * gi - 0.2;
        }
        double rt, rres;
        Vec rv;
        if (newton_fixed_point(ev, dom, dom.a, dom.b, p, tol, &rt, &rv,
                               &rres)) {
          result.t = rt;
          result.v = rv;
          result.residual = rres;
          result.evaluations = ev.count;
          result.subdivisions = level;
          return result;
        }
      }
    }
    // Subdivide in t; both children stay cylinders. Jitter the cut when the
    // displacement vanishes on it.
    double frac = 0.5;
    int child_deg = 0;
    double m = t0;
    for (int attempt = 0; attempt < 4; ++attempt) {
      m = t0 + frac * (t1 - t0);
      try {
        int dl = degree_on(ev, dom, t0, m);
        int dr = degree_on(ev, dom, m, t1);
        if (dl + dr != 1)
          throw DegreeZeroUnexpected("child degrees do not sum to parent");
        if (dl == 1) {
          t1 = m;
          child_deg = 1;
        } else {
          t0 = m;
          child_deg = 1;
        }
        break;
      } catch (const DegreeZeroUnexpected&) {
        frac = 0.5 + 0.01 * (attempt + 1);  // domain inflation by 1% steps
      }
    }
    if (child_deg != 1)
      throw DegreeZeroUnexpected("subdivision failed to localize the degree");
    if (t1 - t0 < 1e-12) break;
  }
  throw BudgetExhausted("degree_fixed_point: budget exhausted");
}

}  // namespace phclose
