#include "phclose/geometry.hpp"

#include <cmath>

namespace phclose {

Vec normalize_coords(const Vec& c) {
  Vec out(c.size());
  for (int i = 0; i < c.size(); ++i) {
    double v = c[i] - std::floor(c[i]);
    if (v >= 1.0) v -= 1.0;  // guard against floor rounding at 1-eps
    if (v < 0.0) v += 1.0;
    out[i] = v;
  }
  return out;
}

TorusPoint::TorusPoint(Vec c) : coords(normalize_coords(c)) {}

TorusPoint::TorusPoint(double x, double y, double z) {
  Vec c(3);
  c << x, y, z;
  coords = normalize_coords(c);
}

TorusPoint exp_map(const TorusPoint& x, const Vec& v) {
  if (v.size() != x.coords.size()) throw DimensionMismatch("exp_map");
  return TorusPoint(Vec(x.coords + v));
}

TorusPoint exp_map(const TorusPoint& x, const TangentVector& v) {
  return exp_map(x, v.components);
}

TangentVector log_map(const TorusPoint& x, const TorusPoint& y,
                      bool* ambiguous) {
  if (x.coords.size() != y.coords.size()) throw DimensionMismatch("log_map");
  Vec d(x.coords.size());
  bool tie = false;
  for (int i = 0; i < d.size(); ++i) {
    double diff = y.coords[i] - x.coords[i];
    diff -= std::round(diff);          // now in [-1/2, 1/2]
    if (diff == -0.5) {
      diff = 0.5;                      // tie broken to +1/2
      tie = true;
    }
    d[i] = diff;
  }
  if (ambiguous) *ambiguous = tie;
  return TangentVector{x, d};
}

double torus_distance(const TorusPoint& x, const TorusPoint& y) {
  return log_map(x, y).components.norm();
}

Mat orthonormalize(const Mat& A) {
  Eigen::HouseholderQR<Mat> qr(A);
  Mat Q = qr.householderQ() * Mat::Identity(A.rows(), A.cols());
  Mat R = qr.matrixQR().topLeftCorner(A.cols(), A.cols());
  for (int j = 0; j < A.cols(); ++j) {
    if (std::abs(R(j, j)) < 1e-14) throw DegenerateFrame("orthonormalize");
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

SubspaceFrame make_frame(const TorusPoint& base, const Mat& columns) {
  Mat G = columns.transpose() * columns;
  if ((G - Mat::Identity(columns.cols(), columns.cols())).cwiseAbs().maxCoeff() >
      1e-12)
    throw DegenerateFrame("make_frame: columns not orthonormal");
  return SubspaceFrame{base, columns};
}

Mat projector(const Mat& E, const Mat* metric) {
  if (!metric) return E * E.transpose();
  Mat EtGE = E.transpose() * (*metric) * E;
  return E * EtGE.ldlt().solve(E.transpose() * (*metric));
}

double angle_to_subspace(const TangentVector& v, const SubspaceFrame& E,
                         const Mat* metric) {
  double n = metric_norm(v.components, metric);
  if (n < 1e-300) throw ZeroVector("angle_to_subspace");
  Vec unit = v.components / n;
  Vec res = unit - projector(E.columns, metric) * unit;
  return metric_norm(res, metric);
}

}  // namespace phclose
