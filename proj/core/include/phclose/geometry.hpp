#pragma once

#include <Eigen/Dense>
#include <optional>

#include "phclose/error.hpp"

namespace phclose {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Point on the flat torus T^d, all coordinates normalized into [0,1).
struct TorusPoint {
  Vec coords;

  TorusPoint() = default;
  explicit TorusPoint(Vec c);
  TorusPoint(double x, double y, double z);

  int dim() const { return static_cast<int>(coords.size()); }
};

/// Tangent vector in the flat chart. Components are base-independent on T^d;
/// the base point is kept for bookkeeping of frames and metrics.
struct TangentVector {
  TorusPoint base;
  Vec components;

  int dim() const { return static_cast<int>(components.size()); }
  double norm() const { return components.norm(); }
};

/// m orthonormal columns spanning a subspace of T_x T^d.
struct SubspaceFrame {
  TorusPoint base;
  Mat columns;  // d x m, orthonormal to 1e-12

  int dim() const { return static_cast<int>(columns.rows()); }
  int rank() const { return static_cast<int>(columns.cols()); }
};

// Normalizes a coordinate vector into [0,1)^d. Idempotent.
Vec normalize_coords(const Vec& c);

// Exact exponential map on the flat torus: (x + v) mod 1.
TorusPoint exp_map(const TorusPoint& x, const TangentVector& v);
TorusPoint exp_map(const TorusPoint& x, const Vec& v);

// Inverse of exp_map on the injectivity box: every component of the result
// lies in (-1/2, 1/2]. A coordinate difference of exactly 1/2 is ambiguous;
// the tie is broken to +1/2 and reported through `ambiguous` when provided.
TangentVector log_map(const TorusPoint& x, const TorusPoint& y,
                      bool* ambiguous = nullptr);

// Euclidean length of the shortest representative of y - x.
double torus_distance(const TorusPoint& x, const TorusPoint& y);

// Distance in T_xM from the normalized vector v/|v| to the subspace spanned
// by E, i.e. |(I - P_E)(v/|v|)| with P_E the orthogonal projection. When
// `metric` is given the projection, norms and normalization all use that
// inner product. Range [0, 2] by construction, <= 1 for linear subspaces.
double angle_to_subspace(const TangentVector& v, const SubspaceFrame& E,
                         const Mat* metric = nullptr);

// Orthonormalizes the columns of A (thin QR with sign fix). Throws
// DegenerateFrame if A is rank-deficient.
Mat orthonormalize(const Mat& A);

// Assembles a frame, checking orthonormality to 1e-12.
SubspaceFrame make_frame(const TorusPoint& base, const Mat& columns);

// Projection matrix onto span(E), orthogonal in the given metric
// (P = E (E^T G E)^{-1} E^T G); Euclidean when metric is null.
Mat projector(const Mat& E, const Mat* metric = nullptr);

inline double metric_norm(const Vec& v, const Mat* metric) {
  return metric ? std::sqrt(v.dot(*metric * v)) : v.norm();
}

}  // namespace phclose
