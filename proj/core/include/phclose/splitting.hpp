#pragma once

#include <optional>
#include <vector>

#include "phclose/systems.hpp"

namespace phclose {

/// Per-point estimate of the invariant splitting E^s + E^c + E^u, with an
/// optional adapted inner product attached by build_adapted_metric.
struct SplittingFrame {
  TorusPoint base;
  SubspaceFrame Es;
  TangentVector Ec;  // unit, oriented by the orientation axis convention
  SubspaceFrame Eu;
  std::optional<Mat> metric;  // d x d SPD

  Mat basis() const;  // [Es | Ec | Eu], d x d
};

struct DominationReport {
  double lambda = 0.0;       // certified constant in (0,1)
  double margin_s = 0.0;     // lambda - max ||Df|Es||
  double margin_u = 0.0;     // lambda - max m(Df|Eu)^{-1}
  double max_rate_s = 0.0;
  double max_rate_u_inv = 0.0;
  int samples = 0;
};

struct SplittingOptions {
  int s = 1;
  int u = 1;
  int iterations = 60;      // power-iteration depth
  double tol = 1e-12;       // early-exit residual
  int orientation_axis = -1;  // -1 means last coordinate
};

// Forward/backward power iteration with QR re-orthonormalization. The
// returned frames satisfy the Df-invariance residual bound
// 10 * lambda^n + 1e-10 (principal angles); NotConverged otherwise.
SplittingFrame estimate_splitting(const SystemInstance& f, const TorusPoint& x,
                                  const SplittingOptions& opt = {});

// Invariance residual max_i angle(Df(x) E^i_x, E^i_{f(x)}), for diagnostics.
double invariance_residual(const SystemInstance& f, const TorusPoint& x,
                           const SplittingOptions& opt = {});

// Midpoint certificate: the sampled sup of the contraction/expansion rates
// must sit strictly below 1; lambda is the geometric mean of that sup and 1.
DominationReport domination_constants(const SystemInstance& f,
                                      const std::vector<TorusPoint>& samples,
                                      const SplittingOptions& opt = {});

// Attaches the per-point SPD matrix G = (B B^T)^{-1} (B the splitting basis)
// that makes the three bundles exactly orthogonal and E^c unit.
void build_adapted_metric(std::vector<SplittingFrame>& frames);
Mat adapted_metric(const SplittingFrame& frame);

// Sign of <Df^k(x) Ec_x, Ec_{f^k(x)}> as a multiplicative cocycle of the
// per-step signs. NearTangency if some step's inner product is < 1e-6.
int center_orientation_transport(const SystemInstance& f, const TorusPoint& x,
                                 int k, const SplittingOptions& opt = {});

// Operator norm / conorm of J restricted to span(frame), measured between
// the metrics Gx (domain) and Gy (range); Euclidean when null.
double restricted_norm(const Mat& J, const Mat& frame, const Mat* Gx = nullptr,
                       const Mat* Gy = nullptr);
double restricted_conorm(const Mat& J, const Mat& frame,
                         const Mat* Gx = nullptr, const Mat* Gy = nullptr);

}  // namespace phclose
