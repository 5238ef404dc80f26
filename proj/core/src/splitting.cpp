#include "phclose/splitting.hpp"

#include <cmath>

namespace phclose {

namespace {

// Fixed generic start frames: coordinate axes with a small deterministic mix
// so power iteration never starts exactly inside an invariant subspace.
Mat generic_frame(int d, int m) {
  Mat A = Mat::Zero(d, m);
  for (int j = 0; j < m; ++j) {
    A(j % d, j) = 1.0;
    for (int i = 0; i < d; ++i) A(i, j) += 1e-3 * (1.0 + i + j);
  }
  return orthonormalize(A);
}

// Distance between equal-rank subspaces as the Frobenius norm of the
// projection residual, sqrt(sum sin^2 of principal angles). Linear in the
// gap, so it resolves angles all the way down to machine precision.
double frame_distance(const Mat& A, const Mat& B) {
  Mat QA = orthonormalize(A);
  Mat QB = orthonormalize(B);
  return (QB - QA * (QA.transpose() * QB)).norm();
}

struct IterationResult {
  Mat narrow;   // u- (or s-) dimensional limit frame
  Mat wide;     // (u+1)- (or (s+1)-) dimensional limit frame
  double last_change = 1.0;
};

// Runs both power iterations (narrow and wide frame) along a precomputed
// orbit with a shared Jacobian evaluation per step. `invert` selects the
// pull-back direction.
IterationResult iterate_frames(const SystemInstance& f,
                               const std::vector<TorusPoint>& orbit,
                               bool invert, int m_narrow, double tol) {
  IterationResult r;
  r.narrow = generic_frame(f.dim, m_narrow);
  r.wide = generic_frame(f.dim, m_narrow + 1);
  int n = static_cast<int>(orbit.size()) - 1;
  for (int i = 0; i < n; ++i) {
    const TorusPoint& p = invert ? orbit[i + 1] : orbit[i];
    Mat J = f.jacobian(p);
    Mat Qn, Qw;
    if (invert) {
      auto lu = J.partialPivLu();
      Qn = orthonormalize(lu.solve(r.narrow));
      Qw = orthonormalize(lu.solve(r.wide));
    } else {
      Qn = orthonormalize(J * r.narrow);
      Qw = orthonormalize(J * r.wide);
    }
    double ch = std::max(frame_distance(Qn, r.narrow),
                         frame_distance(Qw, r.wide));
    r.narrow = Qn;
    r.wide = Qw;
    if (i > 2 && ch < tol) {
      r.last_change = ch;
      return r;
    }
    r.last_change = ch;
  }
  return r;
}

// Intersection of two subspaces as the smallest eigenvector of the sum of
// their complementary projectors.
Vec subspace_intersection(const Mat& U, const Mat& V) {
  int d = static_cast<int>(U.rows());
  Mat M = (Mat::Identity(d, d) - projector(U)) +
          (Mat::Identity(d, d) - projector(V));
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  if (es.eigenvalues()[0] > 1e-6)
    throw DegenerateFrame("subspace_intersection: no common direction");
  return es.eigenvectors().col(0);
}

Vec oriented_center(Vec ec, int axis, int d) {
  int a = axis < 0 ? d - 1 : axis;
  if (std::abs(ec[a]) < 1e-6)
    throw OrientationUndefined("center direction nearly orthogonal to axis");
  if (ec[a] < 0) ec = -ec;
  return ec;
}

}  // namespace

Mat SplittingFrame::basis() const {
  int d = Es.dim();
  Mat B(d, d);
  B.leftCols(Es.rank()) = Es.columns;
  B.col(Es.rank()) = Ec.components;
  B.rightCols(Eu.rank()) = Eu.columns;
  return B;
}

SplittingFrame estimate_splitting(const SystemInstance& f, const TorusPoint& x,
                                  const SplittingOptions& opt) {
  if (opt.iterations < 1) throw NotConverged("estimate_splitting: n < 1");
  const int n = opt.iterations;

  std::vector<TorusPoint> backward(n + 1);  // f^{-n}(x) ... x
  backward[n] = x;
  for (int i = n; i > 0; --i) backward[i - 1] = f.inverse(backward[i]);
  std::vector<TorusPoint> forward(n + 1);  // x ... f^{n}(x)
  forward[0] = x;
  for (int i = 0; i < n; ++i) forward[i + 1] = f.eval(forward[i]);

  // Eu and Ecu grow under Df along the backward orbit pushed forward;
  // Es and Ecs grow under Df^{-1} pulled back along the forward orbit.
  IterationResult fwd = iterate_frames(f, backward, false, opt.u, opt.tol);
  std::vector<TorusPoint> rev(forward.rbegin(), forward.rend());
  IterationResult bwd = iterate_frames(f, rev, true, opt.s, opt.tol);

  if (fwd.last_change > 0.05 || bwd.last_change > 0.05)
    throw NotConverged("estimate_splitting: frames not stabilized after " +
                       std::to_string(n) + " iterations");

  Vec ec = oriented_center(subspace_intersection(bwd.wide, fwd.wide),
                           opt.orientation_axis, f.dim);

  SplittingFrame frame;
  frame.base = x;
  frame.Es = make_frame(x, bwd.narrow);
  frame.Eu = make_frame(x, fwd.narrow);
  frame.Ec = TangentVector{x, ec};
  return frame;
}

double invariance_residual(const SystemInstance& f, const TorusPoint& x,
                           const SplittingOptions& opt) {
  SplittingFrame at_x = estimate_splitting(f, x, opt);
  SplittingFrame at_fx = estimate_splitting(f, f.eval(x), opt);
  Mat J = f.jacobian(x);
  double r = frame_distance(J * at_x.Es.columns, at_fx.Es.columns);
  r = std::max(r, frame_distance(J * at_x.Eu.columns, at_fx.Eu.columns));
  r = std::max(r,
               frame_distance(J * at_x.Ec.components, at_fx.Ec.components));
  return r;
}

double restricted_norm(const Mat& J, const Mat& frame, const Mat* Gx,
                       const Mat* Gy) {
  // Gx-orthonormalize the domain frame, then take the largest Gy-singular
  // value of the image.
  Mat E = frame;
  if (Gx) {
    Mat G = E.transpose() * (*Gx) * E;
    Mat Linv = Eigen::LLT<Mat>(G).matrixL().solve(
        Mat::Identity(E.cols(), E.cols()));
    E = E * Linv.transpose();
  }
  Mat M = J * E;
  Mat S = Gy ? Mat(M.transpose() * (*Gy) * M) : Mat(M.transpose() * M);
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double restricted_conorm(const Mat& J, const Mat& frame, const Mat* Gx,
                         const Mat* Gy) {
  Mat E = frame;
  if (Gx) {
    Mat G = E.transpose() * (*Gx) * E;
    Mat Linv = Eigen::LLT<Mat>(G).matrixL().solve(
        Mat::Identity(E.cols(), E.cols()));
    E = E * Linv.transpose();
  }
  Mat M = J * E;
  Mat S = Gy ? Mat(M.transpose() * (*Gy) * M) : Mat(M.transpose() * M);
  Eigen::SelfAdjointEigenSolver<Mat> es(S);
  return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
}

DominationReport domination_constants(const SystemInstance& f,
                                      const std::vector<TorusPoint>& samples,
                                      const SplittingOptions& opt) {
  DominationReport rep;
  rep.samples = static_cast<int>(samples.size());
  for (const auto& x : samples) {
    SplittingFrame fr = estimate_splitting(f, x, opt);
    Mat J = f.jacobian(x);
    rep.max_rate_s =
        std::max(rep.max_rate_s, restricted_norm(J, fr.Es.columns));
    rep.max_rate_u_inv = std::max(
        rep.max_rate_u_inv, 1.0 / restricted_conorm(J, fr.Eu.columns));
  }
  double worst = std::max(rep.max_rate_s, rep.max_rate_u_inv);
  if (worst >= 1.0)
    throw DominationFailure("sampled rate >= 1 (worst = " +
                            std::to_string(worst) + ")");
  rep.lambda = std::sqrt(worst);  // geometric mean of worst and 1
  rep.margin_s = rep.lambda - rep.max_rate_s;
  rep.margin_u = rep.lambda - rep.max_rate_u_inv;
  return rep;
}

Mat adapted_metric(const SplittingFrame& frame) {
  Mat B = frame.basis();
  Eigen::JacobiSVD<Mat> svd(B);
  double cond =
      svd.singularValues().maxCoeff() / svd.singularValues().minCoeff();
  if (cond > 1e8) throw IllConditioned("adapted_metric: cond(B) > 1e8");
  return (B * B.transpose()).inverse();
}

void build_adapted_metric(std::vector<SplittingFrame>& frames) {
  for (auto& fr : frames) fr.metric = adapted_metric(fr);
}

int center_orientation_transport(const SystemInstance& f, const TorusPoint& x,
                                 int k, const SplittingOptions& opt) {
  int sign = 1;
  TorusPoint p = x;
  Vec ec = estimate_splitting(f, p, opt).Ec.components;
  for (int i = 0; i < k; ++i) {
    TorusPoint q = f.eval(p);
    Vec ec_next = estimate_splitting(f, q, opt).Ec.components;
    double dot = (f.jacobian(p) * ec).dot(ec_next);
    if (std::abs(dot) < 1e-6)
      throw NearTangency("center transport inner product below 1e-6");
    if (dot < 0) sign = -sign;
    p = q;
    ec = ec_next;
  }
  return sign;
}

}  // namespace phclose
