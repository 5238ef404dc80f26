#include <random>

#include "doctest.h"
#include "phclose/splitting.hpp"

using namespace phclose;

namespace {

TorusPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec c(3);
  for (int i = 0; i < 3; ++i) c[i] = u(rng);
  return TorusPoint(c);
}

// Eigen-decomposition oracle for A = [[2,1],[1,1]].
struct CatOracle {
  double mu = (3.0 + std::sqrt(5.0)) / 2.0;
  double lam = (3.0 - std::sqrt(5.0)) / 2.0;
  Vec vu, vs;
  CatOracle() {
    vu = Vec(3);
    vu << 1.0, mu - 2.0, 0.0;
    vu.normalize();
    vs = Vec(3);
    vs << 1.0, lam - 2.0, 0.0;
    vs.normalize();
  }
};

}  // namespace

TEST_CASE("product system splitting matches the eigen oracle") {
  auto f = make_system(catalog()[0]);
  CatOracle oracle;
  std::mt19937_64 rng(29);
  for (int it = 0; it < 20; ++it) {
    TorusPoint x = random_point(rng);
    SplittingFrame fr = estimate_splitting(f, x);
    CHECK(std::abs(std::abs(fr.Eu.columns.col(0).dot(oracle.vu)) - 1.0) < 1e-10);
    CHECK(std::abs(std::abs(fr.Es.columns.col(0).dot(oracle.vs)) - 1.0) < 1e-10);
    Vec vertical(3);
    vertical << 0, 0, 1;
    CHECK((fr.Ec.components - vertical).norm() < 1e-10);
  }
}

TEST_CASE("skew at epsilon 0 equals the product result") {
  auto f0 = make_system({"skew", std::sqrt(2.0) - 1.0, 0.0});
  auto fp = make_system(catalog()[0]);
  TorusPoint x(0.37, 0.81, 0.5);
  SplittingFrame a = estimate_splitting(f0, x);
  SplittingFrame b = estimate_splitting(fp, x);
  CHECK((a.basis() - b.basis()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("skew invariance residual decays geometrically with rate <= 0.4") {
  auto f = make_system(catalog()[1]);
  TorusPoint x(0.123, 0.456, 0.789);
  std::vector<int> depths = {8, 12, 16, 20};
  std::vector<double> residuals;
  for (int n : depths) {
    SplittingOptions opt;
    opt.iterations = n;
    residuals.push_back(invariance_residual(f, x, opt));
  }
  for (size_t i = 1; i < residuals.size(); ++i) {
    double per_step =
        std::pow(residuals[i] / residuals[i - 1],
                 1.0 / double(depths[i] - depths[i - 1]));
    CHECK(per_step <= 0.4 + 1e-6);
  }
  // converged frames: residual below 1e-8 at default depth
  CHECK(invariance_residual(f, x) < 1e-8);
}

TEST_CASE("Df-invariance residual below 1e-8 at sampled points") {
  std::mt19937_64 rng(31);
  for (const auto& spec : catalog()) {
    auto f = make_system(spec);
    for (int it = 0; it < 20; ++it)
      CHECK(invariance_residual(f, random_point(rng)) < 1e-8);
  }
}

TEST_CASE("domination constants: product eigen rates, skew margin") {
  auto f = make_system(catalog()[0]);
  std::mt19937_64 rng(37);
  std::vector<TorusPoint> samples;
  for (int i = 0; i < 50; ++i) samples.push_back(random_point(rng));
  DominationReport rep = domination_constants(f, samples);
  CatOracle oracle;
  CHECK(rep.max_rate_s == doctest::Approx(oracle.lam).epsilon(1e-10));
  CHECK(rep.max_rate_u_inv == doctest::Approx(1.0 / oracle.mu).epsilon(1e-10));
  CHECK(rep.lambda > rep.max_rate_s);
  CHECK(rep.lambda < 1.0);

  auto skew = make_system(catalog()[1]);
  std::vector<TorusPoint> s2;
  for (int i = 0; i < 200; ++i) s2.push_back(random_point(rng));
  DominationReport rs = domination_constants(skew, s2);
  CHECK(rs.lambda < 0.7);
  CHECK(rs.margin_s > 0);
  CHECK(rs.margin_u > 0);

  // identity center norm for every catalog system
  for (const auto& spec : catalog()) {
    auto sys = make_system(spec);
    TorusPoint x = random_point(rng);
    SplittingFrame fr = estimate_splitting(sys, x);
    Mat ec = fr.Ec.components;
    CHECK(restricted_norm(sys.jacobian(x), ec) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("strict domination chain at sampled points") {
  std::mt19937_64 rng(41);
  for (const auto& spec : catalog()) {
    auto f = make_system(spec);
    for (int it = 0; it < 30; ++it) {
      TorusPoint x = random_point(rng);
      SplittingFrame fr = estimate_splitting(f, x);
      Mat J = f.jacobian(x);
      double ns = restricted_norm(J, fr.Es.columns);
      double nc = restricted_norm(J, Mat(fr.Ec.components));
      double mc = restricted_conorm(J, Mat(fr.Ec.components));
      double mu = restricted_conorm(J, fr.Eu.columns);
      CHECK(ns < std::min(1.0, mc));
      CHECK(std::max(1.0, nc) < mu);
    }
  }
}

TEST_CASE("adapted metric orthogonalizes the splitting") {
  auto f = make_system(catalog()[1]);
  std::mt19937_64 rng(43);
  std::vector<SplittingFrame> frames;
  for (int i = 0; i < 30; ++i)
    frames.push_back(estimate_splitting(f, random_point(rng)));
  build_adapted_metric(frames);
  for (const auto& fr : frames) {
    REQUIRE(fr.metric.has_value());
    const Mat& G = *fr.metric;
    Mat B = fr.basis();
    Mat gram = B.transpose() * G * B;
    CHECK((gram - Mat::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);

    // angle bound of the adapted metric: unit E^c vector vs E^s + E^u
    Mat su(3, 2);
    su.col(0) = fr.Es.columns.col(0);
    su.col(1) = fr.Eu.columns.col(0);
    SubspaceFrame suf{fr.base, su};
    double a = angle_to_subspace(fr.Ec, suf, &G);
    CHECK(a == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(a > 1.0 - 1e-3);

    // projection norms <= 2 in the adapted metric (sampled sup)
    Mat Binv = B.inverse();
    std::normal_distribution<double> gdist(0.0, 1.0);
    for (int block = 0; block < 3; ++block) {
      Mat sel = Mat::Zero(3, 3);
      sel(block, block) = 1.0;
      Mat P = B * sel * Binv;
      for (int t = 0; t < 50; ++t) {
        Vec v(3);
        for (int i = 0; i < 3; ++i) v[i] = gdist(rng);
        double nv = std::sqrt(v.dot(G * v));
        if (nv < 1e-12) continue;
        Vec pv = P * v;
        CHECK(std::sqrt(pv.dot(G * pv)) <= 2.0 * nv * (1 + 1e-12));
      }
    }
  }

  // already-orthogonal frames get the identity metric
  SplittingFrame ortho;
  ortho.base = TorusPoint(0, 0, 0);
  Mat I3 = Mat::Identity(3, 3);
  ortho.Es = make_frame(ortho.base, I3.col(0));
  ortho.Ec = TangentVector{ortho.base, I3.col(2)};
  ortho.Eu = make_frame(ortho.base, I3.col(1));
  CHECK((adapted_metric(ortho) - I3).cwiseAbs().maxCoeff() < 1e-12);

  // product system: constant metric over the torus
  auto prod = make_system(catalog()[0]);
  Mat G1 = adapted_metric(estimate_splitting(prod, TorusPoint(0.1, 0.2, 0.3)));
  Mat G2 = adapted_metric(estimate_splitting(prod, TorusPoint(0.7, 0.9, 0.1)));
  CHECK((G1 - G2).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("adapted metric preserves the domination chain pointwise") {
  auto f = make_system(catalog()[1]);
  std::mt19937_64 rng(47);
  for (int it = 0; it < 20; ++it) {
    TorusPoint x = random_point(rng);
    SplittingFrame fx = estimate_splitting(f, x);
    SplittingFrame fy = estimate_splitting(f, f.eval(x));
    Mat Gx = adapted_metric(fx), Gy = adapted_metric(fy);
    Mat J = f.jacobian(x);
    double ns = restricted_norm(J, fx.Es.columns, &Gx, &Gy);
    double nc = restricted_norm(J, Mat(fx.Ec.components), &Gx, &Gy);
    double mc = restricted_conorm(J, Mat(fx.Ec.components), &Gx, &Gy);
    double mu = restricted_conorm(J, fx.Eu.columns, &Gx, &Gy);
    CHECK(ns < std::min(1.0, mc));
    CHECK(std::max(1.0, nc) < mu);
  }
}

TEST_CASE("orientation transport signs and cocycle identity") {
  auto product = make_system(catalog()[0]);
  auto skew = make_system(catalog()[1]);
  auto reversing = make_system(catalog()[2]);
  std::mt19937_64 rng(53);
  for (int k = 1; k <= 6; ++k) {
    TorusPoint x = random_point(rng);
    CHECK(center_orientation_transport(product, x, k) == 1);
    CHECK(center_orientation_transport(skew, x, k) == 1);
    CHECK(center_orientation_transport(reversing, x, k) == (k % 2 ? -1 : 1));
  }
  // cocycle: transport(x, j+k) = transport(f^k x, j) * transport(x, k)
  for (int it = 0; it < 10; ++it) {
    TorusPoint x = random_point(rng);
    int j = 1 + int(rng() % 4), k = 1 + int(rng() % 4);
    int lhs = center_orientation_transport(reversing, x, j + k);
    int rhs = center_orientation_transport(reversing, reversing.iterate(x, k), j) *
              center_orientation_transport(reversing, x, k);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("splitting failure paths") {
  auto f = make_system(catalog()[1]);
  SplittingOptions opt;
  opt.iterations = 1;
  CHECK_THROWS_AS(estimate_splitting(f, TorusPoint(0.1, 0.2, 0.3), opt),
                  NotConverged);

  // broken lambda: epsilon = 2.0 destroys domination at sampled points
  auto broken = make_system({"skew", std::sqrt(2.0) - 1.0, 2.0});
  std::mt19937_64 rng(59);
  std::vector<TorusPoint> samples;
  for (int i = 0; i < 50; ++i) samples.push_back(random_point(rng));
  CHECK_THROWS(domination_constants(broken, samples));
}
