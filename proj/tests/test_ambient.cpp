#include <cmath>

#include "doctest.h"
#include "support/testrng.hpp"
#include "warpgeo/ambient.hpp"
#include "warpgeo/oracle.hpp"

using namespace warpgeo;

namespace {

WarpSpec make_spec(Eps e, const char* name, double a, double b, double lo, double hi) {
  WarpSpec w{e, lo, hi, Warp::from_name(name, a, b)};
  w.validate();
  return w;
}

// The six catalog fixtures used throughout: (omega, eps) pairs.
std::vector<WarpSpec> catalog_fixtures() {
  return {
      make_spec(Eps::round, "constant", 1.0, 1.0, -1.0, 1.0),
      make_spec(Eps::hyperbolic, "linear", 2.0, 0.0, 0.5, 3.0),
      make_spec(Eps::round, "sin", 1.0, 1.0, 0.3, 2.8),
      make_spec(Eps::round, "sinh", 1.0, 1.0, 0.3, 2.5),
      make_spec(Eps::hyperbolic, "cosh", 1.0, 1.0, -1.5, 1.5),
      make_spec(Eps::flat, "exp", 1.0, 1.0, -1.0, 1.0),
  };
}

}  // namespace

TEST_SUITE_BEGIN("ambient");

TEST_CASE("alpha and beta at catalog points") {
  {
    WarpSpec w = make_spec(Eps::flat, "constant", 1.0, 1.0, -1.0, 1.0);
    AlphaBeta ab = alpha_beta(w, 0.3);
    CHECK(ab.alpha == 0.0);
    CHECK(ab.beta == 0.0);
  }
  {
    WarpSpec w = make_spec(Eps::round, "sin", 1.0, 1.0, 0.3, 2.8);
    AlphaBeta ab = alpha_beta(w, 1.0471975511965976);  // pi/3
    CHECK(ab.alpha == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(ab.beta) < 1e-14);
  }
  {
    WarpSpec w = make_spec(Eps::round, "cosh", 1.0, 1.0, -1.0, 1.0);
    AlphaBeta ab = alpha_beta(w, 0.0);
    CHECK(ab.alpha == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ab.beta == doctest::Approx(2.0).epsilon(1e-14));
    // cross-check derivatives by finite differences
    const double h = 1e-6;
    double d1 = (w.omega.value(h) - w.omega.value(-h)) / (2 * h);
    double d2 = (w.omega.value(h) - 2.0 + w.omega.value(-h)) / (h * h);
    CHECK(std::abs(d1 - w.omega.d1(0.0)) < 1e-9);
    CHECK(std::abs(d2 - w.omega.d2(0.0)) < 1e-4);
  }
  CHECK_THROWS_AS(alpha_beta(make_spec(Eps::flat, "exp", 1.0, 1.0, 0.0, 1.0), 2.0), error);
}

TEST_CASE("alpha' = 2 (w'/w) beta on the catalog") {
  {
    WarpSpec w = make_spec(Eps::flat, "constant", 1.0, 1.0, -1.0, 1.0);
    CHECK(alpha_prime_residual(w, 0.2) < 1e-12);
  }
  {
    WarpSpec w = make_spec(Eps::round, "cosh", 1.0, 1.0, -1.0, 1.0);
    CHECK(alpha_prime_residual(w, 0.5) < 1e-6);
  }
  {
    WarpSpec w = make_spec(Eps::flat, "exp", 1.0, 1.0, 0.0, 2.0);
    CHECK(alpha_prime_residual(w, 1.0) < 1e-6);  // alpha constant, beta = 0
  }
  for (const WarpSpec& w : catalog_fixtures())
    for (int i = 1; i < 100; ++i) {
      const double t = w.t_min + (w.t_max - w.t_min) * i / 100.0;
      INFO(w.omega.name(), " at t=", t);
      CHECK(alpha_prime_residual(w, t) < 1e-6);
    }
}

TEST_CASE("warped metric values") {
  WarpSpec w = make_spec(Eps::round, "constant", 2.0, 1.0, -1.0, 1.0);
  ModelPoint base{Eps::round, Vec::Unit(4, 0)};
  AmbientVector dt{1.0, Vec::Zero(4)};
  AmbientVector vert{0.0, Vec::Unit(4, 1)};
  CHECK(metric(w, 0.0, base, dt, dt) == 1.0);
  CHECK(metric(w, 0.0, base, vert, vert) == 4.0);  // w^2 scaling
  CHECK(metric(w, 0.0, base, dt, vert) == 0.0);
  AmbientVector bad{0.0, Vec::Unit(4, 0)};  // not tangent at e0
  CHECK_THROWS_AS(metric(w, 0.0, base, bad, bad), error);
}

TEST_CASE("curvature tensor: flat product vanishes") {
  WarpSpec w = make_spec(Eps::flat, "constant", 1.0, 1.0, -1.0, 1.0);
  warpgeo::testing::Rng rng(11);
  ModelPoint base{Eps::flat, Vec::Zero(3)};
  for (int i = 0; i < 20; ++i) {
    auto rnd = [&] {
      AmbientVector v{rng.uniform(-1, 1), Vec(3)};
      for (int k = 0; k < 3; ++k) v.x[k] = rng.uniform(-1, 1);
      return v;
    };
    CHECK(std::abs(curvature(w, 0.1, base, rnd(), rnd(), rnd(), rnd())) < 1e-15);
  }
}

TEST_CASE("curvature tensor: mixed and vertical planes of the cosh warp") {
  WarpSpec w = make_spec(Eps::round, "cosh", 1.0, 1.0, -1.0, 1.0);
  ModelPoint base{Eps::round, Vec::Unit(4, 0)};
  AmbientVector dt{1.0, Vec::Zero(4)};
  AmbientVector e1{0.0, Vec::Unit(4, 1)};
  AmbientVector e2{0.0, Vec::Unit(4, 2)};
  // at t=0: alpha = -1, beta = 2
  CHECK(curvature(w, 0.0, base, dt, e1, e1, dt) == doctest::Approx(-1.0));   // -(alpha+beta)
  CHECK(curvature(w, 0.0, base, e1, e2, e2, e1) == doctest::Approx(1.0));    // -alpha
}

TEST_CASE("curvature tensor symmetries and multilinearity") {
  WarpSpec w = make_spec(Eps::hyperbolic, "cosh", 1.0, 1.0, -1.5, 1.5);
  warpgeo::testing::Rng rng(12);
  ModelPoint base{Eps::hyperbolic, Vec::Zero(4)};
  base.p[0] = 1.0;
  auto rnd = [&] {
    AmbientVector v{rng.uniform(-1, 1), Vec(4)};
    for (int k = 0; k < 4; ++k) v.x[k] = rng.uniform(-1, 1);
    // project fiber part tangent to the hyperboloid at base, then normalize
    v.x -= (model_form(Eps::hyperbolic, v.x, base.p) / model_form(Eps::hyperbolic, base.p, base.p)) *
           base.p;
    const double nrm = std::sqrt(v.a * v.a + model_form(Eps::hyperbolic, v.x, v.x));
    v.a /= nrm;
    v.x /= nrm;
    return v;
  };
  for (int i = 0; i < 30; ++i) {
    AmbientVector X = rnd(), Y = rnd(), Z = rnd(), W = rnd();
    const double t = rng.uniform(-1.0, 1.0);
    auto R = [&](const AmbientVector& a, const AmbientVector& b, const AmbientVector& c,
                 const AmbientVector& d) { return curvature(w, t, base, a, b, c, d); };
    CHECK(std::abs(R(X, Y, Z, W) + R(Y, X, Z, W)) < 1e-12);
    CHECK(std::abs(R(X, Y, Z, W) + R(X, Y, W, Z)) < 1e-12);
    CHECK(std::abs(R(X, Y, Z, W) - R(Z, W, X, Y)) < 1e-12);
    // linearity in the first slot
    AmbientVector X2 = rnd();
    AmbientVector Xs{X.a + 2.0 * X2.a, X.x + 2.0 * X2.x};
    CHECK(R(Xs, Y, Z, W) ==
          doctest::Approx(R(X, Y, Z, W) + 2.0 * R(X2, Y, Z, W)).epsilon(1e-10));
  }
}

TEST_CASE("closed-form curvature matches the finite-difference Riemann tensor") {
  warpgeo::testing::Rng rng(13);
  const int n = 3;  // fiber dimension
  for (const WarpSpec& w : catalog_fixtures()) {
    // coordinate box around a mid-interval point and a small fiber patch
    const double t0 = 0.5 * (w.t_min + w.t_max);
    MetricField amb;
    amb.dim = n + 1;
    amb.g = [&w](const Vec& y) { return warped_coord_metric(w, y); };

    for (int trial = 0; trial < 20; ++trial) {
      Vec y0(n + 1);
      y0[0] = t0 + 0.1 * rng.uniform(-1.0, 1.0) * (w.t_max - w.t_min);
      for (int i = 1; i <= n; ++i) y0[i] = rng.uniform(-0.2, 0.2);
      CurvatureTensors ct = riemann_ricci(amb, y0, 2.5e-4);

      const AlphaBeta ab = alpha_beta(w, y0[0]);
      const Mat g = warped_coord_metric(w, y0);
      auto ip = [&](const Vec& a, const Vec& b) { return a.dot(g * b); };
      // random orthonormal frame
      std::vector<Vec> frame;
      while (frame.size() < 4) {
        Vec v(n + 1);
        for (int i = 0; i <= n; ++i) v[i] = rng.uniform(-1.0, 1.0);
        for (const Vec& f : frame) v -= ip(v, f) * f;
        const double nv = ip(v, v);
        if (nv < 1e-6) continue;
        frame.push_back(v / std::sqrt(nv));
      }
      const Vec &X = frame[0], &Y = frame[1], &Z = frame[2], &W = frame[3];
      const double closed =
          curvature_bilinear(ab.alpha, ab.beta, ip(X, Z), ip(Y, W), ip(X, W), ip(Y, Z), X[0],
                             Y[0], Z[0], W[0]);
      const double fd = ct.r_low(X, Y, Z, W);
      INFO(w.omega.name(), " eps=", eps_value(w.eps));
      CHECK(std::abs(closed - fd) < 1e-5);
    }
  }
}

TEST_CASE("space-form warps have constant ambient curvature -alpha") {
  // beta == 0 fixtures: (sin, +1) -> K = 1, (cosh, -1) -> K = -1, (exp, 0) -> K = -1
  struct Fixture {
    WarpSpec w;
    double K;
  };
  std::vector<Fixture> fx = {
      {make_spec(Eps::round, "sin", 1.0, 1.0, 0.4, 2.7), 1.0},
      {make_spec(Eps::hyperbolic, "cosh", 1.0, 1.0, -1.2, 1.2), -1.0},
      {make_spec(Eps::flat, "exp", 1.0, 1.0, -1.0, 1.0), -1.0},
  };
  for (const auto& [w, K] : fx) {
    AlphaBeta ab = alpha_beta(w, 0.5 * (w.t_min + w.t_max));
    CHECK(std::abs(ab.beta) < 1e-12);
    CHECK(-ab.alpha == doctest::Approx(K).epsilon(1e-12));
    MetricField amb;
    amb.dim = 3;
    amb.box.ranges = {{w.t_min + 0.1, w.t_max - 0.1}, {-0.3, 0.3}, {-0.3, 0.3}};
    amb.g = [&w](const Vec& y) { return warped_coord_metric(w, y); };
    for (double k : sectional_samples(amb, 3)) CHECK(std::abs(k - K) < 1e-5);
  }
}

TEST_CASE("connection rule: nabla_X dt = (w'/w) X for vertical X") {
  WarpSpec w = make_spec(Eps::round, "sinh", 1.0, 1.0, 0.3, 2.5);
  MetricField amb;
  amb.dim = 4;
  amb.g = [&w](const Vec& y) { return warped_coord_metric(w, y); };
  warpgeo::testing::Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    Vec y(4);
    y[0] = rng.uniform(0.5, 2.3);
    for (int i = 1; i < 4; ++i) y[i] = rng.uniform(-0.2, 0.2);
    Mat g0;
    auto gamma = warpgeo::detail::christoffel(amb, y, kFirstOrderStep, &g0);
    const double zeta = w.omega.d1(y[0]) / w.omega.value(y[0]);
    // Gamma^i_{0 j} = zeta * delta_ij on the fiber block
    for (int i = 1; i < 4; ++i)
      for (int j = 1; j < 4; ++j) {
        const double want = i == j ? zeta : 0.0;
        CHECK(std::abs(gamma[static_cast<size_t>(i)](0, j) - want) < 1e-5);
      }
  }
}

TEST_CASE("height reparametrization G with G' = 1/w") {
  {
    WarpSpec w = make_spec(Eps::flat, "constant", 1.0, 1.0, -1.0, 2.0);
    ConformalMap cm = conformal_change(w);
    CHECK(cm.G(0.5) == doctest::Approx(1.5).epsilon(1e-12));  // identity up to shift
  }
  {
    WarpSpec w = make_spec(Eps::flat, "exp", 1.0, 1.0, -1.0, 1.0);
    ConformalMap cm = conformal_change(w);
    // G(t) = -e^{-t} + e^{t_min}... fixed by G(t_min) = 0
    CHECK(cm.G(0.7) == doctest::Approx(-std::exp(-0.7) + std::exp(1.0)).epsilon(1e-10));
  }
  {
    WarpSpec w = make_spec(Eps::round, "sin", 1.0, 1.0, 0.1, 3.0415926535897931);
    ConformalMap cm = conformal_change(w);
    auto ref = [](double t) { return std::log(std::tan(0.5 * t)); };
    CHECK(cm.G(1.3) == doctest::Approx(ref(1.3) - ref(0.1)).epsilon(1e-9));
  }
  // G' * w = 1 by finite differences, and G_inv round-trips
  for (const WarpSpec& w : catalog_fixtures()) {
    ConformalMap cm = conformal_change(w);
    warpgeo::testing::Rng rng(15);
    for (int i = 0; i < 12; ++i) {
      const double t = rng.uniform(w.t_min + 0.05, w.t_max - 0.05);
      const double h = 1e-6 * (1.0 + std::abs(t));
      const double d = (cm.G(t + h) - cm.G(t - h)) / (2 * h);
      CHECK(d * w.omega.value(t) == doctest::Approx(1.0).epsilon(1e-6));
      CHECK(cm.G_inv(cm.G(t)) == doctest::Approx(t).epsilon(1e-9));
    }
  }
}

TEST_CASE("monotone warp inversion") {
  WarpSpec w = make_spec(Eps::hyperbolic, "linear", 2.0, 0.0, 0.01, 100.0);
  CHECK(warp_inverse(w, 0.5) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(warp_inverse_d1(w, 17.3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(warp_inverse(w, 500.0), error);
}

TEST_SUITE_END();
