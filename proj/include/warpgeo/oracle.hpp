#pragma once

// Finite-difference curvature machinery on coordinate charts: pullback
// metrics, Christoffel symbols, Riemann / Ricci / sectional curvature, and
// shape operators of immersed hypersurfaces.  Everything here differentiates
// sampled data only; no closed-form curvature formula from the rest of the
// library enters, so these values can certify those formulas independently.
//
// Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// Ric(X,Y) = trace{Z -> R(Z,X)Y}, K(X,Y) = <R(X,Y)Y,X> on orthonormal pairs.
// With these choices the unit sphere has K = +1 and Ric = (n-1) g.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "warpgeo/ambient.hpp"
#include "warpgeo/chart.hpp"
#include "warpgeo/grid.hpp"
#include "warpgeo/report.hpp"

namespace warpgeo {

inline constexpr double kCurvatureStep = 1e-3;  // two nested derivative levels
inline constexpr double kFirstOrderStep = 1e-5;
inline constexpr double kCurvatureTol = 1e-4;
inline constexpr double kFirstOrderTol = 1e-6;

// ---------------------------------------------------------------------------
// Fiber coordinates: identity (eps=0), stereographic (eps=+1, from -e0),
// Poincare ball (eps=-1).  Conformally flat, so the coordinate metric is a
// scalar factor times the identity.

inline Vec model_to_coords(Eps eps, const Vec& p) {
  if (eps == Eps::flat) return p;
  const double den = 1.0 + p[0];
  require(den > 1e-8, errc::degenerate_chart, "model point too close to the projection pole");
  return Vec(p.tail(p.size() - 1) / den);
}

inline Mat model_to_coords_diff(Eps eps, const Vec& p) {
  if (eps == Eps::flat) return Mat::Identity(p.size(), p.size());
  const int n = static_cast<int>(p.size()) - 1;
  const double den = 1.0 + p[0];
  require(den > 1e-8, errc::degenerate_chart, "model point too close to the projection pole");
  Mat D(n, n + 1);
  D.col(0) = -p.tail(n) / (den * den);
  D.block(0, 1, n, n) = Mat::Identity(n, n) / den;
  return D;
}

inline double fiber_conformal_factor(Eps eps, const Vec& x) {
  switch (eps) {
    case Eps::flat: return 1.0;
    case Eps::round: return 2.0 / (1.0 + x.squaredNorm());
    case Eps::hyperbolic: {
      const double q = x.squaredNorm();
      require(q < 1.0, errc::degenerate_chart, "Poincare coordinates outside the unit ball");
      return 2.0 / (1.0 - q);
    }
  }
  fail(errc::invalid_argument, "bad epsilon");
}

/// Coordinate metric of I x_w Q_eps^n at (t, x): diag(1, w(t)^2 conf(x)^2 I).
inline Mat warped_coord_metric(const WarpSpec& w, double t, const Vec& x) {
  const int n = static_cast<int>(x.size());
  const double om = w.omega.value(t);
  const double cf = fiber_conformal_factor(w.eps, x);
  Mat g = Mat::Identity(n + 1, n + 1);
  g.bottomRightCorner(n, n) *= om * om * cf * cf;
  return g;
}

inline Mat warped_coord_metric(const WarpSpec& w, const Vec& tx) {
  return warped_coord_metric(w, tx[0], Vec(tx.tail(tx.size() - 1)));
}

// ---------------------------------------------------------------------------
// Chart pullback.

inline Mat chart_jacobian(const AmbientChart& c, const Vec& u, double h = kFirstOrderStep) {
  if (c.jacobian) return c.jacobian(u);
  const Vec x0 = c.eval(u);
  Mat J(x0.size(), c.dim);
  for (int i = 0; i < c.dim; ++i) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    J.col(i) = (c.eval(up) - c.eval(um)) / (2.0 * h);
  }
  return J;
}

/// Pullback g_ij(u) = gbar(d_i X, d_j X); symmetric positive definite on
/// nondegenerate charts.
inline Mat chart_metric(const AmbientChart& c, const WarpSpec& w, const Vec& u,
                        double h = kFirstOrderStep) {
  const Vec tx = c.eval(u);
  const Mat J = chart_jacobian(c, u, h);
  const Mat gbar = warped_coord_metric(w, tx);
  Mat g = J.transpose() * gbar * J;
  g = 0.5 * (g + g.transpose());
  Eigen::LLT<Mat> llt(g);
  require(llt.info() == Eigen::Success, errc::degenerate_chart,
          "pullback metric not positive definite");
  return g;
}

inline MetricField pullback_field(const AmbientChart& c, const WarpSpec& w,
                                  double h = kFirstOrderStep) {
  MetricField f;
  f.dim = c.dim;
  f.box = c.box;
  f.g = [c, w, h](const Vec& u) { return chart_metric(c, w, u, h); };
  return f;
}

// ---------------------------------------------------------------------------
// Curvature tensors by nested central differences of the metric field.

namespace detail {

// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij), dg by central
// differences with step h.
inline std::vector<Mat> christoffel(const MetricField& f, const Vec& u, double h, Mat* g_out) {
  const int m = f.dim;
  const Mat g0 = f.g(u);
  std::vector<Mat> dg(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    dg[static_cast<size_t>(i)] = (f.g(up) - f.g(um)) / (2.0 * h);
  }
  const Mat ginv = g0.inverse();
  std::vector<Mat> gamma(static_cast<size_t>(m), Mat::Zero(m, m));  // gamma[k](i,j)
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double v = 0.0;
        for (int l = 0; l < m; ++l)
          v += ginv(k, l) * (dg[static_cast<size_t>(i)](j, l) + dg[static_cast<size_t>(j)](i, l) -
                             dg[static_cast<size_t>(l)](i, j));
        gamma[static_cast<size_t>(k)](i, j) = 0.5 * v;
        gamma[static_cast<size_t>(k)](j, i) = 0.5 * v;
      }
  if (g_out) *g_out = g0;
  return gamma;
}

}  // namespace detail

/// Riemann, Ricci, and a sectional-curvature evaluator at one chart point.
struct CurvatureTensors {
  int m = 0;
  Mat g;
  Mat ricci;
  std::vector<double> riem;  // R(e_i,e_j)e_k = riem[((l*m+k)*m+i)*m+j] e_l

  double riemann(int l, int k, int i, int j) const {
    return riem[static_cast<size_t>(((l * m + k) * m + i) * m + j)];
  }

  /// <R(X,Y)Z, W>.
  double r_low(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const {
    Vec RZ = Vec::Zero(m);
    for (int l = 0; l < m; ++l) {
      double acc = 0.0;
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) acc += riemann(l, k, i, j) * X[i] * Y[j] * Z[k];
      RZ[l] = acc;
    }
    return W.dot(g * RZ);
  }

  /// Sectional curvature of span{X, Y}.
  double sectional(const Vec& X, const Vec& Y) const {
    const double xx = X.dot(g * X), yy = Y.dot(g * Y), xy = X.dot(g * Y);
    const double area2 = xx * yy - xy * xy;
    require(area2 > 1e-14, errc::degenerate_chart, "sectional: degenerate plane");
    return r_low(X, Y, Y, X) / area2;
  }
};

inline CurvatureTensors riemann_ricci(const MetricField& f, const Vec& u,
                                      double h = kCurvatureStep) {
  const int m = f.dim;
  CurvatureTensors out;
  out.m = m;
  std::vector<Mat> gamma0 = detail::christoffel(f, u, h, &out.g);
  // dGamma[a][k](i,j) = d_a Gamma^k_ij
  std::vector<std::vector<Mat>> dgamma(static_cast<size_t>(m));
  for (int a = 0; a < m; ++a) {
    Vec up = u, um = u;
    up[a] += h;
    um[a] -= h;
    auto gp = detail::christoffel(f, up, h, nullptr);
    auto gm = detail::christoffel(f, um, h, nullptr);
    dgamma[static_cast<size_t>(a)].resize(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k)
      dgamma[static_cast<size_t>(a)][static_cast<size_t>(k)] =
          (gp[static_cast<size_t>(k)] - gm[static_cast<size_t>(k)]) / (2.0 * h);
  }
  out.riem.assign(static_cast<size_t>(m) * m * m * m, 0.0);
  for (int l = 0; l < m; ++l)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = dgamma[static_cast<size_t>(i)][static_cast<size_t>(l)](j, k) -
                     dgamma[static_cast<size_t>(j)][static_cast<size_t>(l)](i, k);
          for (int mm = 0; mm < m; ++mm)
            v += gamma0[static_cast<size_t>(l)](i, mm) * gamma0[static_cast<size_t>(mm)](j, k) -
                 gamma0[static_cast<size_t>(l)](j, mm) * gamma0[static_cast<size_t>(mm)](i, k);
          out.riem[static_cast<size_t>(((l * m + k) * m + i) * m + j)] = v;
        }
  out.ricci = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double v = 0.0;
      for (int k = 0; k < m; ++k) v += out.riemann(k, j, k, i);
      out.ricci(i, j) = v;
    }
  out.ricci = 0.5 * (out.ricci + out.ricci.transpose()).eval();
  return out;
}

/// Step-halving stability guard: recompute at h/2 and require agreement.
inline CurvatureTensors riemann_ricci_checked(const MetricField& f, const Vec& u,
                                              double h = kCurvatureStep, double tol = 10.0 * kCurvatureTol) {
  CurvatureTensors a = riemann_ricci(f, u, h);
  CurvatureTensors b = riemann_ricci(f, u, 0.5 * h);
  const double diff = (a.ricci - b.ricci).cwiseAbs().maxCoeff();
  require(diff <= tol, errc::unstable_differencing,
          "Ricci changed by " + g17(diff) + " under step halving");
  return a;
}

// ---------------------------------------------------------------------------
// Grid verdicts.

/// Operator norm of Ric - Lambda g (largest |eigenvalue| of the associated
/// g-self-adjoint operator).
inline double einstein_defect(const CurvatureTensors& ct, double Lambda) {
  Mat E = ct.ricci - Lambda * ct.g;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(E, ct.g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline CurvatureReport einstein_residual(const MetricField& f, double Lambda, int per_axis,
                                         double tol, double h = kCurvatureStep,
                                         std::vector<double>* residuals_out = nullptr) {
  const auto pts = interior_grid(f.box, per_axis);
  std::vector<double> res(pts.size(), 0.0);
  parallel_for_index(pts.size(), [&](std::size_t i) {
    res[i] = einstein_defect(riemann_ricci(f, to_vec(pts[i]), h), Lambda);
  });
  if (residuals_out) *residuals_out = res;
  return CurvatureReport::from_residuals("einstein", res, tol);
}

/// Sectional curvatures over all coordinate planes at the grid points.
inline std::vector<double> sectional_samples(const MetricField& f, int per_axis,
                                             double h = kCurvatureStep) {
  const auto pts = interior_grid(f.box, per_axis);
  const int m = f.dim;
  std::vector<std::vector<double>> per_point(pts.size());
  parallel_for_index(pts.size(), [&](std::size_t n) {
    CurvatureTensors ct = riemann_ricci(f, to_vec(pts[n]), h);
    std::vector<double> ks;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        Vec X = Vec::Zero(m), Y = Vec::Zero(m);
        X[i] = 1.0;
        Y[j] = 1.0;
        ks.push_back(ct.sectional(X, Y));
      }
    per_point[n] = std::move(ks);
  });
  std::vector<double> out;
  for (const auto& v : per_point) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline double sectional_spread(const MetricField& f, int per_axis, double h = kCurvatureStep) {
  const auto ks = sectional_samples(f, per_axis, h);
  require(!ks.empty(), errc::invalid_argument, "no sectional samples");
  double lo = ks[0], hi = ks[0];
  for (double k : ks) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  return hi - lo;
}

// ---------------------------------------------------------------------------
// Shape operators.

namespace detail {

inline Vec second_partial(const std::function<Vec(const Vec&)>& eval, const Vec& u, int i, int j,
                          double h) {
  if (i == j) {
    Vec up = u, um = u;
    up[i] += h;
    um[i] -= h;
    return (eval(up) - 2.0 * eval(u) + eval(um)) / (h * h);
  }
  Vec upp = u, upm = u, ump = u, umm = u;
  upp[i] += h;
  upp[j] += h;
  upm[i] += h;
  upm[j] -= h;
  ump[i] -= h;
  ump[j] += h;
  umm[i] -= h;
  umm[j] -= h;
  return (eval(upp) - eval(upm) - eval(ump) + eval(umm)) / (4.0 * h * h);
}

inline std::vector<double> sorted_eigs(const Mat& II, const Mat& g) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(0.5 * (II + II.transpose()), g,
                                                   Eigen::EigenvaluesOnly);
  std::vector<double> vals(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return vals;  // ascending
}

}  // namespace detail

/// Principal curvatures (ascending) of a hypersurface chart of I x_w Q_eps^n
/// w.r.t. the unit normal obtained by Gram-Schmidt of the chart's hint against
/// the numerical tangent frame (A X = -nabla_X N convention: II(X,Y) =
/// gbar(N, nabla_X Y)).
inline std::vector<double> shape_operator(const AmbientChart& c, const WarpSpec& w, const Vec& u,
                                          double h = kCurvatureStep) {
  const int m = c.dim;
  const Vec tx = c.eval(u);
  const int a = static_cast<int>(tx.size());
  require(a == m + 1, errc::degenerate_chart, "shape operator needs a hypersurface chart");
  const Mat J = chart_jacobian(c, u);
  const Mat gbar = warped_coord_metric(w, tx);

  // Unit normal from the hint.
  require(static_cast<bool>(c.normal_hint), errc::degenerate_chart, "chart has no normal hint");
  Vec N = c.normal_hint(u);
  const Mat g = J.transpose() * gbar * J;
  Eigen::LLT<Mat> llt(g);
  require(llt.info() == Eigen::Success, errc::degenerate_chart, "degenerate tangent frame");
  // Project the hint off the tangent space: N -= J alpha with g alpha = J^T gbar N.
  N -= J * llt.solve(J.transpose() * (gbar * N));
  const double nn = N.dot(gbar * N);
  require(nn > 1e-16, errc::degenerate_chart, "normal hint lies in the tangent space");
  N /= std::sqrt(nn);

  // Ambient Christoffels of the closed-form coordinate metric.
  MetricField amb;
  amb.dim = a;
  amb.g = [&w](const Vec& y) { return warped_coord_metric(w, y); };
  const auto gamma = detail::christoffel(amb, tx, kFirstOrderStep, nullptr);

  Mat II(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Vec dd = detail::second_partial(c.eval, u, i, j, h);
      for (int k = 0; k < a; ++k) {
        double corr = 0.0;
        for (int l = 0; l < a; ++l)
          for (int q = 0; q < a; ++q)
            corr += gamma[static_cast<size_t>(k)](l, q) * J(l, i) * J(q, j);
        dd[k] += corr;
      }
      II(i, j) = II(j, i) = N.dot(gbar * dd);
    }
  return detail::sorted_eigs(II, g);
}

/// Principal curvatures (ascending) of a hypersurface chart of Q_eps^n in the
/// fiber metric, using the model-space projections.
inline std::vector<double> fiber_shape_operator(const FiberChart& c, const Vec& u,
                                                double h = kCurvatureStep) {
  const int m = c.dim;
  const Vec p = c.eval(u);
  Mat J;
  if (c.jacobian) {
    J = c.jacobian(u);
  } else {
    J.resize(p.size(), m);
    for (int i = 0; i < m; ++i) {
      Vec up = u, um = u;
      up[i] += kFirstOrderStep;
      um[i] -= kFirstOrderStep;
      J.col(i) = (c.eval(up) - c.eval(um)) / (2.0 * kFirstOrderStep);
    }
  }

  auto form = [&](const Vec& x, const Vec& y) { return model_form(c.eps, x, y); };
  Mat g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = form(J.col(i), J.col(j));

  require(static_cast<bool>(c.normal_hint), errc::degenerate_chart, "chart has no normal hint");
  Vec eta = c.normal_hint(u);
  if (c.eps != Eps::flat) eta -= (form(eta, p) / form(p, p)) * p;  // keep tangent to the quadric
  Eigen::LLT<Mat> llt(g);
  require(llt.info() == Eigen::Success, errc::degenerate_chart, "degenerate tangent frame");
  Vec coeff(m);
  for (int i = 0; i < m; ++i) coeff[i] = form(eta, J.col(i));
  const Vec alpha = llt.solve(coeff);
  eta -= J * alpha;
  const double nn = form(eta, eta);
  require(nn > 1e-16, errc::degenerate_chart, "normal hint lies in the tangent space");
  eta /= std::sqrt(nn);

  Mat II(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      II(i, j) = II(j, i) = form(eta, detail::second_partial(c.eval, u, i, j, h));
  return detail::sorted_eigs(II, g);
}

// ---------------------------------------------------------------------------
// Gate: the oracle must reproduce the three closed-form space forms before
// its verdicts are trusted anywhere else.

inline MetricField flat_field(int dim) {
  MetricField f;
  f.dim = dim;
  for (int i = 0; i < dim; ++i) f.box.ranges.push_back({0.0, 1.0});
  f.g = [dim](const Vec&) { return Mat(Mat::Identity(dim, dim)); };
  return f;
}

inline MetricField round_sphere_field() {  // unit S^2, polar chart
  MetricField f;
  f.dim = 2;
  f.box.ranges = {{0.4, 2.7}, {0.1, 6.1}};
  f.g = [](const Vec& u) {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::sin(u[0]) * std::sin(u[0]);
    return g;
  };
  return f;
}

inline MetricField hyperbolic_field() {  // H^2, polar chart
  MetricField f;
  f.dim = 2;
  f.box.ranges = {{0.4, 1.8}, {0.1, 6.1}};
  f.g = [](const Vec& u) {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::sinh(u[0]) * std::sinh(u[0]);
    return g;
  };
  return f;
}

inline std::vector<CurvatureReport> oracle_selftest(double tol = 1e-5, int per_axis = 4) {
  std::vector<CurvatureReport> reps;
  struct Case {
    const char* name;
    MetricField field;
    double K;
  };
  const Case cases[] = {{"sectional-flat", flat_field(3), 0.0},
                        {"sectional-round", round_sphere_field(), 1.0},
                        {"sectional-hyperbolic", hyperbolic_field(), -1.0}};
  for (const auto& c : cases) {
    std::vector<double> res;
    for (double k : sectional_samples(c.field, per_axis)) res.push_back(k - c.K);
    reps.push_back(CurvatureReport::from_residuals(c.name, res, tol));
  }
  return reps;
}

}  // namespace warpgeo
