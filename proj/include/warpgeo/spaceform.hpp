#pragma once

// Models of the space forms Q_eps^n: R^n, the unit sphere S^n in R^{n+1},
// and the hyperboloid H^n in Minkowski space (first coordinate timelike).
// Provides the generalized trigonometric pair (C_eps, S_eps), geodesics,
// and the totally umbilical seed hypersurfaces.

#include <cmath>
#include <string>

#include "warpgeo/chart.hpp"
#include "warpgeo/errors.hpp"

namespace warpgeo {

struct CS {
  double c;  // C_eps(s)
  double s;  // S_eps(s)
};

/// (C_eps, S_eps): (1, s) flat, (cos s, sin s) round, (cosh s, sinh s) hyperbolic.
/// Satisfies C' = -eps*S, S' = C and C^2 + eps*S^2 = 1.
inline CS cs(Eps eps, double s) {
  require(std::isfinite(s), errc::invalid_argument, "cs: non-finite argument");
  switch (eps) {
    case Eps::flat: return {1.0, s};
    case Eps::round: return {std::cos(s), std::sin(s)};
    case Eps::hyperbolic: return {std::cosh(s), std::sinh(s)};
  }
  fail(errc::invalid_argument, "cs: bad epsilon");
}

/// Model bilinear form: Euclidean dot for eps in {0,1}, Minkowski
/// (-++..+) for eps = -1.
inline double model_form(Eps eps, const Vec& a, const Vec& b) {
  double d = a.dot(b);
  if (eps == Eps::hyperbolic) d -= 2.0 * a[0] * b[0];
  return d;
}

struct ModelPoint {
  Eps eps = Eps::flat;
  Vec p;
};

/// eps=+1: |p| = 1; eps=-1: <p,p>_- = -1 with p0 > 0; eps=0: unconstrained.
inline void validate_model_point(const ModelPoint& mp, double tol = 1e-12) {
  if (mp.eps == Eps::flat) return;
  const double q = model_form(mp.eps, mp.p, mp.p);
  const double want = mp.eps == Eps::round ? 1.0 : -1.0;
  require(std::abs(q - want) <= tol * (1.0 + std::abs(q)), errc::invalid_argument,
          "model point off the quadric, defect " + std::to_string(q - want));
  if (mp.eps == Eps::hyperbolic)
    require(mp.p[0] > 0.0, errc::invalid_argument, "hyperboloid point in the lower sheet");
}

/// Unit-speed geodesic from p with initial velocity v:
/// C_eps(s) p + S_eps(s) v for eps = +-1, p + s v for eps = 0.
inline ModelPoint geodesic(Eps eps, const ModelPoint& p, const Vec& v, double s) {
  require(p.eps == eps && p.p.size() == v.size(), errc::invalid_frame,
          "geodesic: frame dimension mismatch");
  const double nv = model_form(eps, v, v);
  require(std::abs(nv - 1.0) <= 1e-9, errc::invalid_frame, "geodesic: velocity not unit");
  if (eps != Eps::flat) {
    const double tangency = model_form(eps, p.p, v);
    require(std::abs(tangency) <= 1e-9, errc::invalid_frame, "geodesic: velocity not tangent");
  }
  ModelPoint out{eps, Vec()};
  if (eps == Eps::flat) {
    out.p = p.p + s * v;
  } else {
    const CS t = cs(eps, s);
    out.p = t.c * p.p + t.s * v;
  }
  validate_model_point(out, 1e-9);
  return out;
}

// ---------------------------------------------------------------------------
// Unit sphere S^m parametrized by m angles; closed-form partials.
// Coordinate i < m:  prod_{j<i} sin(a_j) * cos(a_i);  coordinate m: full product of sines.

inline Vec unit_sphere_point(const Vec& ang) {
  const int m = static_cast<int>(ang.size());
  Vec p(m + 1);
  double run = 1.0;
  for (int i = 0; i < m; ++i) {
    p[i] = run * std::cos(ang[i]);
    run *= std::sin(ang[i]);
  }
  p[m] = run;
  return p;
}

inline Mat unit_sphere_jacobian(const Vec& ang) {
  const int m = static_cast<int>(ang.size());
  Mat J(m + 1, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i <= m; ++i) {
      // d p_i / d a_j: zero unless j <= i; differentiate one factor of the product.
      if (j > i) {
        J(i, j) = 0.0;
        continue;
      }
      double v = 1.0;
      for (int k = 0; k < std::min(i, m); ++k) {
        double f = std::sin(ang[k]);
        if (k == j) f = std::cos(ang[k]);
        if (k < i || i == m) v *= f;
      }
      if (i < m) {
        double last = std::cos(ang[i]);
        if (j == i) last = -std::sin(ang[i]);
        v *= last;
      }
      J(i, j) = v;
    }
  }
  return J;
}

/// Angle box with polar caps of radius `cap` removed (coordinate degeneracy).
inline Box sphere_angle_box(int m, double cap = 0.1) {
  require(m >= 1, errc::invalid_argument, "sphere chart needs >= 1 angle");
  Box b;
  const double pi = 3.14159265358979323846;
  for (int i = 0; i + 1 < m; ++i) b.ranges.push_back({cap, pi - cap});
  b.ranges.push_back({cap, 2.0 * pi - cap});
  return b;
}

// ---------------------------------------------------------------------------
// Totally umbilical hypersurfaces of Q_eps^n with their constant principal
// curvature lambda0 relative to the declared unit normal.  The normal points
// toward the center (spheres), the ideal point (horospheres), or the base
// hyperplane (equidistants); the sign makes lambda0 = 1/r, cot r, coth r,
// 1, tanh d respectively.

enum class UmbilicKind { sphere, horosphere, equidistant, hyperplane };

struct UmbilicSeed {
  FiberChart chart;
  double lambda0 = 0.0;
  std::string normal_desc;  // orientation record for downstream sign checks
};

namespace detail {

// Embed a vector of R^k into coordinates [off, off+k) of R^n.
inline Vec embed(const Vec& v, int n, int off) {
  Vec out = Vec::Zero(n);
  out.segment(off, v.size()) = v;
  return out;
}

}  // namespace detail

inline UmbilicSeed umbilic_seed(Eps eps, UmbilicKind kind, double param, int n) {
  require(n >= 2, errc::invalid_configuration, "umbilic seed needs fiber dimension >= 2");
  const int m = n - 1;
  const double pi = 3.14159265358979323846;
  UmbilicSeed seed;
  seed.chart.dim = m;
  seed.chart.eps = eps;

  switch (kind) {
    case UmbilicKind::sphere: {
      if (eps == Eps::round)
        require(param > 0.0 && param < pi, errc::invalid_configuration,
                "round geodesic sphere radius must lie in (0,pi)");
      else
        require(param > 0.0, errc::invalid_configuration, "sphere radius must be positive");
      seed.chart.box = sphere_angle_box(m);
      const double r = param;
      if (eps == Eps::flat) {
        seed.lambda0 = 1.0 / r;
        seed.normal_desc = "toward center (origin)";
        seed.chart.eval = [r](const Vec& u) { return Vec(r * unit_sphere_point(u)); };
        seed.chart.jacobian = [r](const Vec& u) { return Mat(r * unit_sphere_jacobian(u)); };
        seed.chart.normal_hint = [](const Vec& u) { return Vec(-unit_sphere_point(u)); };
      } else if (eps == Eps::round) {
        seed.lambda0 = 1.0 / std::tan(r);
        seed.normal_desc = "toward center e0";
        seed.chart.eval = [r, n](const Vec& u) {
          Vec p = detail::embed(std::sin(r) * unit_sphere_point(u), n + 1, 1);
          p[0] = std::cos(r);
          return p;
        };
        seed.chart.jacobian = [r, n, m](const Vec& u) {
          Mat J = Mat::Zero(n + 1, m);
          J.block(1, 0, n, m) = std::sin(r) * unit_sphere_jacobian(u);
          return J;
        };
        seed.chart.normal_hint = [n](const Vec&) {
          Vec q = Vec::Zero(n + 1);
          q[0] = 1.0;
          return q;
        };
      } else {
        seed.lambda0 = 1.0 / std::tanh(r);
        seed.normal_desc = "toward center e0";
        seed.chart.eval = [r, n](const Vec& u) {
          Vec p = detail::embed(std::sinh(r) * unit_sphere_point(u), n + 1, 1);
          p[0] = std::cosh(r);
          return p;
        };
        seed.chart.jacobian = [r, n, m](const Vec& u) {
          Mat J = Mat::Zero(n + 1, m);
          J.block(1, 0, n, m) = std::sinh(r) * unit_sphere_jacobian(u);
          return J;
        };
        seed.chart.normal_hint = [n](const Vec&) {
          Vec q = Vec::Zero(n + 1);
          q[0] = 1.0;
          return q;
        };
      }
      break;
    }
    case UmbilicKind::horosphere: {
      require(eps == Eps::hyperbolic, errc::invalid_configuration,
              "horospheres exist only in hyperbolic space");
      // Level set <x, l>_- = -1 of the null direction l = e0 + e1, graphed over y in R^{n-1}.
      seed.lambda0 = 1.0;
      seed.normal_desc = "toward ideal point of e0+e1";
      Box b;
      for (int i = 0; i < m; ++i) b.ranges.push_back({-1.0, 1.0});
      seed.chart.box = b;
      seed.chart.eval = [n](const Vec& y) {
        Vec p = detail::embed(y, n + 1, 2);
        const double q = 0.5 * y.squaredNorm();
        p[0] = 1.0 + q;
        p[1] = q;
        return p;
      };
      seed.chart.jacobian = [n, m](const Vec& y) {
        Mat J = Mat::Zero(n + 1, m);
        for (int j = 0; j < m; ++j) {
          J(0, j) = y[j];
          J(1, j) = y[j];
          J(2 + j, j) = 1.0;
        }
        return J;
      };
      seed.chart.normal_hint = [n](const Vec&) {
        Vec l = Vec::Zero(n + 1);
        l[0] = 1.0;
        l[1] = 1.0;
        return l;
      };
      break;
    }
    case UmbilicKind::equidistant:
    case UmbilicKind::hyperplane: {
      require(eps == Eps::hyperbolic, errc::invalid_configuration,
              "equidistant hypersurfaces exist only in hyperbolic space");
      const double d = kind == UmbilicKind::hyperplane ? 0.0 : param;
      require(d >= 0.0, errc::invalid_configuration, "equidistant distance must be >= 0");
      // cosh(d) H(v) + sinh(d) e1, H a graph chart of H^{n-1} in span{e0, e2..en}.
      seed.lambda0 = std::tanh(d);
      seed.normal_desc = "toward base hyperplane (-e1 side)";
      Box b;
      for (int i = 0; i < m; ++i) b.ranges.push_back({-1.0, 1.0});
      seed.chart.box = b;
      seed.chart.eval = [n, d](const Vec& v) {
        Vec p = detail::embed(std::cosh(d) * v, n + 1, 2);
        p[0] = std::cosh(d) * std::sqrt(1.0 + v.squaredNorm());
        p[1] = std::sinh(d);
        return p;
      };
      seed.chart.jacobian = [n, m, d](const Vec& v) {
        Mat J = Mat::Zero(n + 1, m);
        const double s = std::sqrt(1.0 + v.squaredNorm());
        for (int j = 0; j < m; ++j) {
          J(0, j) = std::cosh(d) * v[j] / s;
          J(2 + j, j) = std::cosh(d);
        }
        return J;
      };
      seed.chart.normal_hint = [n](const Vec&) {
        Vec w = Vec::Zero(n + 1);
        w[1] = -1.0;
        return w;
      };
      break;
    }
  }
  return seed;
}

}  // namespace warpgeo
