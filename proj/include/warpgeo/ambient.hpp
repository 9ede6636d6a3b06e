#pragma once

// The warped product I x_w Q_eps^n: warping-function catalog with closed-form
// derivatives, the curvature controls alpha = ((w')^2 - eps)/w^2 and
// beta = w''/w - alpha, the warped metric, the ambient curvature tensor,
// and the conformal change G with G' = 1/w onto a Riemannian product.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "warpgeo/chart.hpp"
#include "warpgeo/errors.hpp"
#include "warpgeo/spaceform.hpp"

namespace warpgeo {

enum class WarpKind { constant, linear, sine, hsine, hcosine, exponential, tabulated };

/// Catalog warping function a*f(b*t) (linear: a*t + b).  Closed-form first and
/// second derivatives; tabulated entries fall back to central differences with
/// step max(1e-5, 1e-5*|t|).
struct Warp {
  WarpKind kind = WarpKind::constant;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> ts, ws;  // tabulated only

  double value(double t) const {
    switch (kind) {
      case WarpKind::constant: return a;
      case WarpKind::linear: return a * t + b;
      case WarpKind::sine: return a * std::sin(b * t);
      case WarpKind::hsine: return a * std::sinh(b * t);
      case WarpKind::hcosine: return a * std::cosh(b * t);
      case WarpKind::exponential: return a * std::exp(b * t);
      case WarpKind::tabulated: return interp(t);
    }
    fail(errc::invalid_argument, "warp: bad kind");
  }

  double d1(double t) const {
    switch (kind) {
      case WarpKind::constant: return 0.0;
      case WarpKind::linear: return a;
      case WarpKind::sine: return a * b * std::cos(b * t);
      case WarpKind::hsine: return a * b * std::cosh(b * t);
      case WarpKind::hcosine: return a * b * std::sinh(b * t);
      case WarpKind::exponential: return a * b * std::exp(b * t);
      case WarpKind::tabulated: {
        const double h = tab_step(t);
        return (interp(t + h) - interp(t - h)) / (2.0 * h);
      }
    }
    fail(errc::invalid_argument, "warp: bad kind");
  }

  double d2(double t) const {
    switch (kind) {
      case WarpKind::constant: return 0.0;
      case WarpKind::linear: return 0.0;
      case WarpKind::sine: return -a * b * b * std::sin(b * t);
      case WarpKind::hsine: return a * b * b * std::sinh(b * t);
      case WarpKind::hcosine: return a * b * b * std::cosh(b * t);
      case WarpKind::exponential: return a * b * b * std::exp(b * t);
      case WarpKind::tabulated: {
        const double h = tab_step(t);
        return (interp(t + h) - 2.0 * interp(t) + interp(t - h)) / (h * h);
      }
    }
    fail(errc::invalid_argument, "warp: bad kind");
  }

  std::string name() const {
    switch (kind) {
      case WarpKind::constant: return "constant";
      case WarpKind::linear: return "linear";
      case WarpKind::sine: return "sin";
      case WarpKind::hsine: return "sinh";
      case WarpKind::hcosine: return "cosh";
      case WarpKind::exponential: return "exp";
      case WarpKind::tabulated: return "tabulated";
    }
    return "?";
  }

  static Warp from_name(const std::string& name, double a, double b) {
    Warp w;
    w.a = a;
    w.b = b;
    if (name == "constant") w.kind = WarpKind::constant;
    else if (name == "linear") w.kind = WarpKind::linear;
    else if (name == "sin") w.kind = WarpKind::sine;
    else if (name == "sinh") w.kind = WarpKind::hsine;
    else if (name == "cosh") w.kind = WarpKind::hcosine;
    else if (name == "exp") w.kind = WarpKind::exponential;
    else fail(errc::invalid_configuration, "unknown warp '" + name + "'");
    return w;
  }

 private:
  static double tab_step(double t) { return std::max(1e-5, 1e-5 * std::abs(t)); }

  // 4-point Lagrange on the sorted table.
  double interp(double t) const {
    require(ts.size() >= 4 && ts.size() == ws.size(), errc::invalid_configuration,
            "tabulated warp needs >= 4 samples");
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    long i = it - ts.begin();
    i = std::clamp<long>(i - 2, 0, static_cast<long>(ts.size()) - 4);
    double out = 0.0;
    for (long j = i; j < i + 4; ++j) {
      double lj = 1.0;
      for (long k = i; k < i + 4; ++k)
        if (k != j) lj *= (t - ts[static_cast<size_t>(k)]) /
                          (ts[static_cast<size_t>(j)] - ts[static_cast<size_t>(k)]);
      out += lj * ws[static_cast<size_t>(j)];
    }
    return out;
  }
};

/// Ambient datum: curvature sign of the fiber, host interval, warping function.
struct WarpSpec {
  Eps eps = Eps::flat;
  double t_min = 0.0;
  double t_max = 1.0;
  Warp omega;

  bool contains(double t) const { return t >= t_min && t <= t_max; }

  void validate(int samples = 257) const {
    require(t_min < t_max, errc::invalid_configuration, "warp interval is empty");
    for (int i = 0; i <= samples; ++i) {
      const double t = t_min + (t_max - t_min) * i / samples;
      require(omega.value(t) > 0.0, errc::invalid_configuration,
              "warping function not positive at t=" + std::to_string(t));
    }
  }
};

struct AlphaBeta {
  double alpha;
  double beta;
};

inline AlphaBeta alpha_beta(const WarpSpec& w, double t) {
  require(w.contains(t), errc::domain_error, "height outside the warp interval");
  const double v = w.omega.value(t);
  const double v1 = w.omega.d1(t);
  const double v2 = w.omega.d2(t);
  const double alpha = (v1 * v1 - eps_value(w.eps)) / (v * v);
  return {alpha, v2 / v - alpha};
}

/// |alpha'(t) - 2 (w'/w) beta(t)| with alpha' taken by central difference.
inline double alpha_prime_residual(const WarpSpec& w, double t) {
  const double h = 1e-5 * (1.0 + std::abs(t));
  require(w.contains(t - h) && w.contains(t + h), errc::domain_error,
          "height too close to the interval ends");
  const double ap = (alpha_beta(w, t + h).alpha - alpha_beta(w, t - h).alpha) / (2.0 * h);
  const AlphaBeta ab = alpha_beta(w, t);
  return std::abs(ap - 2.0 * (w.omega.d1(t) / w.omega.value(t)) * ab.beta);
}

// ---------------------------------------------------------------------------
// Tangent vectors of I x_w Q_eps^n split as a*dt + vertical part (model coords).

struct AmbientVector {
  double a = 0.0;  // dt component
  Vec x;           // fiber tangent at a model point
};

inline double fiber_inner(Eps eps, const Vec& u, const Vec& v) { return model_form(eps, u, v); }

inline void validate_ambient_frame(const WarpSpec& w, const ModelPoint& base,
                                   const AmbientVector& v) {
  require(base.eps == w.eps && v.x.size() == base.p.size(), errc::invalid_frame,
          "ambient vector incompatible with base point");
  if (w.eps != Eps::flat) {
    const double tang = model_form(w.eps, base.p, v.x);
    require(std::abs(tang) <= 1e-9 * (1.0 + v.x.norm()), errc::invalid_frame,
            "fiber part not tangent to the model");
  }
}

/// dt^2 + w(t)^2 ds_eps^2.
inline double metric(const WarpSpec& w, double t, const ModelPoint& base, const AmbientVector& u,
                     const AmbientVector& v) {
  validate_ambient_frame(w, base, u);
  validate_ambient_frame(w, base, v);
  const double om = w.omega.value(t);
  return u.a * v.a + om * om * fiber_inner(w.eps, u.x, v.x);
}

/// The warped curvature tensor expressed through pairwise inner products s(.,.)
/// and dt components: <R(X,Y)Z,W> =
///   alpha (sXZ sYW - sXW sYZ)
/// + beta  (sXZ Yt Wt - sYZ Xt Wt - sXW Yt Zt + sYW Xt Zt).
inline double curvature_bilinear(double alpha, double beta, double sXZ, double sYW, double sXW,
                                 double sYZ, double Xt, double Yt, double Zt, double Wt) {
  return alpha * (sXZ * sYW - sXW * sYZ) +
         beta * (sXZ * Yt * Wt - sYZ * Xt * Wt - sXW * Yt * Zt + sYW * Xt * Zt);
}

inline double curvature(const WarpSpec& w, double t, const ModelPoint& base, const AmbientVector& X,
                        const AmbientVector& Y, const AmbientVector& Z, const AmbientVector& W) {
  const AlphaBeta ab = alpha_beta(w, t);
  auto s = [&](const AmbientVector& u, const AmbientVector& v) { return metric(w, t, base, u, v); };
  return curvature_bilinear(ab.alpha, ab.beta, s(X, Z), s(Y, W), s(X, W), s(Y, Z), X.a, Y.a, Z.a,
                            W.a);
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature (absolute tolerance), used for G with G' = 1/w.

namespace detail {

inline double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                               double b, double fb, double fm, double whole, double tol,
                               int depth) {
  require(depth < 48, errc::numeric_error, "quadrature failed to converge");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  if (std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, fa, m, fm, flm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, fm, b, fb, frm, right, 0.5 * tol, depth + 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = detail::simpson(a, fa, b, fb, fm);
  return detail::adaptive_simpson(f, a, fa, b, fb, fm, whole, tol, 0);
}

/// Height reparametrization G with G' = 1/w, normalized by G(t_min) = 0,
/// together with its inverse on J = (0, G(t_max)).
struct ConformalMap {
  double t_min, t_max;
  double j_max;
  std::function<double(double)> G;
  std::function<double(double)> G_inv;
};

inline ConformalMap conformal_change(const WarpSpec& w) {
  w.validate();
  auto f = [w](double t) { return 1.0 / w.omega.value(t); };
  ConformalMap cm;
  cm.t_min = w.t_min;
  cm.t_max = w.t_max;
  auto G = [f, w](double t) {
    require(w.contains(t), errc::domain_error, "G: height outside interval");
    return integrate(f, w.t_min, t, 1e-10);
  };
  cm.j_max = G(w.t_max);
  cm.G = G;
  cm.G_inv = [G, w](double v) {
    double lo = w.t_min, hi = w.t_max;
    require(v >= -1e-12 && v <= G(hi) + 1e-12, errc::domain_error, "G_inv: value outside range");
    for (int i = 0; i < 200; ++i) {  // bisection, then Newton polish
      const double mid = 0.5 * (lo + hi);
      if (hi - lo < 1e-13 * (1.0 + std::abs(mid))) break;
      (G(mid) < v ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
      const double tn = t - (G(t) - v) * w.omega.value(t);
      if (tn >= w.t_min && tn <= w.t_max) t = tn;
    }
    return t;
  };
  return cm;
}

// ---------------------------------------------------------------------------
// Inverse of a monotone warp (chi in the rotational construction).

/// Solves w(t) = u for t; requires w to be a diffeomorphism onto its image.
inline double warp_inverse(const WarpSpec& w, double u) {
  const double va = w.omega.value(w.t_min), vb = w.omega.value(w.t_max);
  const bool increasing = vb > va;
  const double lo_v = std::min(va, vb), hi_v = std::max(va, vb);
  require(u >= lo_v - 1e-12 && u <= hi_v + 1e-12, errc::out_of_range,
          "value outside the warp image");
  double lo = w.t_min, hi = w.t_max;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo < 1e-14 * (1.0 + std::abs(mid))) break;
    const bool below = w.omega.value(mid) < u;
    if (below == increasing) lo = mid;
    else hi = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 3; ++i) {
    const double d = w.omega.d1(t);
    if (d == 0.0) break;
    const double tn = t - (w.omega.value(t) - u) / d;
    if (tn >= w.t_min && tn <= w.t_max) t = tn;
  }
  return t;
}

/// chi'(u) = 1 / w'(chi(u)).
inline double warp_inverse_d1(const WarpSpec& w, double u) {
  const double t = warp_inverse(w, u);
  const double d = w.omega.d1(t);
  require(std::abs(d) > 1e-14, errc::numeric_error, "warp not invertible at u");
  return 1.0 / d;
}

}  // namespace warpgeo
