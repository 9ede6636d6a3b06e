#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>

#include "warpgeo/grid.hpp"

namespace warpgeo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Eps : int { hyperbolic = -1, flat = 0, round = +1 };

inline int eps_value(Eps e) { return static_cast<int>(e); }

inline Eps eps_from_int(int v) {
  require(v == -1 || v == 0 || v == 1, errc::invalid_argument, "epsilon must be -1, 0 or +1");
  return static_cast<Eps>(v);
}

/// Chart of a hypersurface (or submanifold) of the space form Q_eps^n.
/// eval returns model coordinates: R^n for eps=0, unit-sphere / hyperboloid
/// vectors in R^{n+1} otherwise.  jacobian is optional (columns d eval/du_i);
/// normal_hint orients the unit normal used by shape-operator evaluation.
struct FiberChart {
  int dim = 0;  // parameter count (= n-1 for hypersurfaces of Q^n)
  Box box;
  Eps eps = Eps::flat;
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;     // may be empty
  std::function<Vec(const Vec&)> normal_hint;  // may be empty
};

/// Chart into the warped product I x_w Q_eps^n, expressed in ambient
/// coordinates (t, x^1..x^n) where x are conformal fiber coordinates
/// (identity / stereographic / Poincare ball).
struct AmbientChart {
  int dim = 0;
  Box box;
  std::function<Vec(const Vec&)> eval;         // (t, x...)
  std::function<Mat(const Vec&)> jacobian;     // may be empty
  std::function<Vec(const Vec&)> normal_hint;  // coordinate components; may be empty
};

/// Abstract coordinate metric g(u); the common currency of the curvature oracle.
struct MetricField {
  int dim = 0;
  Box box;
  std::function<Mat(const Vec&)> g;
};

inline Vec to_vec(const std::vector<double>& u) {
  Vec v(static_cast<Eigen::Index>(u.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = u[static_cast<size_t>(i)];
  return v;
}

}  // namespace warpgeo
