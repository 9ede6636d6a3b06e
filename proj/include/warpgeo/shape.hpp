#pragma once

// Pointwise hypersurface algebra: the Einstein residual system for
// hypersurfaces with the T-property, Ricci off-diagonal entries, vertical
// sections, the Gauss equation, and the sigma-trichotomy classifier for the
// beta == 0 regime.

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "warpgeo/ambient.hpp"
#include "warpgeo/errors.hpp"

namespace warpgeo {

/// Two principal curvatures count as distinct iff |a-b| > 1e-8 (1+|a|+|b|).
inline bool distinct_curvatures(double a, double b) {
  return std::abs(a - b) > 1e-8 * (1.0 + std::abs(a) + std::abs(b));
}

inline int count_distinct(const std::vector<double>& values) {
  std::vector<double> reps;
  for (double v : values) {
    bool fresh = true;
    for (double r : reps)
      if (!distinct_curvatures(v, r)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(v);
  }
  return static_cast<int>(reps.size());
}

/// Pointwise state of a hypersurface with the T-property: spectrum with
/// multiplicities (entry 0 is the T-direction when ||T|| > 0), the height
/// gradient norm, the angle function, and the warp controls at the height.
struct PrincipalData {
  int n = 0;
  std::vector<std::pair<double, int>> lambdas;  // (value, multiplicity)
  double T_norm = 0.0;
  double theta = 1.0;
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const {
    int total = 0;
    for (const auto& [v, m] : lambdas) {
      require(m >= 1, errc::invalid_spectrum, "multiplicity must be positive");
      (void)v;
      total += m;
    }
    require(total == n, errc::invalid_spectrum, "multiplicities do not sum to the dimension");
    require(std::abs(theta * theta + T_norm * T_norm - 1.0) <= 1e-10, errc::invalid_spectrum,
            "theta^2 + ||T||^2 != 1");
    if (T_norm > 0.0)
      require(lambdas.front().second == 1, errc::invalid_spectrum,
              "T-direction eigenvalue must have multiplicity one");
  }

  double trace() const {
    double H = 0.0;
    for (const auto& [v, m] : lambdas) H += v * m;
    return H;
  }

  std::vector<double> expanded() const {
    std::vector<double> out;
    for (const auto& [v, m] : lambdas) out.insert(out.end(), static_cast<size_t>(m), v);
    return out;
  }
};

/// Residuals of the Einstein system; all zero iff the point is Lambda-Einstein:
///   r1   = l1^2 - H l1 + (n-1)(beta ||T||^2 + alpha) + Lambda
///   r_i  = li^2 - H li + beta ||T||^2 + (n-1) alpha + Lambda,  i >= 2.
struct EinsteinResiduals {
  double r1 = 0.0;
  std::vector<double> r_rest;
  double sigma = 0.0;  // Lambda + (n-1) alpha + ||T||^2 beta

  double max_abs() const {
    double m = std::abs(r1);
    for (double r : r_rest) m = std::max(m, std::abs(r));
    return m;
  }
};

inline EinsteinResiduals einstein_residuals(const PrincipalData& pd, double Lambda) {
  pd.validate();
  const double H = pd.trace();
  const double T2 = pd.T_norm * pd.T_norm;
  EinsteinResiduals out;
  const double l1 = pd.lambdas.front().first;
  out.r1 = l1 * l1 - H * l1 + (pd.n - 1) * (pd.beta * T2 + pd.alpha) + Lambda;
  for (size_t i = 1; i < pd.lambdas.size(); ++i) {
    const double li = pd.lambdas[i].first;
    out.r_rest.push_back(li * li - H * li + pd.beta * T2 + (pd.n - 1) * pd.alpha + Lambda);
  }
  out.sigma = Lambda + (pd.n - 1) * pd.alpha + T2 * pd.beta;
  return out;
}

/// Ric(X_i, X_j) = (2-n) beta <X_i,T> <X_j,T> for i != j in a principal frame.
inline double ricci_offdiag(const PrincipalData& pd, double Ti, double Tj) {
  return (2.0 - pd.n) * pd.beta * Ti * Tj;
}

/// Principal curvatures of the vertical section at height t:
/// lambda_i^t = -(w lambda_i + w' theta) / ||T||, i >= 2.
/// Empty when the hypersurface is tangent to the slice (||T|| = 0).
inline std::optional<std::vector<double>> vertical_section(const PrincipalData& pd,
                                                           const WarpSpec& w, double t) {
  pd.validate();
  if (pd.T_norm == 0.0) return std::nullopt;
  const double om = w.omega.value(t), om1 = w.omega.d1(t);
  std::vector<double> out;
  for (size_t i = 1; i < pd.lambdas.size(); ++i)
    for (int k = 0; k < pd.lambdas[i].second; ++k)
      out.push_back(-(om * pd.lambdas[i].first + om1 * pd.theta) / pd.T_norm);
  return out;
}

/// Inverse of vertical_section for one eigenvalue (slice curvature -> ambient).
inline double vertical_section_forward(double lambda_t, const WarpSpec& w, double t, double theta,
                                       double T_norm) {
  return -(T_norm * lambda_t + w.omega.d1(t) * theta) / w.omega.value(t);
}

// ---------------------------------------------------------------------------
// Trichotomy for connected Einstein hypersurfaces along which beta vanishes:
// the sign of sigma = Lambda + (n-1) alpha decides among a totally umbilical
// CSC hypersurface, a rank <= 1 CSC hypersurface, and a nontrivial one with
// exactly two opposite-curvature classes (both multiplicities >= 2).

enum class TrichotomyCase { umbilical_trivial, rank_one_trivial, two_curvature_nontrivial };

struct TrichotomyResult {
  TrichotomyCase kind;
  double sigma;
  std::optional<std::pair<double, double>> roots;  // of s^2 - H s + sigma, sigma < 0 only
};

inline TrichotomyResult classify_sigma_trichotomy(double Lambda, double alpha, int n,
                                                  double H = 0.0) {
  require(n > 2, errc::invalid_argument, "classifier needs n > 2");
  const double sigma = Lambda + (n - 1) * alpha;
  if (sigma > 0.0) return {TrichotomyCase::umbilical_trivial, sigma, std::nullopt};
  if (sigma == 0.0) return {TrichotomyCase::rank_one_trivial, sigma, std::nullopt};
  const double disc = H * H - 4.0 * sigma;  // > 0 since sigma < 0
  const double sq = std::sqrt(disc);
  const double lam = 0.5 * (H + sq), mu = 0.5 * (H - sq);
  return {TrichotomyCase::two_curvature_nontrivial, sigma, std::make_pair(lam, mu)};
}

// ---------------------------------------------------------------------------
// Intrinsic sectional curvature through the Gauss equation, for principal
// planes.  Indices address the multiplicity classes of PrincipalData; class 0
// is the T-direction when ||T|| > 0.

inline double gauss_sectional(const PrincipalData& pd, int ci, int cj) {
  pd.validate();
  require(ci >= 0 && cj >= 0 && ci < static_cast<int>(pd.lambdas.size()) &&
              cj < static_cast<int>(pd.lambdas.size()),
          errc::invalid_frame, "class index out of range");
  if (ci == cj)
    require(pd.lambdas[static_cast<size_t>(ci)].second >= 2, errc::invalid_frame,
            "a plane inside one class needs multiplicity >= 2");
  const double li = pd.lambdas[static_cast<size_t>(ci)].first;
  const double lj = pd.lambdas[static_cast<size_t>(cj)].first;
  const bool with_T = pd.T_norm > 0.0 && (ci == 0 || cj == 0);
  if (with_T) {
    require(ci != cj, errc::invalid_frame, "T-class has multiplicity one");
    return li * lj - pd.alpha - pd.beta * pd.T_norm * pd.T_norm;
  }
  return li * lj - pd.alpha;
}

}  // namespace warpgeo
