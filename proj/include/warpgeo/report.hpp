#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace warpgeo {

/// Double formatted with 17 significant digits ('.' decimal separator, locale-free).
inline std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Residual summary for one verified quantity.  verdict == (max_residual <= tolerance).
struct CurvatureReport {
  std::string quantity;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  long samples = 0;
  double tolerance = 0.0;
  bool pass = false;

  static CurvatureReport from_residuals(std::string quantity, const std::vector<double>& r,
                                        double tol) {
    CurvatureReport rep;
    rep.quantity = std::move(quantity);
    rep.tolerance = tol;
    rep.samples = static_cast<long>(r.size());
    double mx = 0.0, sum = 0.0;
    for (double v : r) {  // fixed order, deterministic reduction
      double a = v < 0 ? -v : v;
      if (a > mx) mx = a;
      sum += a;
    }
    rep.max_residual = mx;
    rep.mean_residual = r.empty() ? 0.0 : sum / static_cast<double>(r.size());
    rep.pass = rep.max_residual <= tol;
    return rep;
  }

  // "quantity max mean samples tol verdict"
  std::string line() const {
    return quantity + " " + g17(max_residual) + " " + g17(mean_residual) + " " +
           std::to_string(samples) + " " + g17(tolerance) + " " + (pass ? "pass" : "fail");
  }
};

}  // namespace warpgeo
