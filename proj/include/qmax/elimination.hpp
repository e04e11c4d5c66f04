#pragma once

/**
 * @file elimination.hpp
 * @brief Common real zeros of two bivariate polynomials by eliminating x.
 */

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "qmax/resultant.hpp"
#include "qmax/roots.hpp"

namespace qmax {

struct Region {
  double xlo = -1.0, xhi = 1.0;
  double ylo = -1.0, yhi = 1.0;
  /// Drop zeros on the boundary of the rectangle.
  bool open = false;

  [[nodiscard]] bool contains(double x, double y) const {
    if (open) return x > xlo && x < xhi && y > ylo && y < yhi;
    return x >= xlo && x <= xhi && y >= ylo && y <= yhi;
  }
};

enum class CommonRootStatus {
  found,                    ///< at least one common zero
  no_common_root,           ///< resultant nonzero, nothing survived back-substitution
  resultant_identically_zero  ///< p and q share a factor; zeros are not isolated
};

inline const char* to_string(CommonRootStatus s) {
  switch (s) {
    case CommonRootStatus::found: return "found";
    case CommonRootStatus::no_common_root: return "no_common_root";
    case CommonRootStatus::resultant_identically_zero: return "resultant_identically_zero";
  }
  return "?";
}

struct CommonRoots {
  CommonRootStatus status = CommonRootStatus::no_common_root;
  std::vector<std::pair<double, double>> points;
  Poly<Rational> resultant;        ///< Res_x(p, q) in y
  std::vector<RootBox> y_roots;    ///< isolated y-roots of the resultant inside the region
  int skipped_y_roots = 0;         ///< y-roots rejected by the caller's filter
};

struct CommonRootOptions {
  double root_width = 1e-12;
  double residual_tol = 1e-8;
  /// Return true to skip a y-root (e.g. a column handled analytically).
  std::function<bool(const RootBox&)> skip_y;
};

/**
 * All common real zeros of p and q (x outer, coefficients in y) inside the
 * region: y-roots of Res_x(p, q) are isolated exactly, x-roots of p(., y*)
 * are isolated at each y-root, and the pair is polished by Newton's method
 * and kept when both residuals are at most residual_tol.
 */
inline CommonRoots common_real_roots(const BiPoly<Rational>& p, const BiPoly<Rational>& q,
                                     const Region& region, const CommonRootOptions& opt = {}) {
  CommonRoots out;
  out.resultant = resultant_x(p, q);
  if (out.resultant.is_zero()) {
    out.status = CommonRootStatus::resultant_identically_zero;
    return out;
  }
  if (out.resultant.degree() < 1) return out;

  const BiPoly<double> pd = map_coeffs<Poly<double>>(p, [](const Poly<Rational>& c) { return convert_poly<double>(c); });
  const BiPoly<double> qd = map_coeffs<Poly<double>>(q, [](const Poly<Rational>& c) { return convert_poly<double>(c); });
  const BiPoly<double> px = derivative(pd), py = derivative_y(pd);
  const BiPoly<double> qx = derivative(qd), qy = derivative_y(qd);

  out.y_roots = real_roots_in(out.resultant, region.ylo, region.yhi, opt.root_width);
  for (const RootBox& yb : out.y_roots) {
    if (opt.skip_y && opt.skip_y(yb)) {
      ++out.skipped_y_roots;
      continue;
    }
    const double ys = yb.mid();
    Poly<double> slice = substitute_y(pd, ys);
    if (slice.is_zero()) slice = substitute_y(qd, ys);
    if (slice.degree() < 1) continue;
    for (const RootBox& xb : real_roots_in(slice, region.xlo, region.xhi, opt.root_width)) {
      double x = xb.mid(), y = ys;
      for (int it = 0; it < 8; ++it) {
        const double f = evaluate(pd, x, y), g = evaluate(qd, x, y);
        const double a = evaluate(px, x, y), b = evaluate(py, x, y);
        const double c = evaluate(qx, x, y), d = evaluate(qy, x, y);
        const double det = a * d - b * c;
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dx = (f * d - b * g) / det, dy = (a * g - f * c) / det;
        if (!std::isfinite(dx) || !std::isfinite(dy) || std::abs(dx) > 1e-6 || std::abs(dy) > 1e-6) break;
        x -= dx;
        y -= dy;
        if (std::abs(dx) < 1e-17 && std::abs(dy) < 1e-17) break;
      }
      if (std::abs(evaluate(pd, x, y)) > opt.residual_tol || std::abs(evaluate(qd, x, y)) > opt.residual_tol)
        continue;
      if (!region.contains(x, y)) continue;
      bool duplicate = false;
      for (const auto& pt : out.points)
        if (std::abs(pt.first - x) < 1e-9 && std::abs(pt.second - y) < 1e-9) duplicate = true;
      if (!duplicate) out.points.emplace_back(x, y);
    }
  }
  out.status = out.points.empty() ? CommonRootStatus::no_common_root : CommonRootStatus::found;
  return out;
}

}  // namespace qmax
