#pragma once

/**
 * @file deg5.hpp
 * @brief Degree-5, signature (3,1) study of Q(5,1,{4},.) on the face z = 1.
 *
 * On z = 1,
 *   Q(5,1,{4},(x,y,1,g)) = R(x,y,g) * 4(1-g) sqrt(1-g^2),
 *   R = (1-x)(1-xy)(1-2xyg+(xy)^2)(1-y)(1-2yg+y^2).
 * For each g of an exact rational grid the maximum over (x,y) is located among
 * the y = -1 edge, the x = -1 edge and the interior critical points (common
 * zeros of R_x and R_y). On the y = -1 edge the maximum is analytic: the
 * stationary condition reduces to x(x^2-1)^2(7x^2-1) = 0 along
 * g = 2x^3/(1-3x^2).
 */

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmax/elimination.hpp"
#include "qmax/q_function.hpp"

namespace qmax::deg5 {

/// y = 0 column bound: Q(5,1,{4},(x,0,1,g)) = (1-x) 4(1-g)sqrt(1-g^2) <= 2 * 3 sqrt(3).
inline const double kYZeroBound = 6.0 * std::sqrt(3.0);

/// 16.69653152..., the value at (1/sqrt 7, -1, 1, 1/(2 sqrt 7)), i.e. (864/49)(27/28)^{3/2}.
inline double conjectured_maximum() { return 864.0 / 49.0 * std::pow(27.0 / 28.0, 1.5); }

inline double g_factor(double g) { return 4.0 * (1.0 - g) * std::sqrt(std::max(0.0, 1.0 - g * g)); }

inline double r_factor(double x, double y, double g) {
  const double xy = x * y;
  return (1.0 - x) * (1.0 - xy) * (1.0 - 2.0 * xy * g + xy * xy) * (1.0 - y) * (1.0 - 2.0 * y * g + y * y);
}

/// Q(5,1,{4},(x,y,1,g)).
inline double q_z1(double x, double y, double g) { return r_factor(x, y, g) * g_factor(g); }

/// 16(1-x^2)(1+2xg+x^2)(1-g^2)^{3/2}, i.e. q_z1(x, -1, g).
inline double boundary_form(double x, double g) {
  const double s = std::max(0.0, 1.0 - g * g);
  return 16.0 * (1.0 - x * x) * (1.0 + 2.0 * x * g + x * x) * s * std::sqrt(s);
}

/// R(x, y) for fixed rational g, outer variable x.
inline BiPoly<Rational> r_polynomial(const Rational& g) {
  using P = Poly<Rational>;
  const P one{Rational(1)};
  const P y = P::x();
  const Rational two_g = 2 * g;
  const BiPoly<Rational> f1{one, P{Rational(-1)}};                          // 1 - x
  const BiPoly<Rational> f2{one, P{Rational(0), Rational(-1)}};             // 1 - xy
  const BiPoly<Rational> f3{one, P{Rational(0), Rational(-two_g)}, y * y};  // 1 - 2g xy + x^2 y^2
  const BiPoly<Rational> f4{P{Rational(1), Rational(-1)}};                  // 1 - y
  const BiPoly<Rational> f5{P{Rational(1), Rational(-two_g), Rational(1)}}; // 1 - 2gy + y^2
  return f1 * f2 * f3 * f4 * f5;
}

struct RPartials {
  BiPoly<Rational> rx;
  BiPoly<Rational> ry;
};

inline RPartials r_partials(const Rational& g) {
  const auto r = r_polynomial(g);
  return {derivative(r), derivative_y(r)};
}

class Singularity : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// g = 2x^3 / (1 - 3x^2), the zero set of S_x for S = (1-x^2)(1+2xg+x^2).
inline double critical_curve(double x) {
  const double den = 1.0 - 3.0 * x * x;
  if (std::abs(den) <= 1e-12) throw Singularity("critical_curve: pole at x = +-1/sqrt(3)");
  return 2.0 * x * x * x / den;
}

inline double critical_curve_derivative(double x) {
  const double den = 1.0 - 3.0 * x * x;
  if (std::abs(den) <= 1e-12) throw Singularity("critical_curve_derivative: pole at x = +-1/sqrt(3)");
  return 6.0 * x * x * (1.0 - x * x) / (den * den);
}

/**
 * Numerator of the g-derivative condition 2x(1-g^2) - 3g(1+2xg+x^2) = 0 after
 * substituting g = 2x^3/(1-3x^2) and clearing (1-3x^2)^2.
 */
inline Poly<Rational> stationary_numerator() {
  using P = Poly<Rational>;
  const P x = P::x();
  const P den{Rational(1), Rational(0), Rational(-3)};        // 1 - 3x^2
  const P num = P::monomial(Rational(2), 3);                   // 2x^3
  const P two_x = x.scaled(Rational(2));
  const P three_num = num.scaled(Rational(3));
  return two_x * (den * den - num * num) - three_num * (den + two_x * num + x * x * den);
}

struct StationaryCandidate {
  RootBox x_box;
  double x = 0.0;
  std::optional<double> g;
  double value = 0.0;
  bool discarded = false;
};

struct StationaryPoint {
  double x = 0.0;
  double g = 0.0;
  double value = 0.0;
  RootBox x_box;
  double discard_threshold = 1.0;
  std::vector<StationaryCandidate> candidates;
};

/**
 * Isolates the real roots of the stationary numerator in [-1,1], drops those
 * whose boundary_form value is below the threshold (the objective vanishes
 * there), and returns the best survivor (positive x on ties).
 */
inline StationaryPoint solve_stationary(double width = 1e-12, double discard_threshold = 1.0) {
  StationaryPoint out;
  out.discard_threshold = discard_threshold;
  bool have = false;
  for (const RootBox& box : real_roots_in(stationary_numerator(), -1.0, 1.0, width)) {
    StationaryCandidate c;
    c.x_box = box;
    c.x = box.mid();
    try {
      c.g = critical_curve(c.x);
    } catch (const Singularity&) {
      c.discarded = true;
      out.candidates.push_back(c);
      continue;
    }
    const double g = std::clamp(*c.g, -1.0, 1.0);
    c.value = boundary_form(c.x, g);
    c.discarded = !(c.value >= discard_threshold);
    out.candidates.push_back(c);
    if (c.discarded) continue;
    if (!have || c.value > out.value + 1e-12 || (std::abs(c.value - out.value) <= 1e-12 && c.x > out.x)) {
      out.x = c.x;
      out.g = g;
      out.value = c.value;
      out.x_box = box;
      have = true;
    }
  }
  if (!have) throw std::runtime_error("solve_stationary: no admissible stationary point");
  return out;
}

// --- g sweep -------------------------------------------------------------

struct SweepGrid {
  Rational from = Rational(-999, 1000);
  Rational to = Rational(999, 1000);
  Rational step = Rational(1, 1536);
};

/// from, from + step, ... up to to, with to appended when the last step falls short.
inline std::vector<Rational> grid_points(const SweepGrid& grid) {
  if (!(grid.step > 0)) throw std::invalid_argument("sweep grid: step must be positive");
  if (!(grid.from > -1 && grid.to < 1)) throw std::invalid_argument("sweep grid must lie inside (-1, 1)");
  if (grid.from > grid.to) throw std::invalid_argument("sweep grid: from > to");
  std::vector<Rational> pts;
  for (Rational g = grid.from; g <= grid.to; g += grid.step) pts.push_back(g);
  if (pts.back() != grid.to) pts.push_back(grid.to);
  return pts;
}

enum class Region5 { edge_y, edge_x, interior };

inline const char* to_string(Region5 r) {
  switch (r) {
    case Region5::edge_y: return "edge_y";
    case Region5::edge_x: return "edge_x";
    case Region5::interior: return "interior";
  }
  return "?";
}

struct EdgeMax {
  double value = 0.0;
  double at = 0.0;  ///< maximizing x (y = -1 edge) or y (x = -1 edge)
};

struct InteriorMax {
  double value = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct SweepRecord {
  Rational g;
  EdgeMax edge_y;                       ///< max over x of Q(x, -1, 1, g)
  EdgeMax edge_x;                       ///< max over y of Q(-1, y, 1, g)
  std::optional<InteriorMax> interior;  ///< best common zero of R_x, R_y in (-1,1)^2
  Region5 winner = Region5::edge_y;
  double winner_value = 0.0;
  /// edge_y value minus the best competing value.
  double margin = 0.0;
  /// max over x of Q(x, 0, 1, g) = 2 * 4(1-g)sqrt(1-g^2); bounded by kYZeroBound, never competes.
  double y_zero_column = 0.0;
  int interior_candidates = 0;
  int y_zero_skipped = 0;
  bool resultant_degenerate = false;

  [[nodiscard]] double g_value() const { return to_double(g); }
};

namespace detail {
inline bool touches_zero(const RootBox& b) { return b.lo <= 0.0 && b.hi >= 0.0; }

/// Endpoints plus the critical points of the slice; skip_zero drops a critical point at 0.
template <class F>
EdgeMax edge_maximum(const Poly<Rational>& derivative_slice, F&& objective, bool skip_zero, int& skipped) {
  EdgeMax best{objective(-1.0), -1.0};
  auto consider = [&](double t) {
    const double v = objective(t);
    if (v > best.value) best = {v, t};
  };
  consider(1.0);
  if (derivative_slice.degree() >= 1)
    for (const RootBox& b : real_roots_in(derivative_slice, -1.0, 1.0, 1e-12)) {
      if (skip_zero && touches_zero(b)) {
        ++skipped;
        continue;
      }
      consider(b.mid());
    }
  return best;
}
}  // namespace detail

/**
 * Analyses one grid value g. The column y = 0 (including its end x = -1 on
 * the x = -1 edge) is excluded from every region: there Q <= 6 sqrt(3) < 12,
 * below Q(0,-1,1,0) = 16, so no global maximum can sit on it.
 */
inline SweepRecord sweep_point(const Rational& g) {
  SweepRecord rec;
  rec.g = g;
  const double gd = to_double(g);
  const RPartials parts = r_partials(g);
  rec.y_zero_column = 2.0 * g_factor(gd);

  int unused = 0;
  rec.edge_y = detail::edge_maximum(substitute_y(parts.rx, Rational(-1)),
                                    [&](double x) { return q_z1(x, -1.0, gd); }, false, unused);
  rec.edge_x = detail::edge_maximum(substitute_x(parts.ry, Rational(-1)),
                                    [&](double y) { return q_z1(-1.0, y, gd); }, true, rec.y_zero_skipped);

  CommonRootOptions opt;
  opt.skip_y = detail::touches_zero;
  const CommonRoots cr = common_real_roots(parts.rx, parts.ry, Region{-1, 1, -1, 1, true}, opt);
  rec.resultant_degenerate = cr.status == CommonRootStatus::resultant_identically_zero;
  rec.y_zero_skipped += cr.skipped_y_roots;
  rec.interior_candidates = static_cast<int>(cr.points.size());
  for (const auto& [x, y] : cr.points) {
    const double v = q_z1(x, y, gd);
    if (!rec.interior || v > rec.interior->value) rec.interior = InteriorMax{v, x, y};
  }

  rec.winner = Region5::edge_y;
  rec.winner_value = rec.edge_y.value;
  double rival = rec.edge_x.value;
  if (rec.edge_x.value > rec.winner_value) {
    rec.winner = Region5::edge_x;
    rec.winner_value = rec.edge_x.value;
  }
  if (rec.interior) {
    rival = std::max(rival, rec.interior->value);
    if (rec.interior->value > rec.winner_value) {
      rec.winner = Region5::interior;
      rec.winner_value = rec.interior->value;
    }
  }
  rec.margin = rec.edge_y.value - rival;
  return rec;
}

inline std::vector<SweepRecord> sweep(const SweepGrid& grid = {}) {
  std::vector<SweepRecord> out;
  for (const Rational& g : grid_points(grid)) out.push_back(sweep_point(g));
  return out;
}

}  // namespace qmax::deg5
