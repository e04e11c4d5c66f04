#pragma once

/**
 * @file verify.hpp
 * @brief The fixed battery of exactly known values of P and Q.
 */

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "qmax/closed_forms.hpp"
#include "qmax/deg5.hpp"
#include "qmax/q_function.hpp"

namespace qmax {

struct Check {
  std::string name;
  double expected = 0.0;
  double actual = 0.0;
  double tolerance = 0.0;  ///< relative; closed-form rows store the worst relative gap in actual
  bool passed = false;
};

inline Check make_check(std::string name, double expected, double actual, double rel_tol) {
  Check c{std::move(name), expected, actual, rel_tol, false};
  c.passed = std::abs(actual - expected) <= rel_tol * std::max(1.0, std::abs(expected));
  return c;
}

/// (..., 0, -1, 0, -1): the r2 = 0 point where Q = 2^{floor(n/2)}.
inline std::vector<double> pohst_point(int n) {
  std::vector<double> x(n - 1);
  for (int i = 0; i < n - 1; ++i) x[i] = (n - 2 - i) % 2 ? 0.0 : -1.0;
  return x;
}

/**
 * Roots of unity for n = 2..9 (both configurations for even n), the r2 = 0
 * extremal points for n <= 11, the worked low-degree maxima, and agreement of
 * every closed form with the generic evaluation on `samples` random points.
 */
inline std::vector<Check> verify_known(int samples = 1000, std::uint64_t seed = 1) {
  std::vector<Check> out;
  for (int n = 2; n <= 9; ++n) {
    out.push_back(make_check("roots_of_unity n=" + std::to_string(n), std::pow(n, n / 2.0),
                             roots_of_unity_value(n, false), 1e-9));
    if (n % 2 == 0)
      out.push_back(make_check("roots_of_unity_staggered n=" + std::to_string(n), std::pow(n, n / 2.0),
                               roots_of_unity_value(n, true), 1e-9));
  }
  for (int n = 2; n <= 11; ++n) {
    const auto x = pohst_point(n);
    out.push_back(make_check("pohst_point n=" + std::to_string(n), std::ldexp(1.0, n / 2),
                             evaluate_q(Signature::make(n, 0), {}, x), 1e-12));
  }

  const double r2 = std::sqrt(0.5);
  const double s7 = 1.0 / std::sqrt(7.0);
  struct Point {
    const char* name;
    int n, r2;
    std::vector<int> pairs;
    std::vector<double> x;
    double expected;
  };
  const std::vector<Point> points = {
      {"Q(2,0) at (-1)", 2, 0, {}, {-1.0}, 2.0},
      {"Q(3,1,{2}) at (1,-1/2)", 3, 1, {2}, {1.0, -0.5}, std::pow(3.0, 1.5)},
      {"Q(4,1,{3}) at (-1,1,0)", 4, 1, {3}, {-1.0, 1.0, 0.0}, 16.0},
      {"Q(4,2,{1,3}) at (1,1/sqrt2,-1/sqrt2)", 4, 2, {1, 3}, {1.0, r2, -r2}, 16.0},
      {"Q(5,1,{4}) at (0,-1,1,0)", 5, 1, {4}, {0.0, -1.0, 1.0, 0.0}, 16.0},
      {"Q(5,1,{4}) at (1/sqrt7,-1,1,1/(2sqrt7))", 5, 1, {4}, {s7, -1.0, 1.0, s7 / 2.0},
       deg5::conjectured_maximum()},
  };
  for (const auto& p : points)
    out.push_back(make_check(p.name, p.expected,
                             evaluate_q(Signature::make(p.n, p.r2), AdmissibleIndexSet{p.pairs}, p.x), 1e-12));

  std::mt19937_64 gen(seed);
  for (const auto& entry : closed_form_catalogue()) {
    const QFunction q(entry.sig, entry.pairs);
    std::vector<double> x(q.dimension());
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      for (double& v : x) v = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
      const double a = q.evaluate(x);
      const double b = closed_form_q(entry.sig, entry.pairs, x);
      worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
    out.push_back(Check{"closed_form (" + std::to_string(entry.sig.n) + "," + std::to_string(entry.sig.r2) + ")," +
                             entry.pairs.to_string(),
                         0.0, worst, 1e-10, worst <= 1e-10});
  }
  return out;
}

}  // namespace qmax
