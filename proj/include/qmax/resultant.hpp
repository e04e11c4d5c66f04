#pragma once

/**
 * @file resultant.hpp
 * @brief Sylvester resultants: exact over the rationals, pivoted in floating point,
 *        and bivariate elimination by evaluation/interpolation.
 */

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qmax/poly.hpp"

namespace qmax {

template <class T>
using Matrix = std::vector<std::vector<T>>;

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Sylvester matrix of p, q with the given formal degrees (defaults: actual
 * degrees). Formal degrees let a specialization keep the shape of its parent
 * when a leading coefficient vanishes.
 */
template <class T>
Matrix<T> sylvester_matrix(const Poly<T>& p, const Poly<T>& q, int dp = -1, int dq = -1) {
  if (dp < 0) dp = p.degree();
  if (dq < 0) dq = q.degree();
  const int size = dp + dq;
  Matrix<T> m(size, std::vector<T>(size, T(0)));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k) m[r][r + dp - k] = p.coeff(k);
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k) m[dq + r][r + dq - k] = q.coeff(k);
  return m;
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
inline Integer bareiss_determinant(Matrix<Integer> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(t);
      }
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : Integer(-a[n - 1][n - 1]);
}

/// Exact determinant: rows are cleared of denominators, then Bareiss.
inline Rational determinant(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  Matrix<Integer> z(n, std::vector<Integer>(n));
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    for (const auto& v : a[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) z[i][j] = a[i][j].get_num() * (l / a[i][j].get_den());
    scale *= l;
  }
  Rational d(bareiss_determinant(std::move(z)), scale);
  d.canonicalize();
  return d;
}

struct FloatDeterminant {
  double value = 0.0;
  /// 1-norm condition estimate of the matrix (infinity when singular).
  double condition = 0.0;
};

/// Gaussian elimination with partial pivoting; condition estimated from the LU factors.
inline FloatDeterminant determinant_with_condition(Matrix<double> a) {
  const std::size_t n = a.size();
  FloatDeterminant out;
  if (n == 0) {
    out.value = 1.0;
    out.condition = 1.0;
    return out;
  }
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i][j]);
    norm1 = std::max(norm1, s);
  }
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) {
      out.value = 0.0;
      out.condition = std::numeric_limits<double>::infinity();
      return out;
    }
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i][k] / a[k][k];
      a[i][k] = f;
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  // ||A^{-1}||_1 by explicit inversion through the factors (n is small here).
  double inv_norm = 0.0;
  std::vector<double> col(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Columns of (PA)^{-1} are a permutation of those of A^{-1}, so the 1-norm is unchanged.
    std::fill(col.begin(), col.end(), 0.0);
    col[j] = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) col[i] -= a[i][k] * col[k];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) col[i] -= a[i][k] * col[k];
      col[i] /= a[i][i];
    }
    double s = 0.0;
    for (double v : col) s += std::abs(v);
    inv_norm = std::max(inv_norm, s);
  }
  out.value = det;
  out.condition = norm1 * inv_norm;
  return out;
}

inline double determinant(const Matrix<double>& a) { return determinant_with_condition(a).value; }

/**
 * Res(p, q) = det Sylvester(p, q). Exact for Rational, pivoted for double.
 * Throws DegenerateInput when both polynomials are zero. A constant argument
 * gives the usual convention c^{deg of the other}.
 */
template <class T>
T resultant(const Poly<T>& p, const Poly<T>& q) {
  if (p.is_zero() && q.is_zero()) throw DegenerateInput("resultant: both polynomials are zero");
  if (p.is_zero() || q.is_zero()) return T(0);
  return determinant(sylvester_matrix(p, q));
}

inline FloatDeterminant resultant_with_condition(const Poly<double>& p, const Poly<double>& q) {
  if (p.is_zero() && q.is_zero()) throw DegenerateInput("resultant: both polynomials are zero");
  if (p.is_zero() || q.is_zero()) return {0.0, std::numeric_limits<double>::infinity()};
  return determinant_with_condition(sylvester_matrix(p, q));
}

/// Newton interpolation through (nodes[i], values[i]) over an exact field.
template <class T>
Poly<T> interpolate(const std::vector<T>& nodes, std::vector<T> values) {
  const std::size_t n = nodes.size();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      values[i] = (values[i] - values[i - 1]) / (nodes[i] - nodes[i - k]);
      if (i == k) break;
    }
  Poly<T> acc;
  for (std::size_t i = n; i-- > 0;) {
    acc = acc * Poly<T>{T(-nodes[i]), T(1)} + Poly<T>::constant(values[i]);
  }
  return acc;
}

/**
 * Res_x(p, q) as a polynomial in y for p, q in T[y][x]. Computed by evaluating
 * at deg-bound + 1 integer nodes y = 0, 1, ... with the formal x-degrees held
 * fixed, then interpolating.
 */
template <class T>
Poly<T> resultant_x(const BiPoly<T>& p, const BiPoly<T>& q) {
  if (p.is_zero() && q.is_zero()) throw DegenerateInput("resultant: both polynomials are zero");
  if (p.is_zero() || q.is_zero()) return Poly<T>();
  const int dp = p.degree();
  const int dq = q.degree();
  const int bound = dq * std::max(0, degree_y(p)) + dp * std::max(0, degree_y(q));
  std::vector<T> nodes, values;
  nodes.reserve(bound + 1);
  values.reserve(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    const T y0 = T(k);
    nodes.push_back(y0);
    values.push_back(determinant(sylvester_matrix(substitute_y(p, y0), substitute_y(q, y0), dp, dq)));
  }
  return interpolate(nodes, std::move(values));
}

}  // namespace qmax
