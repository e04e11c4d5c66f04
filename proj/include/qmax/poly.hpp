#pragma once

/**
 * @file poly.hpp
 * @brief Dense univariate polynomials over a coefficient ring.
 *
 * Poly<T> works for T = double, Rational, and nested Poly<...> (a bivariate
 * polynomial is Poly<Poly<T>>: outer variable x, coefficients in y).
 * Coefficients are stored from degree 0 upward; trailing zeros are stripped so
 * the leading coefficient is nonzero unless the polynomial is zero.
 */

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "qmax/rational.hpp"

namespace qmax {

template <class T>
class Poly;

template <class T>
bool coeff_is_zero(const T& v) {
  if constexpr (requires { v.is_zero(); })
    return v.is_zero();
  else
    return v == 0;
}

/// Converts between coefficient kinds (Rational -> double is rounded, double -> Rational exact).
template <class U, class T>
U convert(const T& v) {
  if constexpr (std::is_same_v<U, T>)
    return v;
  else if constexpr (std::is_same_v<U, double> && std::is_same_v<T, Rational>)
    return v.get_d();
  else if constexpr (std::is_same_v<U, Rational> && std::is_same_v<T, double>)
    return exact_rational(v);
  else
    return U(v);
}

template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { normalize(); }
  /// Constant polynomial; lets Poly<T> act as a coefficient ring (T(0), T(1)).
  explicit Poly(int constant) {
    if (constant != 0) c_.push_back(T(constant));
  }

  static Poly constant(const T& c) { return Poly(std::vector<T>{c}); }
  static Poly monomial(const T& c, int k) {
    std::vector<T> v(static_cast<std::size_t>(k) + 1, T(0));
    v.back() = c;
    return Poly(std::move(v));
  }
  /// The variable itself.
  static Poly x() { return monomial(T(1), 1); }

  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::vector<T>& coeffs() const { return c_; }
  [[nodiscard]] T coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : T(0);
  }
  [[nodiscard]] const T& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  Poly operator-() const {
    std::vector<T> v(c_.size(), T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return Poly(std::move(v));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    normalize();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    normalize();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }

  [[nodiscard]] Poly scaled(const T& s) const {
    std::vector<T> v(c_.size(), T(0));
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * s;
    return Poly(std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Horner evaluation at t; exact for rational coefficients and rational t.
  template <class U>
  [[nodiscard]] U operator()(const U& t) const {
    U acc = U(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + convert<U>(c_[i]);
    return acc;
  }

 private:
  void normalize() {
    while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
Poly<T> derivative(const Poly<T>& p) {
  if (p.degree() < 1) return Poly<T>();
  std::vector<T> v(p.degree(), T(0));
  for (int k = 1; k <= p.degree(); ++k) v[k - 1] = p.coeffs()[k] * T(k);
  return Poly<T>(std::move(v));
}

template <class U, class T, class F>
Poly<U> map_coeffs(const Poly<T>& p, F&& f) {
  std::vector<U> v;
  v.reserve(p.coeffs().size());
  for (const T& c : p.coeffs()) v.push_back(f(c));
  return Poly<U>(std::move(v));
}

template <class U, class T>
Poly<U> convert_poly(const Poly<T>& p) {
  return map_coeffs<U>(p, [](const T& c) { return convert<U>(c); });
}

/// Quotient and remainder over a field.
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<T> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<T>(), a};
  std::vector<T> q(a.degree() - db + 1, T(0));
  const T lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    if (coeff_is_zero(r[k])) continue;
    const T f = r[k] / lead;
    q[k - db] = f;
    for (int i = 0; i <= db; ++i) r[k - db + i] = r[k - db + i] - f * b.coeffs()[i];
    r[k] = T(0);
  }
  r.resize(db);
  return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

template <class T>
Poly<T> monic(const Poly<T>& p) {
  if (p.is_zero()) return p;
  const T lead = p.leading();
  return map_coeffs<T>(p, [&](const T& c) { return T(c / lead); });
}

/// Monic gcd over an exact field.
template <class T>
Poly<T> gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Bivariate helpers: p(x, y) stored as Poly<Poly<T>> with outer variable x.
template <class T>
using BiPoly = Poly<Poly<T>>;

/// p(x, y0) as a polynomial in x.
template <class U, class T>
Poly<U> substitute_y(const BiPoly<T>& p, const U& y0) {
  return map_coeffs<U>(p, [&](const Poly<T>& c) { return c(y0); });
}

/// p(x0, y) as a polynomial in y.
template <class T>
Poly<T> substitute_x(const BiPoly<T>& p, const T& x0) {
  Poly<T> acc;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc.scaled(x0) + p.coeffs()[i];
  return acc;
}

template <class U, class T>
U evaluate(const BiPoly<T>& p, const U& x0, const U& y0) {
  U acc = U(0);
  for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = acc * x0 + p.coeffs()[i](y0);
  return acc;
}

/// d/dy applied coefficientwise.
template <class T>
BiPoly<T> derivative_y(const BiPoly<T>& p) {
  return map_coeffs<Poly<T>>(p, [](const Poly<T>& c) { return derivative(c); });
}

/// Largest y-degree among the coefficients.
template <class T>
int degree_y(const BiPoly<T>& p) {
  int d = -1;
  for (const auto& c : p.coeffs()) d = std::max(d, c.degree());
  return d;
}

template <class T>
std::string to_string(const Poly<T>& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const T& c = p.coeffs()[k];
    if (coeff_is_zero(c)) continue;
    std::string cs;
    if constexpr (std::is_same_v<T, Rational>)
      cs = c.get_str();
    else if constexpr (std::is_arithmetic_v<T>)
      cs = std::to_string(c);
    else
      cs = "(" + to_string(c, "y") + ")";
    if (!s.empty()) s += " + ";
    s += cs;
    if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

}  // namespace qmax
