#pragma once

/**
 * @file roots.hpp
 * @brief Certified real-root isolation on an interval.
 *
 * The input is converted exactly to a primitive integer polynomial (doubles
 * are dyadic rationals), reduced to its squarefree part, and isolated with
 * Descartes' rule of signs under interval bisection. Each isolating interval
 * is then shrunk by exact sign bisection until it is no wider than requested.
 * All arithmetic after the conversion is exact.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qmax/poly.hpp"

namespace qmax {

/// [lo, hi] holds exactly one real root; multiplicity_hint is its multiplicity.
struct RootBox {
  double lo = 0.0;
  double hi = 0.0;
  int multiplicity_hint = 1;

  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] double width() const { return hi - lo; }
};

class CertificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

using IPoly = std::vector<Integer>;  // low degree first, no trailing zeros

inline void trim(IPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const IPoly& p) { return static_cast<int>(p.size()) - 1; }

inline void make_primitive(IPoly& p) {
  trim(p);
  if (p.empty()) return;
  Integer g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (p.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline IPoly primitive_integer(const Poly<Rational>& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IPoly out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(c.get_num() * (l / c.get_den()));
  make_primitive(out);
  return out;
}

inline IPoly derivative(const IPoly& p) {
  IPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<unsigned long>(k));
  trim(d);
  return d;
}

/// Pseudo-remainder of a by b.
inline IPoly prem(IPoly a, const IPoly& b) {
  const int db = deg(b);
  const Integer& lb = b.back();
  while (deg(a) >= db && !a.empty()) {
    const Integer la = a.back();
    const int shift = deg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[shift + i] -= la * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

/// Primitive gcd over Z[x] (primitive remainder sequence).
inline IPoly gcd(IPoly a, IPoly b) {
  make_primitive(a);
  make_primitive(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    IPoly r = prem(a, b);
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

/// a / b where b divides a over Q; returned primitive.
inline IPoly exact_quotient(const IPoly& a, const IPoly& b) {
  std::vector<Rational> r(a.begin(), a.end());
  const int db = deg(b);
  std::vector<Rational> q(std::max(0, deg(a) - db + 1));
  for (int k = deg(a); k >= db; --k) {
    Rational f = r[k] / Rational(b.back());
    q[k - db] = f;
    for (int i = 0; i <= db; ++i) r[k - db + i] -= f * b[i];
  }
  return primitive_integer(Poly<Rational>(std::move(q)));
}

// Squarefreeness modulo the Mersenne prime 2^61 - 1. A constant gcd there
// (with the degree preserved) certifies squarefreeness over Q.
inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}
inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

inline bool squarefree_mod_prime(const IPoly& p) {
  using V = std::vector<std::uint64_t>;
  auto reduce = [](const IPoly& f) {
    V v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      Integer m;
      mpz_fdiv_r_ui(m.get_mpz_t(), f[i].get_mpz_t(), kPrime);
      v[i] = m.get_ui();
    }
    return v;
  };
  auto trim_v = [](V& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  V a = reduce(p);
  trim_v(a);
  if (static_cast<int>(a.size()) != static_cast<int>(p.size())) return false;
  V b = reduce(derivative(p));
  trim_v(b);
  if (static_cast<int>(b.size()) != static_cast<int>(p.size()) - 1) return false;
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size() && !a.empty()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = (a[shift + i] + kPrime - mulmod(f, b[i])) % kPrime;
      a.pop_back();
      trim_v(a);
    }
    std::swap(a, b);
  }
  return a.size() == 1;
}

/// In-place Taylor shift p(t) -> p(t + a).
inline void taylor_shift(IPoly& p, const Integer& a) {
  const int d = deg(p);
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) p[j] += a * p[j + 1];
}
inline void taylor_shift_one(IPoly& p) {
  const int d = deg(p);
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) p[j] += p[j + 1];
}

/// Sign variations of (1+t)^d p(1/(1+t)): an upper bound on roots in (0,1) with equal parity.
inline int descartes_01(const IPoly& p) {
  IPoly r(p.rbegin(), p.rend());
  taylor_shift_one(r);
  int v = 0;
  int last = 0;
  for (const auto& c : r) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

/// sign of p(m / 2^j) (exact).
inline int sign_at_dyadic(const IPoly& p, const Integer& m, unsigned long j) {
  const int d = deg(p);
  if (d < 0) return 0;
  Integer acc = p[d];
  Integer pw = 1;
  for (int i = d - 1; i >= 0; --i) {
    mpz_mul_2exp(pw.get_mpz_t(), pw.get_mpz_t(), j);
    acc = acc * m + p[i] * pw;
  }
  return sgn(acc);
}

inline Rational eval_rational(const IPoly& p, const Rational& t) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * t + Rational(p[i]);
  return acc;
}

/// Divides by t (root at 0) or by (t - 1) (root at 1).
inline void divide_by_t(IPoly& p) { p.erase(p.begin()); }
inline void divide_by_t_minus_one(IPoly& p) {
  const int d = deg(p);
  IPoly q(d);
  Integer carry = 0;
  for (int i = d; i >= 1; --i) {
    carry += p[i];
    q[i - 1] = carry;
  }
  p = std::move(q);
}

inline double round_down(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) > q) d = std::nextafter(d, -INFINITY);
  return d;
}
inline double round_up(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) < q) d = std::nextafter(d, INFINITY);
  return d;
}

struct ExactRoot {
  Rational lo;
  Rational hi;
};

/**
 * Isolates the roots of a squarefree integer polynomial in [lo, hi] into
 * disjoint rational intervals of width <= width (exact roots as points).
 */
inline std::vector<ExactRoot> isolate(IPoly f, const Rational& lo, const Rational& hi,
                                      const Rational& width) {
  std::vector<ExactRoot> out;
  if (deg(f) < 1) return out;
  if (lo == hi) {
    if (eval_rational(f, lo) == 0) out.push_back({lo, lo});
    return out;
  }
  const Rational span = hi - lo;
  auto at = [&](const Rational& t) { return Rational(lo + span * t); };

  // P0(s) = 2^{ed} f(lo + span*s), integral after scaling by common denominators.
  Integer den = lo.get_den();
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), hi.get_den_mpz_t());
  const Integer a_num = lo.get_num() * (den / lo.get_den());
  const Integer b_num = hi.get_num() * (den / hi.get_den());
  const Integer w = b_num - a_num;
  const int d = deg(f);
  IPoly p0(f.size());
  {
    Integer pw = 1;
    for (int i = d; i >= 0; --i) {
      p0[i] = f[i] * pw;
      pw *= den;
    }
    taylor_shift(p0, a_num);
    Integer wp = 1;
    for (int i = 0; i <= d; ++i) {
      p0[i] *= wp;
      wp *= w;
    }
    make_primitive(p0);
  }
  if (p0.front() == 0) {
    out.push_back({lo, lo});
    divide_by_t(p0);
  }
  {
    Integer s = 0;
    for (const auto& c : p0) s += c;
    if (s == 0) {
      out.push_back({hi, hi});
      divide_by_t_minus_one(p0);
    }
  }

  struct Node {
    unsigned long level;
    Integer index;  // interval [index, index+1] / 2^level in s
    IPoly poly;
  };
  std::vector<Node> stack;
  stack.push_back({0, Integer(0), p0});
  std::vector<Node> isolated;
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (deg(node.poly) < 1) continue;
    const int v = descartes_01(node.poly);
    if (v == 0) continue;
    if (v == 1) {
      isolated.push_back(std::move(node));
      continue;
    }
    const int nd = deg(node.poly);
    IPoly left = node.poly;
    for (int i = 0; i <= nd; ++i) mpz_mul_2exp(left[i].get_mpz_t(), left[i].get_mpz_t(), nd - i);
    IPoly right = left;
    taylor_shift_one(right);
    const unsigned long level = node.level + 1;
    const Integer li = node.index * 2;
    if (right.front() == 0) {
      Rational t(li + 1);
      mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), level);
      const Rational x = at(t);
      out.push_back({x, x});
      divide_by_t(right);
      divide_by_t_minus_one(left);
    }
    make_primitive(left);
    make_primitive(right);
    stack.push_back({level, li + 1, std::move(right)});
    stack.push_back({level, li, std::move(left)});
  }

  for (const Node& node : isolated) {
    // Root of node.poly in (0,1); bisect on t = m / 2^j.
    Integer a = 0, b = 1;
    unsigned long j = 0;
    const int sa = sign_at_dyadic(node.poly, a, j);
    // s = (index + m / 2^jj) / 2^level
    auto to_s = [&](const Integer& m, unsigned long jj) {
      Integer num = node.index;
      mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), jj);
      num += m;
      Rational t(num);
      mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), jj + node.level);
      return t;
    };
    bool exact = false;
    Rational cur_width = span;
    mpq_div_2exp(cur_width.get_mpq_t(), cur_width.get_mpq_t(), node.level);
    while (cur_width > width) {
      a *= 2;
      b *= 2;
      ++j;
      const Integer m = a + 1;
      const int sm = sign_at_dyadic(node.poly, m, j);
      if (sm == 0) {
        const Rational x = at(to_s(m, j));
        out.push_back({x, x});
        exact = true;
        break;
      }
      if (sm == sa)
        a = m;
      else
        b = m;
      cur_width /= 2;
    }
    if (!exact) out.push_back({at(to_s(a, j)), at(to_s(b, j))});
  }
  std::sort(out.begin(), out.end(), [](const ExactRoot& x, const ExactRoot& y) { return x.lo < y.lo; });
  return out;
}

/// Exact real roots of p (rational coefficients) in [lo, hi], with multiplicities.
struct ExactIsolation {
  std::vector<ExactRoot> roots;
  std::vector<int> multiplicity;
};

inline ExactIsolation isolate_with_multiplicity(const Poly<Rational>& p, const Rational& lo,
                                                const Rational& hi, const Rational& width) {
  IPoly f = primitive_integer(p);
  ExactIsolation res;
  if (deg(f) < 1) return res;
  if (squarefree_mod_prime(f)) {
    res.roots = isolate(f, lo, hi, width);
    res.multiplicity.assign(res.roots.size(), 1);
    return res;
  }
  // d_0 = f, d_{k+1} = gcd(d_k, d_k'); s_k = d_k / d_{k+1} vanishes on roots of multiplicity > k.
  std::vector<IPoly> chain{f};
  while (deg(chain.back()) >= 1) chain.push_back(gcd(chain.back(), derivative(chain.back())));
  std::vector<IPoly> sqf_parts;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) sqf_parts.push_back(exact_quotient(chain[k], chain[k + 1]));
  res.roots = isolate(sqf_parts.front(), lo, hi, width);
  for (const auto& r : res.roots) {
    int mult = 0;
    for (const auto& s : sqf_parts) {
      const Rational vl = eval_rational(s, r.lo);
      const Rational vh = eval_rational(s, r.hi);
      if (vl == 0 || vh == 0 || sgn(vl) != sgn(vh)) ++mult;
    }
    res.multiplicity.push_back(std::max(1, mult));
  }
  return res;
}

}  // namespace detail

/**
 * Boxes of width <= width around every real root of p in [lo, hi], each box
 * holding exactly one root, sorted by position. Roots are counted once
 * (squarefree part); multiplicity_hint carries the multiplicity.
 *
 * Throws std::invalid_argument for width <= 0, lo > hi or the zero polynomial,
 * and CertificationFailure when a coefficient is not finite.
 */
template <class T>
std::vector<RootBox> real_roots_in(const Poly<T>& p, double lo, double hi, double width = 1e-12) {
  if (!(width > 0.0)) throw std::invalid_argument("real_roots_in: width must be positive");
  if (!(lo <= hi)) throw std::invalid_argument("real_roots_in: empty interval");
  if (p.is_zero()) throw std::invalid_argument("real_roots_in: zero polynomial has no isolated roots");
  Poly<Rational> exact;
  if constexpr (std::is_same_v<T, Rational>) {
    exact = p;
  } else {
    for (const auto& c : p.coeffs())
      if (!std::isfinite(static_cast<double>(c)))
        throw CertificationFailure("real_roots_in: non-finite coefficient prevents certification");
    exact = convert_poly<Rational>(p);
  }
  const auto iso = detail::isolate_with_multiplicity(exact, exact_rational(lo), exact_rational(hi),
                                                     exact_rational(width) / 2);
  std::vector<RootBox> out;
  for (std::size_t i = 0; i < iso.roots.size(); ++i)
    out.push_back({detail::round_down(iso.roots[i].lo), detail::round_up(iso.roots[i].hi),
                   iso.multiplicity[i]});
  return out;
}

}  // namespace qmax
