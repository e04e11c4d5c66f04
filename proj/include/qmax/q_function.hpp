#pragma once

/**
 * @file q_function.hpp
 * @brief The discriminant-ratio product P and its box parametrization Q.
 *
 * For an ordered tuple eps_1..eps_n with |eps_1| <= ... <= |eps_n|,
 *
 *     P(eps) = prod_{i<j} |1 - eps_i/eps_j|^2,   Q = sqrt(P).
 *
 * The tuple is grouped into blocks: a real entry, or a conjugate pair
 * (eps_j, eps_{j+1}) for j in the admissible index set J. Each block carries a
 * signed real scale s_k (a pair is s_k * (e^{i theta}, e^{-i theta})), the last
 * block has scale 1 and a real last entry is +1.
 *
 * Box coordinate layout (n-1 slots):
 *   - first the ratio slots, one per block boundary at positions i not in J,
 *     in increasing i: x = s_k / s_{k+1};
 *   - then one cosine slot per pair in J order: g = cos(theta).
 *
 * With this layout the worked cases read as (x, g) for (3,1),{2}; (r, g) for
 * (3,1),{1}; (x, y, g) for (4,1),{3}; (x, g, h) for (4,2),{1,3} and
 * (x, y, z, g) for (5,1),{4}.
 *
 * Q is evaluated directly from the coordinates as a product of block-ratio
 * factors, which is the continuous extension to the closed box (zero ratios
 * included). A pair's own factor |1 - e^{2 i theta}| is computed as
 * 2 sqrt(1 - g^2).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmax/signature.hpp"

namespace qmax {

using Complex = std::complex<double>;

/// A point of [-1,1]^(n-1) in the layout described above.
struct BoxPoint {
  std::vector<double> coords;

  [[nodiscard]] bool in_box() const {
    return std::all_of(coords.begin(), coords.end(),
                       [](double v) { return std::abs(v) <= 1.0; });
  }
  friend auto operator<=>(const BoxPoint&, const BoxPoint&) = default;
};

/// eps_1..eps_n with the pair placement that produced them.
struct ConjugateTuple {
  std::vector<Complex> entries;
  AdmissibleIndexSet pair_set;
};

/// Q(n, r2, J, .) with its coordinate layout precomputed.
class QFunction {
 public:
  static constexpr int kMaxDegree = 64;

  struct Block {
    bool pair = false;
    int first = 1;         // 1-based position of the (first) entry
    int ratio_slot = -1;   // slot of the boundary to the next block, -1 for the last block
    int cos_slot = -1;     // pairs only
  };

  QFunction(Signature sig, AdmissibleIndexSet pairs) : sig_(sig), pairs_(std::move(pairs)) {
    if (sig_.n > kMaxDegree) throw std::invalid_argument("QFunction: degree above 64");
    pairs_.validate(sig_);
    const int ratio_count = sig_.n - 1 - sig_.r2;
    int ratio = 0;
    int cosine = 0;
    for (int i = 1; i <= sig_.n;) {
      Block b;
      b.first = i;
      b.pair = pairs_.contains(i);
      if (b.pair) b.cos_slot = ratio_count + cosine++;
      i += b.pair ? 2 : 1;
      if (i <= sig_.n) b.ratio_slot = ratio++;
      blocks_.push_back(b);
    }
  }

  [[nodiscard]] const Signature& signature() const { return sig_; }
  [[nodiscard]] const AdmissibleIndexSet& index_set() const { return pairs_; }
  [[nodiscard]] int dimension() const { return sig_.n - 1; }
  [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }

  /// Q at x; x must lie in the closed box.
  [[nodiscard]] double operator()(std::span<const double> x) const {
    check(x);
    return evaluate(x);
  }
  [[nodiscard]] double operator()(const BoxPoint& x) const { return (*this)(x.coords); }

  /// Hot-path evaluation without the box check.
  [[nodiscard]] double evaluate(std::span<const double> x) const {
    const std::size_t m = blocks_.size();
    std::array<double, kMaxDegree> cs{};
    std::array<double, kMaxDegree> sn{};
    double q = 1.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!blocks_[k].pair) continue;
      const double g = x[blocks_[k].cos_slot];
      cs[k] = g;
      sn[k] = std::sqrt(std::max(0.0, 1.0 - g * g));
      q *= 2.0 * sn[k];
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
      double rho = 1.0;
      for (std::size_t l = k + 1; l < m; ++l) {
        rho *= x[blocks_[l - 1].ratio_slot];
        const bool pk = blocks_[k].pair;
        const bool pl = blocks_[l].pair;
        if (!pk && !pl) {
          q *= std::abs(1.0 - rho);
        } else if (pk && pl) {
          const double c_minus = cs[k] * cs[l] + sn[k] * sn[l];
          const double c_plus = cs[k] * cs[l] - sn[k] * sn[l];
          q *= quad(rho, c_minus) * quad(rho, c_plus);
        } else {
          q *= quad(rho, pk ? cs[k] : cs[l]);
        }
      }
    }
    return q;
  }

  /// The tuple eps_1..eps_n described by x (anchor: last block scale 1).
  [[nodiscard]] ConjugateTuple reconstruct(std::span<const double> x) const {
    check(x);
    const std::size_t m = blocks_.size();
    std::vector<double> scale(m, 1.0);
    for (std::size_t k = m - 1; k-- > 0;) scale[k] = x[blocks_[k].ratio_slot] * scale[k + 1];
    ConjugateTuple t;
    t.pair_set = pairs_;
    t.entries.resize(sig_.n);
    for (std::size_t k = 0; k < m; ++k) {
      const Block& b = blocks_[k];
      if (b.pair) {
        const double g = x[b.cos_slot];
        const double s = std::sqrt(std::max(0.0, 1.0 - g * g));
        t.entries[b.first - 1] = scale[k] * Complex(g, s);
        t.entries[b.first] = scale[k] * Complex(g, -s);
      } else {
        t.entries[b.first - 1] = Complex(scale[k], 0.0);
      }
    }
    return t;
  }
  [[nodiscard]] ConjugateTuple reconstruct(const BoxPoint& x) const { return reconstruct(x.coords); }

  /**
   * Inverse change of variables. Pair scales are read as |eps_j| >= 0 and
   * cosines from arg eps_j; ratios are block-scale quotients (0 when the
   * right-hand scale vanishes, which is the ambiguous case).
   */
  [[nodiscard]] BoxPoint coordinates(const ConjugateTuple& t) const {
    if (static_cast<int>(t.entries.size()) != sig_.n)
      throw std::invalid_argument("coordinates: tuple length differs from n");
    const std::size_t m = blocks_.size();
    std::vector<double> scale(m);
    BoxPoint out{std::vector<double>(dimension(), 0.0)};
    for (std::size_t k = 0; k < m; ++k) {
      const Block& b = blocks_[k];
      const Complex e = t.entries[b.first - 1];
      if (b.pair) {
        scale[k] = std::abs(e);
        out.coords[b.cos_slot] = scale[k] > 0.0 ? std::clamp(e.real() / scale[k], -1.0, 1.0) : 0.0;
      } else {
        scale[k] = e.real();
      }
    }
    for (std::size_t k = 0; k + 1 < m; ++k)
      out.coords[blocks_[k].ratio_slot] =
          scale[k + 1] != 0.0 ? std::clamp(scale[k] / scale[k + 1], -1.0, 1.0) : 0.0;
    return out;
  }

 private:
  // |1 - rho e^{i phi}| |1 - rho e^{-i phi}| with cos(phi) = c.
  static double quad(double rho, double c) { return std::max(0.0, 1.0 - 2.0 * rho * c + rho * rho); }

  void check(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dimension())
      throw std::invalid_argument("Q: expected " + std::to_string(dimension()) +
                                  " coordinates, got " + std::to_string(x.size()));
    for (double v : x)
      if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("Q: coordinate outside [-1,1]");
  }

  Signature sig_;
  AdmissibleIndexSet pairs_;
  std::vector<Block> blocks_;
};

inline double evaluate_q(const Signature& sig, const AdmissibleIndexSet& pairs,
                         std::span<const double> x) {
  return QFunction(sig, pairs)(x);
}

inline ConjugateTuple reconstruct(const Signature& sig, const AdmissibleIndexSet& pairs,
                                  std::span<const double> x) {
  return QFunction(sig, pairs).reconstruct(x);
}

/**
 * prod_{i<j} |1 - eps_i/eps_j|^2 over an ordered tuple. A zero eps_i
 * contributes the limit factor 1. Throws if moduli decrease.
 */
inline double p_value(std::span<const Complex> eps) {
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    const double a = std::abs(eps[i]);
    const double b = std::abs(eps[i + 1]);
    if (a > b * (1.0 + 1e-12))
      throw std::invalid_argument("p_value: moduli must be non-decreasing (entry " +
                                  std::to_string(i + 1) + ")");
  }
  double p = 1.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (eps[i] == Complex(0.0, 0.0)) continue;
    for (std::size_t j = i + 1; j < eps.size(); ++j)
      p *= std::norm(eps[j] - eps[i]) / std::norm(eps[j]);
  }
  return p;
}

inline double p_value(const ConjugateTuple& t) { return p_value(std::span<const Complex>(t.entries)); }

/// 1, zeta_n, ..., zeta_n^{n-1}, or zeta_{2n}^{2k+1} for the staggered set.
inline std::vector<Complex> roots_of_unity(int n, bool staggered) {
  if (n < 2) throw std::invalid_argument("roots_of_unity: n must be >= 2");
  if (staggered && n % 2 != 0)
    throw std::invalid_argument("roots_of_unity: staggered configuration needs even n");
  std::vector<Complex> z(n);
  for (int k = 0; k < n; ++k) {
    const double angle = staggered ? std::numbers::pi * (2 * k + 1) / n
                                   : 2.0 * std::numbers::pi * k / n;
    z[k] = std::polar(1.0, angle);
  }
  return z;
}

/// Q at the roots-of-unity configuration, i.e. sqrt(P) = n^{n/2} in exact arithmetic.
inline double roots_of_unity_value(int n, bool staggered) {
  const auto z = roots_of_unity(n, staggered);
  return std::sqrt(p_value(z));
}

}  // namespace qmax
