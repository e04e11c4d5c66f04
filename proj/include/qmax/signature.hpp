#pragma once

/**
 * @file signature.hpp
 * @brief Signatures (r1, r2) and the admissible placements of conjugate pairs.
 */

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmax {

/// Degree n split into r1 real entries and r2 conjugate pairs.
struct Signature {
  int n = 2;
  int r1 = 2;
  int r2 = 0;

  /// Builds (n, r2) and validates n >= 2, r2 >= 0, 2*r2 <= n.
  static Signature make(int n, int r2) {
    if (n < 2) throw std::invalid_argument("signature: degree n must be >= 2");
    if (r2 < 0) throw std::invalid_argument("signature: r2 must be >= 0");
    if (2 * r2 > n)
      throw std::invalid_argument("signature: 2*r2 = " + std::to_string(2 * r2) +
                                  " exceeds n = " + std::to_string(n));
    return Signature{n, n - 2 * r2, r2};
  }

  /// Dimension of the box [-1,1]^(n-1).
  [[nodiscard]] int dimension() const { return n - 1; }

  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/**
 * Positions j_1 < ... < j_{r2} (1-based) of the first member of each conjugate
 * pair {eps_j, eps_{j+1}}. Pairs never overlap, so consecutive entries differ
 * by at least 2.
 */
struct AdmissibleIndexSet {
  std::vector<int> indices;

  [[nodiscard]] bool contains(int j) const {
    for (int v : indices)
      if (v == j) return true;
    return false;
  }

  /// Throws std::invalid_argument unless admissible for sig.
  void validate(const Signature& sig) const {
    if (static_cast<int>(indices.size()) != sig.r2)
      throw std::invalid_argument("index set: expected " + std::to_string(sig.r2) +
                                  " pair positions, got " + std::to_string(indices.size()));
    int prev = -1;
    for (int j : indices) {
      if (j < 1 || j > sig.n - 1)
        throw std::invalid_argument("index set: position " + std::to_string(j) +
                                    " outside [1, n-1]");
      if (prev >= 0 && j < prev + 2)
        throw std::invalid_argument("index set: overlapping pairs at " + std::to_string(prev) +
                                    " and " + std::to_string(j));
      prev = j;
    }
  }

  [[nodiscard]] std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(indices[k]);
    }
    return s + "}";
  }

  friend auto operator<=>(const AdmissibleIndexSet&, const AdmissibleIndexSet&) = default;
};

namespace detail {
inline void enumerate_from(int start, int remaining, int last_pos, std::vector<int>& cur,
                           std::vector<AdmissibleIndexSet>& out) {
  if (remaining == 0) {
    out.push_back(AdmissibleIndexSet{cur});
    return;
  }
  for (int j = start; j <= last_pos - 2 * (remaining - 1); ++j) {
    cur.push_back(j);
    enumerate_from(j + 2, remaining - 1, last_pos, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// All admissible index sets for sig in lexicographic order; binomial(n - r2, r2) of them.
inline std::vector<AdmissibleIndexSet> enumerate_admissible(const Signature& sig) {
  std::vector<AdmissibleIndexSet> out;
  std::vector<int> cur;
  detail::enumerate_from(1, sig.r2, sig.n - 1, cur, out);
  return out;
}

}  // namespace qmax
