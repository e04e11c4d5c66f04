#pragma once

// Explicit product forms of Q for the low-degree signatures worked out by hand.

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qmax/q_function.hpp"

namespace qmax {

struct CatalogueEntry {
  Signature sig;
  AdmissibleIndexSet pairs;
};

inline const std::vector<CatalogueEntry>& closed_form_catalogue() {
  static const std::vector<CatalogueEntry> entries = {
      {Signature::make(3, 1), {{1}}},
      {Signature::make(3, 1), {{2}}},
      {Signature::make(4, 1), {{3}}},
      {Signature::make(4, 2), {{1, 3}}},
      {Signature::make(5, 1), {{4}}},
  };
  return entries;
}

inline bool is_catalogued(const Signature& sig, const AdmissibleIndexSet& pairs) {
  for (const auto& e : closed_form_catalogue())
    if (e.sig == sig && e.pairs == pairs) return true;
  return false;
}

class NotCatalogued : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluates the hand-derived product form; throws NotCatalogued otherwise.
inline double closed_form_q(const Signature& sig, const AdmissibleIndexSet& pairs,
                            std::span<const double> x) {
  if (!is_catalogued(sig, pairs))
    throw NotCatalogued("closed_form_q: (" + std::to_string(sig.n) + "," +
                        std::to_string(sig.r2) + ")," + pairs.to_string() + " not catalogued");
  if (static_cast<int>(x.size()) != sig.n - 1)
    throw std::invalid_argument("closed_form_q: wrong coordinate count");
  auto pair_factor = [](double g) { return 2.0 * std::sqrt(std::max(0.0, 1.0 - g * g)); };

  if (sig.n == 3) {
    // (x, g) for {2}, (r, g) for {1}: same shape.
    const double r = x[0], g = x[1];
    return (1.0 - 2.0 * r * g + r * r) * pair_factor(g);
  }
  if (sig.n == 4 && sig.r2 == 1) {
    const double a = x[0], y = x[1], g = x[2];
    const double xy = a * y;
    return (1.0 - a) * (1.0 - 2.0 * xy * g + xy * xy) * (1.0 - 2.0 * y * g + y * y) * pair_factor(g);
  }
  if (sig.n == 4 && sig.r2 == 2) {
    const double a = x[0], g = x[1], h = x[2];
    const double s = 1.0 + a * a;
    return pair_factor(g) * pair_factor(h) *
           (s * s - 4.0 * a * s * g * h + 4.0 * a * a * (-1.0 + g * g + h * h));
  }
  // (5,1),{4}
  const double a = x[0], y = x[1], z = x[2], g = x[3];
  const double xyz = a * y * z, yz = y * z;
  return (1.0 - a) * (1.0 - a * y) * (1.0 - 2.0 * xyz * g + xyz * xyz) * (1.0 - y) *
         (1.0 - 2.0 * yz * g + yz * yz) * (1.0 - 2.0 * z * g + z * z) * pair_factor(g);
}

}  // namespace qmax
