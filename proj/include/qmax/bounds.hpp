#pragma once

/**
 * @file bounds.hpp
 * @brief Remak-Friedman geometric bound D1 and its ingredients.
 *
 *   D1(R, n, r2) = L + gamma_r^{1/2} (sqrt(r+1) R)^{1/r} * A,   r = r1 + r2 - 1,
 *
 * with L = n log n (classic) or 2 log M(n, r2) (improved), and
 * A = sqrt((1/3) sum_v (m^3 - m - 4 r2(v)^3 - 2 r2(v))).
 */

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmax/deg5.hpp"
#include "qmax/signature.hpp"

namespace qmax {

/// Hermite constants gamma_r, r = 1..8 (known exactly only in this range).
inline double hermite(int r) {
  switch (r) {
    case 1: return 1.0;
    case 2: return std::sqrt(4.0 / 3.0);
    case 3: return std::cbrt(2.0);
    case 4: return std::pow(4.0, 1.0 / 4.0);
    case 5: return std::pow(8.0, 1.0 / 5.0);
    case 6: return std::pow(64.0 / 3.0, 1.0 / 6.0);
    case 7: return std::pow(64.0, 1.0 / 7.0);
    case 8: return 2.0;
    default: throw std::out_of_range("hermite: r = " + std::to_string(r) + " outside 1..8");
  }
}

/// sqrt((1/3) sum_v (m^3 - m - 4 r2v^3 - 2 r2v)) for a relative extension of degree m.
inline double a_factor(int m, const std::vector<int>& r2v) {
  if (m < 2) throw std::invalid_argument("a_factor: m must be >= 2");
  double sum = 0.0;
  for (int c : r2v) {
    if (c < 0 || 2 * c > m) throw std::invalid_argument("a_factor: r2(v) must lie in [0, m/2]");
    const double t = c;
    sum += static_cast<double>(m) * m * m - m - 4.0 * t * t * t - 2.0 * t;
  }
  if (sum < 0.0) throw std::domain_error("a_factor: negative radicand");
  return std::sqrt(sum / 3.0);
}

/// gamma_r^{1/2} (sqrt(r+1) R)^{1/r}.
inline double minkowski_unit_bound(double regulator, int r) {
  if (r == 0) throw std::invalid_argument("minkowski_unit_bound: unit rank 0 has no free units");
  if (!(regulator > 0.0)) throw std::invalid_argument("minkowski_unit_bound: R must be positive");
  return std::sqrt(hermite(r)) * std::pow(std::sqrt(r + 1.0) * regulator, 1.0 / r);
}

// --- conjectured maxima -----------------------------------------------------

enum class MStatus { proved_sharp, proved_pohst, conjectured, extended };

inline const char* to_string(MStatus s) {
  switch (s) {
    case MStatus::proved_sharp: return "proved-sharp";
    case MStatus::proved_pohst: return "proved-pohst";
    case MStatus::conjectured: return "conjectured";
    case MStatus::extended: return "extended";
  }
  return "?";
}

struct MValue {
  double value = 0.0;
  MStatus status = MStatus::conjectured;
  std::string exact;  ///< human-readable exact form
};

namespace detail {
inline bool sharp_signature(int n, int r2) {
  return (n % 2 == 1 && 2 * r2 == n - 1) || (n % 2 == 0 && (2 * r2 == n || 2 * r2 == n - 2));
}

inline std::optional<MValue> table_entry(int n, int r2) {
  const double m5 = deg5::conjectured_maximum();
  if (n > 8) return std::nullopt;
  if (sharp_signature(n, r2))
    return MValue{std::pow(n, n / 2.0), MStatus::proved_sharp,
                  std::to_string(n) + "^(" + std::to_string(n) + "/2)"};
  if (r2 == 0) {  // proved (Pohst range covers n <= 11)
    const int e = n / 2;
    return MValue{std::ldexp(1.0, e), MStatus::proved_pohst, "2^" + std::to_string(e)};
  }
  if (r2 == 1) {
    switch (n) {
      case 5: return MValue{m5, MStatus::conjectured, "(864/49)(27/28)^(3/2)"};
      case 6: return MValue{32.0, MStatus::conjectured, "32"};
      case 7: return MValue{2.0 * m5, MStatus::conjectured, "2*(864/49)(27/28)^(3/2)"};
      case 8: return MValue{64.0, MStatus::conjectured, "64"};
      default: break;
    }
  }
  if (r2 == 2) {
    if (n == 7) return MValue{245.8193, MStatus::conjectured, "245.8193"};
    if (n == 8) return MValue{std::pow(7.0, 3.5), MStatus::conjectured, "7^(7/2)"};
  }
  return std::nullopt;
}
}  // namespace detail

/**
 * Known or conjectured M(n, r2). Sharp signatures (any n) and r2 = 0 with
 * n <= 11 are proved; other n <= 8 entries come from the conjectured table.
 * With allow_extension, M(n, r2) = 2 M(n-2, r2) is applied down to the
 * largest tabulated n - 2k.
 */
inline MValue conjectured_M(int n, int r2, bool allow_extension = false) {
  Signature::make(n, r2);
  if (detail::sharp_signature(n, r2))
    return MValue{std::pow(n, n / 2.0), MStatus::proved_sharp,
                  std::to_string(n) + "^(" + std::to_string(n) + "/2)"};
  if (r2 == 0 && n <= 11) {
    const int e = n / 2;
    return MValue{std::ldexp(1.0, e), MStatus::proved_pohst, "2^" + std::to_string(e)};
  }
  if (auto e = detail::table_entry(n, r2)) return *e;
  if (!allow_extension)
    throw std::out_of_range("conjectured_M: (" + std::to_string(n) + "," + std::to_string(r2) +
                            ") not tabulated; extension not requested");
  for (int k = 1; n - 2 * k >= 2 && n - 2 * k >= 2 * r2; ++k) {
    const int base = n - 2 * k;
    if (base > 8) continue;
    const auto e = detail::table_entry(base, r2);
    if (!e) break;
    return MValue{std::ldexp(e->value, k), MStatus::extended,
                  "2^" + std::to_string(k) + "*M(" + std::to_string(base) + "," + std::to_string(r2) + ")"};
  }
  throw std::out_of_range("conjectured_M: (" + std::to_string(n) + "," + std::to_string(r2) +
                          ") does not reach a tabulated entry");
}

/// Rows (n, r2, M) for 2 <= n <= 8.
struct MTableRow {
  int n = 2;
  int r2 = 0;
  MValue m;
};

inline std::vector<MTableRow> m_table() {
  std::vector<MTableRow> rows;
  for (int n = 2; n <= 8; ++n)
    for (int r2 = 0; 2 * r2 <= n; ++r2) {
      if (n == 2 && r2 == 1) continue;
      rows.push_back({n, r2, conjectured_M(n, r2)});
    }
  return rows;
}

// --- D1 ---------------------------------------------------------------------

enum class LogTerm { classic, improved, value };

inline const char* to_string(LogTerm t) {
  switch (t) {
    case LogTerm::classic: return "classic";
    case LogTerm::improved: return "improved";
    case LogTerm::value: return "value";
  }
  return "?";
}

struct BoundReport {
  double r0 = 0.0;
  int n = 2;
  int r2 = 0;
  LogTerm term = LogTerm::classic;
  int unit_rank = 0;
  double log_term = 0.0;
  double a_factor = 0.0;
  double unit_bound = 0.0;
  double d1 = 0.0;
  /// Supplied externally for display; never computed here.
  std::optional<double> d2;
  /// M(n, r2) used by the improved term.
  std::optional<MValue> m;

  /// max(D1, D2) when D2 is known.
  [[nodiscard]] std::optional<double> d() const {
    if (!d2) return std::nullopt;
    return std::max(d1, *d2);
  }
  /// log10 of exp(D1), i.e. the decimal exponent of the discriminant bound.
  [[nodiscard]] double decimal_exponent() const { return d1 / std::log(10.0); }
};

/**
 * D1 over the rationals. explicit_value is the log term itself when
 * term == LogTerm::value; the improved term uses 2 log conjectured_M(n, r2)
 * (extended values allowed).
 */
inline BoundReport d1_bound(double r0, int n, int r2, LogTerm term = LogTerm::classic,
                            std::optional<double> explicit_value = std::nullopt) {
  const Signature sig = Signature::make(n, r2);
  BoundReport rep;
  rep.r0 = r0;
  rep.n = n;
  rep.r2 = r2;
  rep.term = term;
  rep.unit_rank = sig.r1 + sig.r2 - 1;
  switch (term) {
    case LogTerm::classic:
      rep.log_term = n * std::log(static_cast<double>(n));
      break;
    case LogTerm::improved:
      rep.m = conjectured_M(n, r2, true);
      rep.log_term = 2.0 * std::log(rep.m->value);
      break;
    case LogTerm::value:
      if (!explicit_value) throw std::invalid_argument("d1_bound: explicit log term missing");
      rep.log_term = *explicit_value;
      break;
  }
  rep.a_factor = a_factor(n, {r2});
  rep.unit_bound = minkowski_unit_bound(r0, rep.unit_rank);
  rep.d1 = rep.log_term + rep.unit_bound * rep.a_factor;
  return rep;
}

}  // namespace qmax
