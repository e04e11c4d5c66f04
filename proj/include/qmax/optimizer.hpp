#pragma once

/**
 * @file optimizer.hpp
 * @brief Estimates of M(n, r2) = max over J and the box of Q(n, r2, J, .).
 *
 * Two stages per index set J: a uniform random scan, then bounded
 * Nelder-Mead runs from the scan incumbent, warm starts and uniform restarts.
 * Restart k draws from its own generator seeded with seed ^ k, so the result
 * does not depend on evaluation order or threading.
 */

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qmax/q_function.hpp"

namespace qmax {

struct OptConfig {
  long samples = 100000;
  int restarts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int max_iters = 2000;
  bool warm_starts = true;
  /// Worker threads for estimate_M (0: hardware concurrency). Results do not depend on it.
  int threads = 1;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("OptConfig: samples must be >= 1");
    if (restarts < 1) throw std::invalid_argument("OptConfig: restarts must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("OptConfig: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("OptConfig: max_iters must be >= 1");
  }
};

struct Candidate {
  double value = 0.0;
  BoxPoint point;
};

struct IndexSetResult {
  AdmissibleIndexSet index_set;
  double value = 0.0;
  BoxPoint point;
  double scan_value = 0.0;
  /// Incumbent after the scan and after each refinement, in order.
  std::vector<double> trace;
};

struct OptReport {
  Signature signature;
  OptConfig config;
  double best_value = 0.0;
  BoxPoint best_point;
  AdmissibleIndexSet best_index_set;
  std::vector<IndexSetResult> per_index_set;
  /// All per-J maxima within 1e-3 relative of the best.
  bool all_index_sets_agree = true;
  double wall_time = 0.0;
};

namespace detail {

/// Generator for stream k of a run.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t k) { return std::mt19937_64(seed ^ k); }

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline void uniform_point(std::mt19937_64& g, std::vector<double>& x) {
  for (double& v : x) v = 2.0 * unit(g) - 1.0;
}

inline bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

/// a beats b: larger value, or equal (1e-12) and lexicographically smaller point.
inline bool better(double va, const std::vector<double>& a, double vb, const std::vector<double>& b) {
  if (close(va, vb)) return lex_less(a, b);
  return va > vb;
}

/// better() restricted to moves that never lower the incumbent value.
inline bool improves(double va, const std::vector<double>& a, double vb, const std::vector<double>& b) {
  return va >= vb && better(va, a, vb, b);
}

constexpr std::uint64_t kScanStream = 0x5ca9ULL << 48;

/// One Nelder-Mead descent on -Q with every trial point clamped to the box.
inline Candidate nelder_mead(const QFunction& q, std::vector<double> start, double step, double tol,
                             int& budget) {
  const int d = q.dimension();
  auto clamp = [](std::vector<double>& p) {
    for (double& v : p) v = std::clamp(v, -1.0, 1.0);
  };
  clamp(start);
  std::vector<std::vector<double>> s(d + 1, start);
  std::vector<double> f(d + 1);
  for (int i = 0; i < d; ++i) {
    s[i + 1][i] += start[i] + step <= 1.0 ? step : -step;
  }
  for (int i = 0; i <= d; ++i) f[i] = -q.evaluate(s[i]);

  std::vector<int> order(d + 1);
  std::vector<double> centroid(d), xr(d), xe(d), xc(d);
  auto point_along = [&](const std::vector<double>& from, double t, std::vector<double>& out) {
    for (int i = 0; i < d; ++i) out[i] = centroid[i] + t * (from[i] - centroid[i]);
    clamp(out);
  };
  while (budget > 0) {
    --budget;
    for (int i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return f[a] < f[b] || (f[a] == f[b] && lex_less(s[a], s[b]));
    });
    const int best = order[0], worst = order[d], second = order[d - 1 < 0 ? 0 : d - 1];
    double diameter = 0.0;
    for (int i = 0; i <= d; ++i)
      for (int k = 0; k < d; ++k) diameter = std::max(diameter, std::abs(s[i][k] - s[best][k]));
    if (std::abs(f[worst] - f[best]) <= tol * (1.0 + std::abs(f[best])) && diameter <= tol) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i <= d; ++i)
      if (i != worst)
        for (int k = 0; k < d; ++k) centroid[k] += s[i][k] / d;

    point_along(s[worst], -1.0, xr);
    const double fr = -q.evaluate(xr);
    if (fr < f[best]) {
      point_along(s[worst], -2.0, xe);
      const double fe = -q.evaluate(xe);
      if (fe < fr) {
        s[worst] = xe;
        f[worst] = fe;
      } else {
        s[worst] = xr;
        f[worst] = fr;
      }
      continue;
    }
    if (fr < f[second]) {
      s[worst] = xr;
      f[worst] = fr;
      continue;
    }
    const bool outside = fr < f[worst];
    point_along(outside ? xr : s[worst], 0.5, xc);
    const double fc = -q.evaluate(xc);
    if (fc < (outside ? fr : f[worst])) {
      s[worst] = xc;
      f[worst] = fc;
      continue;
    }
    for (int i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (int k = 0; k < d; ++k) s[i][k] = s[best][k] + 0.5 * (s[i][k] - s[best][k]);
      f[i] = -q.evaluate(s[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= d; ++i)
    if (better(-f[i], s[i], -f[best], s[best])) best = i;
  return {-f[best], s[best]};
}

/// Start points built from known maximizer shapes, mapped into J's layout.
inline std::vector<std::vector<double>> warm_starts(const QFunction& q) {
  const Signature& sig = q.signature();
  const int d = q.dimension();
  std::vector<std::vector<double>> out;

  // Roots of unity with the real ones on the non-pair positions (only
  // possible when the real roots fit the signature).
  for (bool staggered : {false, true}) {
    if (staggered && sig.n % 2) continue;
    const auto z = roots_of_unity(sig.n, staggered);
    std::vector<Complex> reals, upper;
    for (const Complex& c : z) {
      if (std::abs(c.imag()) < 1e-12)
        reals.push_back(Complex(c.real() > 0 ? 1.0 : -1.0, 0.0));
      else if (c.imag() > 0)
        upper.push_back(c);
    }
    if (static_cast<int>(reals.size()) != sig.r1) continue;
    ConjugateTuple t;
    t.pair_set = q.index_set();
    t.entries.resize(sig.n);
    std::size_t ri = 0, pi = 0;
    for (const auto& b : q.blocks()) {
      if (b.pair) {
        t.entries[b.first - 1] = upper[pi];
        t.entries[b.first] = std::conj(upper[pi]);
        ++pi;
      } else {
        t.entries[b.first - 1] = reals[ri++];
      }
    }
    out.push_back(q.coordinates(t).coords);
  }

  // Alternating ratio patterns (0,-1,0,-1,...) and (-1,0,-1,0,...), with the
  // cosine slots filled from a few characteristic values.
  const int ratios = d - sig.r2;
  const double s7 = 1.0 / std::sqrt(7.0);
  const std::vector<double> cosines = {0.0, s7 / 2.0, -s7 / 2.0, std::numbers::sqrt2 / 2.0,
                                       -std::numbers::sqrt2 / 2.0, -0.5, 0.5};
  std::vector<std::vector<double>> ratio_patterns;
  for (int phase = 0; phase < 2; ++phase) {
    std::vector<double> r(ratios);
    for (int i = 0; i < ratios; ++i) r[i] = (i + phase) % 2 ? 0.0 : -1.0;
    ratio_patterns.push_back(r);
  }
  for (double sign : {1.0, -1.0}) {
    // (+-1/sqrt7, -1, ..., +-1/sqrt7, -1, 1) with the last ratio slot 1.
    std::vector<double> r(ratios);
    for (int i = 0; i < ratios; ++i) r[i] = i % 2 ? -1.0 : sign * s7;
    if (ratios > 0) r[ratios - 1] = 1.0;
    ratio_patterns.push_back(r);
    std::reverse(r.begin(), r.end());
    ratio_patterns.push_back(r);
  }
  for (const auto& r : ratio_patterns)
    for (double c : cosines) {
      std::vector<double> x = r;
      for (int k = 0; k < sig.r2; ++k) x.push_back(k % 2 ? -c : c);
      out.push_back(std::move(x));
      if (sig.r2 == 0) break;
    }
  return out;
}

}  // namespace detail

/// Maximum of Q over `samples` uniform points; deterministic in seed.
inline Candidate random_scan(const Signature& sig, const AdmissibleIndexSet& pairs, long samples,
                             std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("random_scan: samples must be >= 1");
  const QFunction q(sig, pairs);
  auto gen = detail::stream(seed, detail::kScanStream);
  std::vector<double> x(q.dimension());
  Candidate best{-1.0, {}};
  for (long i = 0; i < samples; ++i) {
    detail::uniform_point(gen, x);
    const double v = q.evaluate(x);
    if (v > best.value) best = {v, BoxPoint{x}};
  }
  return best;
}

/**
 * Bounded simplex ascent from start. Restarts the simplex at the incumbent
 * with a shrinking step until a run gains less than tol; never returns a
 * value below Q(start).
 */
inline Candidate local_refine(const Signature& sig, const AdmissibleIndexSet& pairs, const BoxPoint& start,
                              const OptConfig& cfg) {
  cfg.validate();
  const QFunction q(sig, pairs);
  if (static_cast<int>(start.coords.size()) != q.dimension() || !start.in_box())
    throw std::invalid_argument("local_refine: start must be a point of the box");
  int budget = cfg.max_iters;
  Candidate best{q.evaluate(start.coords), start};
  double step = 0.25;
  while (budget > 0) {
    Candidate c = detail::nelder_mead(q, best.point.coords, step, cfg.tol, budget);
    const double gain = c.value - best.value;
    if (detail::better(c.value, c.point.coords, best.value, best.point.coords)) best = std::move(c);
    if (gain <= cfg.tol * (1.0 + std::abs(best.value))) {
      if (step < 1e-6) break;
      step *= 0.1;
    }
  }
  return best;
}

inline IndexSetResult multistart_detail(const Signature& sig, const AdmissibleIndexSet& pairs,
                                        const OptConfig& cfg) {
  cfg.validate();
  const QFunction q(sig, pairs);
  IndexSetResult res;
  res.index_set = pairs;
  const Candidate scan = random_scan(sig, pairs, cfg.samples, cfg.seed);
  res.scan_value = scan.value;
  res.value = scan.value;
  res.point = scan.point;
  res.trace.push_back(res.value);

  auto consider = [&](const Candidate& c) {
    if (detail::improves(c.value, c.point.coords, res.value, res.point.coords)) {
      res.value = c.value;
      res.point = c.point;
    }
    res.trace.push_back(res.value);
  };
  consider(local_refine(sig, pairs, scan.point, cfg));
  if (cfg.warm_starts)
    for (auto& w : detail::warm_starts(q)) consider(local_refine(sig, pairs, BoxPoint{std::move(w)}, cfg));
  std::vector<double> x(q.dimension());
  for (int k = 1; k <= cfg.restarts; ++k) {
    auto gen = detail::stream(cfg.seed, static_cast<std::uint64_t>(k));
    detail::uniform_point(gen, x);
    consider(local_refine(sig, pairs, BoxPoint{x}, cfg));
  }
  // Stored value is always a fresh evaluation at the stored point.
  res.value = q.evaluate(res.point.coords);
  return res;
}

/// Best of the scan incumbent and all local refinements.
inline Candidate multistart_max(const Signature& sig, const AdmissibleIndexSet& pairs, const OptConfig& cfg) {
  IndexSetResult r = multistart_detail(sig, pairs, cfg);
  return {r.value, std::move(r.point)};
}

/// Runs multistart_max for every admissible J (n <= 12).
inline OptReport estimate_M(const Signature& sig, const OptConfig& cfg) {
  cfg.validate();
  if (sig.n > 12) throw std::invalid_argument("estimate_M: degree above 12");
  const auto t0 = std::chrono::steady_clock::now();
  const auto sets = enumerate_admissible(sig);
  OptReport rep;
  rep.signature = sig;
  rep.config = cfg;
  rep.per_index_set.resize(sets.size());

  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(sets.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < sets.size(); ++i) rep.per_index_set[i] = multistart_detail(sig, sets[i], cfg);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < workers; ++w)
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < sets.size(); i += workers)
          rep.per_index_set[i] = multistart_detail(sig, sets[i], cfg);
      }));
    for (auto& j : jobs) j.get();
  }

  // Index sets are in lexicographic order, so keeping the first of equal
  // values selects the smallest J.
  for (std::size_t i = 0; i < rep.per_index_set.size(); ++i) {
    const auto& r = rep.per_index_set[i];
    if (i == 0 || (r.value > rep.best_value && !detail::close(r.value, rep.best_value))) {
      rep.best_value = r.value;
      rep.best_point = r.point;
      rep.best_index_set = r.index_set;
    }
  }
  for (const auto& r : rep.per_index_set)
    if (std::abs(r.value - rep.best_value) > 1e-3 * rep.best_value) rep.all_index_sets_agree = false;
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace qmax
