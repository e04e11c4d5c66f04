// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all criteria
//   acceptance --only N   run criterion N

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qmax/manifest.hpp"
#include "qmax/qmax.hpp"

using namespace qmax;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Runs f(i) for i in [0, count) on all cores, returns results in order.
template <class F>
auto parallel_map(std::size_t count, F f) {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(count);
  const unsigned w = workers();
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < w; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (std::size_t i = t; i < count; i += w) out[i] = f(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

// 1. Sharpness of the roots-of-unity configurations.
Outcome sharpness() {
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n)
    for (bool staggered : {false, true}) {
      if (staggered && n % 2) continue;
      const double target = std::pow(n, n / 2.0);
      const double rel = std::abs(roots_of_unity_value(n, staggered) - target) / target;
      worst = std::max(worst, rel);
      if (rel > 1e-9) {
        o.passed = false;
        o.detail += " n=" + std::to_string(n) + (staggered ? "(staggered)" : "");
      }
    }
  o.detail = "worst relative error " + fmt(worst, 3) + o.detail;
  return o;
}

// 2. Recompute the table of maxima with default settings.
Outcome maxima_table() {
  Outcome o;
  OptConfig cfg;
  cfg.threads = 0;
  std::string misses;
  for (const auto& row : m_table()) {
    const auto rep = estimate_M(Signature::make(row.n, row.r2), cfg);
    const double dev = std::abs(rep.best_value - row.m.value) / row.m.value;
    if (dev > 1e-3) {
      o.passed = false;
      misses += " (" + std::to_string(row.n) + "," + std::to_string(row.r2) + "): estimated " +
                fmt(rep.best_value) + " vs " + fmt(row.m.value) + ";";
    }
  }
  o.detail = std::to_string(m_table().size()) + " entries" + (misses.empty() ? ", all within 1e-3" : ";" + misses);
  return o;
}

// 3. Degree-5 stationary point and the default sweep.
Outcome degree5() {
  Outcome o;
  const auto st = deg5::solve_stationary();
  // 1/7 inside [lo^2, hi^2] (lo > 0) is an exact containment test for 1/sqrt 7.
  const Rational lo = exact_rational(st.x_box.lo), hi = exact_rational(st.x_box.hi);
  const bool contains = lo > 0 && lo * lo <= Rational(1, 7) && hi * hi >= Rational(1, 7);
  const bool narrow = st.x_box.width() <= 1e-12;
  const double g_expect = 1.0 / (2.0 * std::sqrt(7.0));
  // value^2 = (864/49)^2 (27/28)^3 exactly.
  const Rational v2 = Rational(864, 49) * Rational(864, 49) * Rational(27, 28) * Rational(27, 28) * Rational(27, 28);
  const double exact_value = std::sqrt(to_double(v2));
  const bool value_ok = std::abs(st.value - exact_value) <= 1e-10;
  const bool g_ok = std::abs(st.g - g_expect) <= 1e-12;

  const auto pts = deg5::grid_points({});
  const auto recs = parallel_map(pts.size(), [&](std::size_t i) { return deg5::sweep_point(pts[i]); });
  std::size_t edge_y = 0;
  double min_margin = INFINITY;
  for (const auto& r : recs) {
    edge_y += r.winner == deg5::Region5::edge_y;
    min_margin = std::min(min_margin, r.margin);
  }
  const bool sweep_ok = pts.size() == 3070 && edge_y == pts.size();
  o.passed = contains && narrow && value_ok && g_ok && sweep_ok;
  o.detail = "x*=" + fmt(st.x) + " g*=" + fmt(st.g) + " value=" + fmt(st.value, 12) + " (exact " +
             fmt(exact_value, 12) + "), box width " + fmt(st.x_box.width(), 3) + (contains ? "" : " [box misses 1/sqrt7]") +
             "; sweep " + std::to_string(edge_y) + "/" + std::to_string(pts.size()) +
             " edge_y, min margin " + fmt(min_margin, 3);
  return o;
}

// 4. Golden bound values.
Outcome bound_goldens() {
  struct G {
    double r0;
    int n, r2;
    LogTerm term;
    double expected;
  };
  const G goldens[] = {{0.832, 8, 3, LogTerm::classic, 32.47101}, {2.298, 8, 2, LogTerm::classic, 38.3603},
                       {7.14, 8, 1, LogTerm::classic, 43.7697},   {7.48, 8, 1, LogTerm::improved, 35.6632},
                       {8.0, 7, 1, LogTerm::classic, 37.0334},    {8.0, 7, 1, LogTerm::improved, 30.4288}};
  Outcome o;
  double worst = 0.0;
  for (const auto& g : goldens) {
    const double d = std::abs(d1_bound(g.r0, g.n, g.r2, g.term).d1 - g.expected);
    worst = std::max(worst, d);
    if (d > 5e-4) o.passed = false;
  }
  o.detail = "6 values, worst absolute error " + fmt(worst, 3);
  return o;
}

// 5. Random evaluations never exceed the proven ceilings.
Outcome ceilings() {
  struct Job {
    Signature sig;
    AdmissibleIndexSet J;
    double ceiling;
  };
  std::vector<Job> jobs;
  for (int n = 2; n <= 8; ++n)
    for (int r2 = 0; 2 * r2 <= n; ++r2) {
      const auto sig = Signature::make(n, r2);
      for (const auto& J : enumerate_admissible(sig)) jobs.push_back({sig, J, std::pow(n, n / 2.0)});
    }
  for (int n = 2; n <= 11; ++n) jobs.push_back({Signature::make(n, 0), {}, std::ldexp(1.0, n / 2)});
  const auto worst = parallel_map(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const QFunction q(job.sig, job.J);
    std::mt19937_64 rng(1000 + i);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(job.sig.n - 1);
    double excess = -INFINITY;
    for (int k = 0; k < 100000; ++k) {
      for (double& v : x) v = u(rng);
      excess = std::max(excess, q(x) - job.ceiling);
    }
    return excess;
  });
  Outcome o;
  double top = -INFINITY;
  for (double w : worst) top = std::max(top, w);
  o.passed = top <= 1e-9;
  o.detail = std::to_string(jobs.size()) + " (signature, index set) cases x 1e5 points, max excess over ceiling " +
             fmt(top, 3);
  return o;
}

// 6. Oracle equivalences.
Outcome oracles() {
  Outcome o;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double closed_gap = 0.0;
  for (const auto& e : closed_form_catalogue()) {
    std::vector<double> x(e.sig.n - 1);
    for (int k = 0; k < 10000; ++k) {
      for (double& v : x) v = u(rng);
      const double a = closed_form_q(e.sig, e.pairs, x), b = evaluate_q(e.sig, e.pairs, x);
      closed_gap = std::max(closed_gap, std::abs(a - b) / std::max(1.0, std::abs(b)));
    }
  }

  // Res(a prod(x - s_i), b prod(x - t_j)) = a^deg q b^deg p prod(s_i - t_j).
  std::uniform_int_distribution<int> deg(1, 5), num(-12, 12), den(1, 6), lead(1, 5);
  double res_gap = 0.0;
  for (int k = 0; k < 100; ++k) {
    auto build = [&](int d, Rational a, std::vector<Rational>& roots) {
      Poly<Rational> p{a};
      for (int i = 0; i < d; ++i) {
        roots.emplace_back(num(rng), den(rng));
        roots.back().canonicalize();
        p = p * Poly<Rational>{-roots.back(), Rational(1)};
      }
      return p;
    };
    std::vector<Rational> s, t;
    const Rational a(lead(rng)), b(-lead(rng));
    const int dp = deg(rng), dq = deg(rng);
    const auto p = build(dp, a, s), q = build(dq, b, t);
    double oracle = std::pow(to_double(a), dq) * std::pow(to_double(b), dp);
    for (const auto& si : s)
      for (const auto& tj : t) oracle *= to_double(si) - to_double(tj);
    const double got = to_double(resultant(p, q));
    res_gap = std::max(res_gap, std::abs(got - oracle) / std::max(1.0, std::abs(oracle)));
  }

  double grid_max = 0.0;
  const Signature s2 = Signature::make(2, 0);
  for (int i = 0; i <= 2000000; ++i) {
    const std::array<double, 1> x{-1.0 + i / 1000000.0};
    grid_max = std::max(grid_max, evaluate_q(s2, {}, x));
  }
  double simplex_gap = 0.0;
  for (double start : {-0.8, -0.1, 0.0, 0.3, 0.9})
    simplex_gap = std::max(simplex_gap, std::abs(local_refine(s2, {}, BoxPoint{{start}}, OptConfig{}).value - grid_max));

  o.passed = closed_gap <= 1e-10 && res_gap <= 1e-8 && simplex_gap <= 1e-8;
  o.detail = "closed form gap " + fmt(closed_gap, 3) + ", resultant gap " + fmt(res_gap, 3) + ", simplex vs grid gap " +
             fmt(simplex_gap, 3);
  return o;
}

// 7. Byte-identical CLI output across runs.
Outcome determinism() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "qmax_acceptance_runs";
  std::string outputs[2];
  for (auto& out : outputs) {
    const std::string cmd = std::string("\"") + QMAX_BINARY + "\" estimate-max --n 8 --r2 1 --seed 42 --run-dir \"" +
                            dir.string() + "\" 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {false, "cannot start " + cmd};
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    if (pclose(pipe) != 0) return {false, "qmax exited with an error"};
  }
  std::filesystem::remove_all(dir);
  o.passed = !outputs[0].empty() && outputs[0] == outputs[1];
  o.detail = std::to_string(outputs[0].size()) + " bytes, digest " + sha256_hex(outputs[0]).substr(0, 16) +
             (o.passed ? " on both runs" : " vs " + sha256_hex(outputs[1]).substr(0, 16));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  int only = 0;
  app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sharpness of roots-of-unity configurations", sharpness},
      {"maxima table reproduction", maxima_table},
      {"degree-5 certificate and sweep", degree5},
      {"bound golden values", bound_goldens},
      {"ceiling property", ceilings},
      {"oracle equivalences", oracles},
      {"determinism of estimate-max", determinism}};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.passed;
    std::printf("[%s] %zu %s (%.2f s): %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures ? 1 : 0;
}
