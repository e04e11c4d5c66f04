#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmax/optimizer.hpp"

using namespace qmax;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
OptConfig light() {
  OptConfig c;
  c.samples = 20000;
  c.restarts = 16;
  return c;
}
const double kM5 = 864.0 / 49.0 * std::pow(27.0 / 28.0, 1.5);
}  // namespace

TEST_CASE("OptConfig validation") {
  OptConfig c;
  CHECK_NOTHROW(c.validate());
  c.samples = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.restarts = 0;
  CHECK_THROWS(c.validate());
  c = {};
  c.tol = 0.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("random_scan") {
  const auto a = random_scan(Signature::make(2, 0), {}, 100000, 3);
  CHECK(a.value > 2.0 - 1e-2);
  CHECK(a.value <= 2.0);
  const auto b1 = random_scan(Signature::make(4, 1), {{3}}, 100000, 99);
  const auto b2 = random_scan(Signature::make(4, 1), {{3}}, 100000, 99);
  CHECK(b1.value == b2.value);
  CHECK(b1.point == b2.point);
  const auto c = random_scan(Signature::make(5, 1), {{4}}, 100000, 5);
  CHECK(c.value <= kM5 + 1e-9);
  CHECK(c.point.in_box());
  CHECK_THROWS(random_scan(Signature::make(2, 0), {}, 0, 1));
}

TEST_CASE("local_refine") {
  const OptConfig cfg;
  SECTION("stays at a known maximizer") {
    const auto r = local_refine(Signature::make(4, 1), {{3}}, BoxPoint{{-1.0, 1.0, 0.0}}, cfg);
    CHECK_THAT(r.value, WithinRel(16.0, 1e-12));
  }
  SECTION("interior start in degree 2 reaches the boundary maximum") {
    const auto r = local_refine(Signature::make(2, 0), {}, BoxPoint{{0.37}}, cfg);
    CHECK_THAT(r.value, WithinAbs(2.0, 1e-8));
    CHECK(r.point.in_box());
  }
  SECTION("start on the zero set never gets worse") {
    const BoxPoint start{{0.2, -0.3, 1.0}};
    const auto r = local_refine(Signature::make(4, 1), {{3}}, start, cfg);
    CHECK(r.value >= 0.0);
    CHECK(r.value >= evaluate_q(Signature::make(4, 1), {{3}}, start.coords));
  }
  SECTION("rejects a start outside the box") {
    CHECK_THROWS(local_refine(Signature::make(3, 0), {}, BoxPoint{{0.0, 1.5}}, cfg));
  }
}

TEST_CASE("simplex refinement matches a dense grid in degree 2") {
  // Oracle: Q(2,0,(x)) = |1 - x| on a grid of 2e6+1 points.
  double grid_max = 0.0;
  const int m = 2000000;
  for (int i = 0; i <= m; ++i) {
    const double x = -1.0 + 2.0 * i / m;
    grid_max = std::max(grid_max, evaluate_q(Signature::make(2, 0), {}, std::vector<double>{x}));
  }
  for (double start : {-0.9, -0.2, 0.0, 0.45, 0.99}) {
    const auto r = local_refine(Signature::make(2, 0), {}, BoxPoint{{start}}, OptConfig{});
    CHECK_THAT(r.value, WithinAbs(grid_max, 1e-8));
  }
}

TEST_CASE("multistart_max examples") {
  const OptConfig cfg;
  CHECK_THAT(multistart_max(Signature::make(5, 1), {{4}}, cfg).value, WithinAbs(16.6965, 1e-4));
  CHECK_THAT(multistart_max(Signature::make(6, 0), {}, cfg).value, WithinAbs(8.0, 1e-6));
  for (const auto& J : enumerate_admissible(Signature::make(6, 2)))
    CHECK_THAT(multistart_max(Signature::make(6, 2), J, cfg).value, WithinRel(216.0, 1e-3));
}

TEST_CASE("estimate_M examples") {
  const OptConfig cfg;
  const auto r81 = estimate_M(Signature::make(8, 1), cfg);
  CHECK_THAT(r81.best_value, WithinRel(64.0, 1e-3));
  const auto r72 = estimate_M(Signature::make(7, 2), cfg);
  CHECK_THAT(r72.best_value, WithinRel(245.8193, 1e-3));
  const auto r42 = estimate_M(Signature::make(4, 2), cfg);
  CHECK_THAT(r42.best_value, WithinRel(16.0, 1e-9));
  REQUIRE(r42.per_index_set.size() == 1);
  CHECK(r42.best_index_set == AdmissibleIndexSet{{1, 3}});
  CHECK_THROWS(estimate_M(Signature::make(13, 0), cfg));
}

TEST_CASE("report soundness and incumbent monotonicity") {
  const auto sig = Signature::make(6, 1);
  const auto rep = estimate_M(sig, light());
  double best = 0.0;
  for (const auto& r : rep.per_index_set) {
    best = std::max(best, r.value);
    CHECK(r.point.in_box());
    CHECK(r.value == evaluate_q(sig, r.index_set, r.point.coords));
    CHECK(std::is_sorted(r.trace.begin(), r.trace.end()));
    CHECK(r.value >= r.scan_value);
    CHECK(r.value <= std::pow(6.0, 3.0) + 1e-9);
  }
  CHECK(rep.best_value == best);
  CHECK(rep.best_point.in_box());
  CHECK(rep.best_value == evaluate_q(sig, rep.best_index_set, rep.best_point.coords));
}

TEST_CASE("ties go to the smallest index set") {
  // Every J of (5,2) reaches 5^{5/2}; the report names the first one.
  const auto rep = estimate_M(Signature::make(5, 2), light());
  CHECK(rep.all_index_sets_agree);
  CHECK(rep.best_index_set == enumerate_admissible(Signature::make(5, 2)).front());
}

TEST_CASE("determinism does not depend on threads") {
  OptConfig a = light();
  a.seed = 42;
  a.threads = 1;
  OptConfig b = a;
  b.threads = 4;
  const auto ra = estimate_M(Signature::make(7, 1), a);
  const auto rb = estimate_M(Signature::make(7, 1), b);
  CHECK(ra.best_value == rb.best_value);
  CHECK(ra.best_point == rb.best_point);
  REQUIRE(ra.per_index_set.size() == rb.per_index_set.size());
  for (std::size_t i = 0; i < ra.per_index_set.size(); ++i) {
    CHECK(ra.per_index_set[i].value == rb.per_index_set[i].value);
    CHECK(ra.per_index_set[i].point == rb.per_index_set[i].point);
    CHECK(ra.per_index_set[i].trace == rb.per_index_set[i].trace);
  }
  a.seed = 43;
  const auto rc = estimate_M(Signature::make(7, 1), a);
  CHECK(rc.per_index_set[0].scan_value != ra.per_index_set[0].scan_value);
}

TEST_CASE("agreement flag reports disagreeing index sets") {
  // (8,2) index sets do not all reach the same maximum.
  const auto rep = estimate_M(Signature::make(8, 2), light());
  CHECK_FALSE(rep.all_index_sets_agree);
}
