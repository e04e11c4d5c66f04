#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qmax/bounds.hpp"

using namespace qmax;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kM5 = 864.0 / 49.0 * std::pow(27.0 / 28.0, 1.5);
}

TEST_CASE("hermite constants") {
  CHECK(hermite(1) == 1.0);
  CHECK_THAT(hermite(6), WithinAbs(1.665366, 1e-6));
  CHECK(hermite(8) == 2.0);
  for (int r = 2; r <= 8; ++r) CHECK(hermite(r) > hermite(r - 1));
  // gamma_r^r for the exactly known dimensions.
  const double pow_r[] = {1, 4.0 / 3.0, 2, 4, 8, 64.0 / 3.0, 64, 256};
  for (int r = 1; r <= 8; ++r) CHECK_THAT(std::pow(hermite(r), r), WithinRel(pow_r[r - 1], 1e-13));
  CHECK_THROWS_AS(hermite(0), std::out_of_range);
  CHECK_THROWS_AS(hermite(9), std::out_of_range);
}

TEST_CASE("a_factor") {
  CHECK_THAT(a_factor(8, {1}), WithinRel(std::sqrt(166.0), 1e-15));
  CHECK_THAT(a_factor(8, {1}), WithinAbs(12.88410, 1e-5));
  CHECK_THAT(a_factor(8, {3}), WithinRel(std::sqrt(130.0), 1e-15));
  CHECK(a_factor(2, {1}) == 0.0);
  CHECK_THAT(a_factor(3, {0, 1}), WithinRel(std::sqrt((24.0 + 18.0) / 3.0), 1e-15));
  CHECK_THROWS(a_factor(1, {0}));
  CHECK_THROWS(a_factor(4, {3}));
}

TEST_CASE("minkowski_unit_bound") {
  CHECK_THAT(minkowski_unit_bound(7.14, 6), WithinAbs(2.106021, 1e-6));
  CHECK_THAT(minkowski_unit_bound(1.0, 1), WithinRel(std::sqrt(2.0), 1e-15));
  CHECK_THAT(minkowski_unit_bound(8.0, 5), WithinAbs(2.232, 1e-3));
  CHECK_THROWS(minkowski_unit_bound(1.0, 0));
  CHECK_THROWS(minkowski_unit_bound(-1.0, 2));
}

TEST_CASE("D1 golden values") {
  CHECK_THAT(d1_bound(7.14, 8, 1).d1, WithinAbs(43.7697, 5e-4));
  CHECK_THAT(d1_bound(0.832, 8, 3).d1, WithinAbs(32.47101, 5e-4));
  CHECK_THAT(d1_bound(2.298, 8, 2).d1, WithinAbs(38.3603, 5e-4));
  CHECK_THAT(d1_bound(7.48, 8, 1, LogTerm::improved).d1, WithinAbs(35.6632, 5e-4));
  CHECK_THAT(d1_bound(7.48, 8, 1, LogTerm::value, 12.0 * std::log(2.0)).d1, WithinAbs(35.6632, 5e-4));
  CHECK_THAT(d1_bound(8.0, 7, 1).d1, WithinAbs(37.0334, 5e-4));
  CHECK_THAT(d1_bound(8.0, 7, 1, LogTerm::improved).d1, WithinAbs(30.4288, 5e-4));
  CHECK_THAT(d1_bound(8.0, 7, 1, LogTerm::value, 2.0 * std::log(2.0 * 16.6965)).d1, WithinAbs(30.4288, 5e-4));
  CHECK_THAT(d1_bound(2.298, 8, 2, LogTerm::value, 7.0 * std::log(7.0)).d1, WithinAbs(35.3463, 5e-4));
  CHECK_THAT(d1_bound(2.158, 5, 1, LogTerm::improved).d1, WithinAbs(16.8961, 5e-4));
  CHECK_THAT(d1_bound(2.156, 5, 1, LogTerm::improved).d1, WithinAbs(16.8926, 5e-4));
  CHECK_THROWS(d1_bound(1.0, 8, 1, LogTerm::value));
  CHECK_THROWS(d1_bound(1.0, 2, 1));  // unit rank 0
}

TEST_CASE("D1 report recomposes and is monotone in R0") {
  for (int n = 3; n <= 9; ++n)
    for (int r2 = 0; 2 * r2 <= n; ++r2) {
      const int rank = n - 2 * r2 + r2 - 1;
      if (rank < 1 || rank > 8) continue;
      double prev = -INFINITY;
      for (double r0 = 0.1; r0 < 20.0; r0 *= 1.3) {
        const auto rep = d1_bound(r0, n, r2);
        CHECK_THAT(rep.d1, WithinAbs(rep.log_term + rep.unit_bound * rep.a_factor, 1e-12));
        CHECK(rep.unit_rank == rank);
        CHECK(rep.d1 > prev);
        prev = rep.d1;
      }
    }
}

TEST_CASE("improved term is smaller when the table entry is below n^(n/2)") {
  for (const auto& row : m_table()) {
    const int rank = row.n - row.r2 - 1;
    if (rank < 1 || rank > 8) continue;
    const auto classic = d1_bound(3.0, row.n, row.r2);
    const auto improved = d1_bound(3.0, row.n, row.r2, LogTerm::improved);
    if (row.m.value < std::pow(row.n, row.n / 2.0) * (1 - 1e-12))
      CHECK(improved.d1 < classic.d1);
    else
      CHECK_THAT(improved.d1, WithinAbs(classic.d1, 1e-12));
  }
}

TEST_CASE("external D2") {
  auto rep = d1_bound(7.14, 8, 1);
  CHECK_FALSE(rep.d());
  rep.d2 = 50.0;
  CHECK(*rep.d() == 50.0);
  rep.d2 = 10.0;
  CHECK(*rep.d() == rep.d1);
}

TEST_CASE("conjectured_M") {
  const auto a = conjectured_M(8, 4);
  CHECK(a.value == 4096.0);
  CHECK(a.status == MStatus::proved_sharp);
  const auto b = conjectured_M(7, 1);
  CHECK_THAT(b.value, WithinRel(2.0 * kM5, 1e-15));
  CHECK(b.status == MStatus::conjectured);
  const auto c = conjectured_M(9, 1, true);
  CHECK_THAT(c.value, WithinRel(4.0 * kM5, 1e-15));
  CHECK(c.status == MStatus::extended);
  const auto d = conjectured_M(10, 1, true);
  CHECK(d.value == 128.0);
  CHECK(d.status == MStatus::extended);
  CHECK(conjectured_M(7, 2).value == 245.8193);
  CHECK_THAT(conjectured_M(8, 2).value, WithinRel(std::pow(7.0, 3.5), 1e-15));
  CHECK(conjectured_M(6, 2).status == MStatus::proved_sharp);
  CHECK(conjectured_M(4, 1).status == MStatus::proved_sharp);
  CHECK(conjectured_M(6, 0).status == MStatus::proved_pohst);
  CHECK(conjectured_M(11, 0).value == 32.0);
  CHECK_THROWS(conjectured_M(9, 1));
  CHECK_THROWS(conjectured_M(12, 0));
  CHECK(conjectured_M(12, 0, true).status == MStatus::extended);
  CHECK_THROWS(conjectured_M(3, 2));
}

TEST_CASE("sharp and totally real identities") {
  for (int n = 3; n <= 25; n += 2) {
    const auto m = conjectured_M(n, (n - 1) / 2);
    CHECK(m.value == std::pow(n, n / 2.0));
    CHECK(m.status == MStatus::proved_sharp);
  }
  for (int n = 2; n <= 11; ++n) CHECK(conjectured_M(n, 0).value == std::ldexp(1.0, n / 2));
}

TEST_CASE("m_table covers the table signatures") {
  const auto rows = m_table();
  CHECK(rows.size() == 22);
  for (const auto& r : rows) {
    if (r.r2 == 0) CHECK(r.m.value == std::ldexp(1.0, r.n / 2));
    if (r.m.status == MStatus::proved_sharp) CHECK(r.m.value == std::pow(r.n, r.n / 2.0));
  }
}
