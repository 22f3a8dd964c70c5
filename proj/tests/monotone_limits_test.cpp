#include <doctest.h>

#include <cmath>

#include "isoprof/monotone_limits.hpp"

using namespace isoprof;

TEST_CASE("remark_family closed form") {
  CHECK(remark_family(5, 0.0) == 1.0);
  CHECK(remark_family(5, 0.7) == 1.0);
  CHECK(remark_family(5, -0.1) == doctest::Approx(0.5));
  CHECK(remark_family(5, -1.0) == 0.0);
  CHECK(remark_family(5, -0.2) == 0.0);
  CHECK_THROWS_AS(remark_family(0, 0.0), DomainError);
}

TEST_CASE("family invariants are enforced") {
  MonotoneFamily bad_row;
  bad_row.x_grid = {0.0, 1.0, 2.0};
  bad_row.rows = {{0.0, 1.0, 0.5}};
  CHECK_THROWS_AS(bad_row.validate(), DomainError);

  MonotoneFamily bad_order;
  bad_order.x_grid = {0.0, 1.0};
  bad_order.rows = {{0.0, 1.0}, {0.5, 1.5}};  // increases in i
  CHECK_THROWS_AS(bad_order.validate(), DomainError);

  MonotoneFamily good = build_remark_family(10, 101);
  good.validate();
}

TEST_CASE("pointwise_limit reports the Cauchy tail") {
  // f_i(x) = x + 1/i has tail 1/m - 1/(m-1) at every point.
  MonotoneFamily fam;
  int m = 10;
  for (int j = 0; j <= 10; ++j) fam.x_grid.push_back(0.1 * j);
  for (int i = 1; i <= m; ++i) {
    std::vector<double> row;
    for (double x : fam.x_grid) row.push_back(x + 1.0 / i);
    fam.rows.push_back(row);
  }
  SampledLimit lim = pointwise_limit(fam, 1e-1);
  double want_tail = 1.0 / (m - 1) - 1.0 / m;
  for (std::size_t j = 0; j < lim.values.size(); ++j) {
    CHECK(lim.values[j] == doctest::Approx(fam.x_grid[j] + 1.0 / m));
    CHECK(lim.tail[j] == doctest::Approx(want_tail));
    CHECK(lim.tail_ok[j]);
  }

  // Remark family at x = -0.5 has already hit its limit 0 at m = 10.
  MonotoneFamily rem = build_remark_family(10, 1001);
  SampledLimit rl = pointwise_limit(rem, 1e-6);
  std::size_t j_half = 250;  // x = -0.5 on the uniform grid over [-1, 1]
  CHECK(rem.x_grid[j_half] == doctest::Approx(-0.5));
  CHECK(rl.values[j_half] == 0.0);
}

TEST_CASE("remark limit is right- but not left-continuous at 0") {
  MonotoneFamily fam = build_remark_family(1200, 1001);
  SampledLimit lim = pointwise_limit(fam, 1e-2);

  // The grid has no point in (-1/1200, 0), so the sampled limit is exactly
  // the characteristic function of [0, inf).
  for (std::size_t j = 0; j < lim.x_grid.size(); ++j)
    CHECK(lim.values[j] == (lim.x_grid[j] >= 0.0 ? 1.0 : 0.0));

  auto probes = geometric_probes(0.25, 8);
  ContinuityProbeReport right = right_continuity_check(lim, 0.0, probes, +1);
  CHECK(right.pass);
  CHECK(right.final_gap == 0.0);

  ContinuityProbeReport left = right_continuity_check(lim, 0.0, probes, -1);
  CHECK(!left.pass);
  CHECK(left.final_gap == doctest::Approx(1.0));
}

TEST_CASE("continuous oracle passes the probe check anywhere") {
  MonotoneFamily fam;
  for (int j = 0; j <= 2000; ++j) fam.x_grid.push_back(0.1 + 9.9 * j / 2000.0);
  std::vector<double> row;
  for (double v : fam.x_grid) row.push_back(2.0 * std::sqrt(M_PI * v));
  fam.rows.push_back(row);
  SampledLimit lim = pointwise_limit(fam, 1e-6);
  auto probes = geometric_probes(0.5, 10);
  ContinuityProbeReport rep = right_continuity_check(lim, 5.0, probes, +1,
                                                     1e-2);
  CHECK(rep.pass);
}

TEST_CASE("CSV matrices parse and validate") {
  std::string csv =
      "# comment\n"
      "0,0.5,1\n"
      "0,1,2\n"
      "0,0.5,1\n";
  MonotoneFamily fam = family_from_csv(csv);
  CHECK(fam.rows.size() == 2);
  CHECK(fam.rows[1][2] == 1.0);
  CHECK_THROWS_AS(family_from_csv("0,1\n1,abc\n"), DomainError);
  CHECK_THROWS_AS(family_from_csv("0,1\n0,1\n1,2\n"), DomainError);
}
