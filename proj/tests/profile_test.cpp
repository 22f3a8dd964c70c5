#include <doctest.h>

#include <cmath>

#include "isoprof/profile.hpp"
#include "isoprof/space_form.hpp"

using namespace isoprof;

TEST_CASE("disk_profile matches the constant-curvature oracles") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  WarpedSurface H = WarpedSurface::make(Catalog::hyperbolic);
  WarpedSurface C = WarpedSurface::make(Catalog::cigar);

  CHECK(disk_profile(P, {M_PI}).values[0] == doctest::Approx(2.0 * M_PI));
  CHECK(disk_profile(H, {2.0 * M_PI * (std::cosh(1.0) - 1.0)}).values[0] ==
        doctest::Approx(2.0 * M_PI * std::sinh(1.0)));
  // 2 pi tanh 1 = 4.78525185855...
  CHECK(disk_profile(C, {2.72552534063}).values[0] ==
        doctest::Approx(4.78525185855));

  // Flat curve equals 2 sqrt(pi v) across a grid.
  std::vector<double> grid{0.3, 1.0, 4.0, 9.0};
  ProfileCurve curve = disk_profile(P, grid);
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK(curve.values[j] == doctest::Approx(2.0 * std::sqrt(M_PI * grid[j])));
}

TEST_CASE("sublevel candidates reproduce the flat examples") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  SublevelOptions no_bite;
  no_bite.include_bite = false;

  SublevelResult ball_fits = sublevel_profile_candidates(P, 2.0, M_PI, no_bite);
  CHECK(ball_fits.value == doctest::Approx(2.0 * M_PI));
  CHECK(ball_fits.best.kind == CandidateKind::pole_disk);  // tie-break

  SublevelResult half = sublevel_profile_candidates(P, 1.0, M_PI / 2.0);
  CHECK(half.value == doctest::Approx(std::sqrt(2.0) * M_PI));
  CHECK(half.best.kind == CandidateKind::pole_disk);

  SublevelResult near_full =
      sublevel_profile_candidates(P, 1.0, M_PI - 0.01);
  CHECK(near_full.value ==
        doctest::Approx(2.0 * M_PI * std::sqrt(1.0 - 0.01 / M_PI)));
  double annulus = 0.0, bite = 0.0;
  for (const auto& c : near_full.candidates) {
    if (c.kind == CandidateKind::complement_annulus) annulus = c.perimeter;
    if (c.kind == CandidateKind::boundary_bite) bite = c.perimeter;
  }
  // Annulus: 2 pi (1 + sqrt(0.01/pi)) = 6.63776...; the bite family
  // degenerates toward boundary-hugging crescents, so the search lands
  // between the isoperimetric lower bound 2 sqrt(pi v) and the geodesic
  // chord segment value 6.27813909 (independent circular-segment geometry).
  CHECK(annulus == doctest::Approx(2.0 * M_PI * (1.0 + std::sqrt(0.01 / M_PI))));
  CHECK(bite >= 2.0 * std::sqrt(M_PI * (M_PI - 0.01)) - 1e-6);
  CHECK(bite <= 6.27813909 + 1e-6);

  CHECK_THROWS_AS(sublevel_profile_candidates(P, 1.0, 2.0 * M_PI, no_bite),
                  DomainError);
  CHECK_THROWS_AS(sublevel_profile_candidates(P, 1.0, 0.0, no_bite),
                  DomainError);
}

TEST_CASE("half-volume bite lands between the ball bound and the diameter") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  SublevelOptions opt;
  opt.bite_anchor_grid = 12;
  opt.bite_refine_iters = 20;
  SublevelResult r = sublevel_profile_candidates(P, 1.0, M_PI / 2.0, opt);
  double bite = 0.0;
  for (const auto& c : r.candidates)
    if (c.kind == CandidateKind::boundary_bite) bite = c.perimeter;
  // Lower bound: isoperimetric inequality for volume pi/2. Upper bound: the
  // diameter cut (2 + pi) is in the search family, so the minimum beats it.
  CHECK(bite >= std::sqrt(2.0) * M_PI - 1e-6);
  CHECK(bite <= 2.0 + M_PI + 1e-3);
  CHECK(r.value < bite);  // the pole disk still wins
}

TEST_CASE("interior ball equals the oracle in constant curvature") {
  WarpedSurface H = WarpedSurface::make(Catalog::hyperbolic);
  SublevelOptions no_bite;
  no_bite.include_bite = false;
  double v = 2.0 * M_PI * (std::cosh(1.0) - 1.0);
  SublevelResult r = sublevel_profile_candidates(H, 2.0, v, no_bite);
  CHECK(r.value == doctest::Approx(space_form_profile(SpaceForm{-1.0, 2}, v)));
}

TEST_CASE("inf_over_r stabilizes at the oracle") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  ExhaustionSpec spec = build_sqrt_exhaustion(P);
  SublevelOptions no_bite;
  no_bite.include_bite = false;

  auto sched = default_r_schedule(P, spec, M_PI);
  CHECK(sched.size() == 32);
  InfOverRResult r = inf_over_r(P, spec, M_PI, sched, no_bite);
  CHECK(r.converged);
  CHECK(r.monotone);
  CHECK(r.value == doctest::Approx(2.0 * M_PI));

  // A schedule whose sublevel sets never reach the volume is a domain error.
  std::vector<double> short_sched{spec.value(0.3), spec.value(0.5)};
  CHECK_THROWS_AS(inf_over_r(P, spec, M_PI, short_sched, no_bite),
                  DomainError);
}

TEST_CASE("truncate_and_compensate reproduces the flat certificate") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  SymmetricRegion E({{0.0, 1.01}});
  CompensateContext ctx;
  ctx.seed = 9;
  CompensateResult r = truncate_and_compensate(P, E, 1.0, ctx);

  CHECK(r.deficit == doctest::Approx(0.0201 * M_PI));
  CHECK(std::abs(r.volume - M_PI * 1.01 * 1.01) <
        1e-8 * M_PI * 1.01 * 1.01);
  CHECK(r.ball_radius == doctest::Approx(std::sqrt(0.0201)).epsilon(1e-7));
  double want = 2.0 * M_PI * (1.0 + std::sqrt(0.0201));  // 7.17398056641
  CHECK(std::abs(r.perimeter_bound - want) < 1e-6);
  // Certificate dominates the exact flat perimeter of F.
  double exact = 2.0 * M_PI + 2.0 * M_PI * r.ball_radius;
  CHECK(r.perimeter_bound >= exact - 1e-9);

  // Nothing to do when E is already inside the sublevel set.
  SymmetricRegion inside({{0.0, 0.5}});
  CompensateResult same = truncate_and_compensate(P, inside, 1.0, ctx);
  CHECK(same.deficit == 0.0);
  CHECK(same.perimeter_bound == doctest::Approx(M_PI));

  // Hyperbolic deficit too large for an admissible ball.
  WarpedSurface H = WarpedSurface::make(Catalog::hyperbolic);
  SymmetricRegion big({{0.0, 2.0}});
  CompensateContext small_r0;
  small_r0.r0 = 0.05;
  CHECK_THROWS_AS(truncate_and_compensate(H, big, 1.0, small_r0),
                  DomainError);
}

TEST_CASE("continuity report and its negative control") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  auto build = [&](int n) {
    std::vector<double> grid;
    for (int i = 0; i < n; ++i)
      grid.push_back(0.1 + (10.0 - 0.1) * i / (n - 1));
    return disk_profile(P, grid);
  };
  ContinuityReport rep = monotone_continuity_report(build(101), build(201));
  CHECK(rep.pass);
  CHECK(rep.monotone);
  CHECK(rep.jump_ratio == doctest::Approx(0.5).epsilon(0.3));

  ProfileCurve bad = build(101);
  bad.values[40] = bad.values[41] + 0.1;  // corrupt one step
  ContinuityReport neg = monotone_continuity_report(bad, build(201));
  CHECK(!neg.pass);
  CHECK(!neg.monotone);
}

TEST_CASE("strict monotonicity of the sublevel profile") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  std::vector<double> grid;
  for (int i = 0; i < 20; ++i)
    grid.push_back(M_PI * (0.05 + (0.99 - 0.05) * i / 19.0));
  SublevelOptions no_bite;
  no_bite.include_bite = false;
  StrictMonotonicityReport rep = strict_monotonicity_check(P, 1.0, grid,
                                                           no_bite);
  CHECK(rep.pass);

  CHECK(check_strictly_increasing({1.0, 2.0, 3.0}));
  CHECK(!check_strictly_increasing({1.0, 2.0, 2.0}));
  CHECK(!check_strictly_increasing({1.0, 2.0, 1.5}));
}

TEST_CASE("profile CSV round-trips the schema header") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  ProfileCurve curve = disk_profile(P, {1.0, 2.0});
  std::string csv = profile_curve_csv(curve);
  CHECK(csv.rfind("# schema_version=1", 0) == 0);
  CHECK(csv.find("v,I,kind,r,candidate,candidate_param") != std::string::npos);
  CHECK(csv.find("PoleDisk") != std::string::npos);
}
