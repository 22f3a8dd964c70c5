#include <doctest.h>

#include <cmath>

#include "isoprof/ball_placement.hpp"

using namespace isoprof;

TEST_CASE("lambda_bound closed forms") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  WarpedSurface H = WarpedSurface::make(Catalog::hyperbolic);

  PlacementScenario s1{&P, SymmetricRegion{}, 1.0, 3.0, 1.0};
  CHECK(lambda_bound(s1, 0.5) == doctest::Approx(M_PI / 36.0));

  PlacementScenario s2{&P, SymmetricRegion({{0.0, 1.0}}), 2.0, 4.0, 1.0};
  CHECK(lambda_bound(s2, 0.5) == doctest::Approx(3.0 * M_PI / 64.0));

  PlacementScenario s3{&H, SymmetricRegion({{0.0, 1.0}}), 2.0, 4.0, 1.0};
  double want = (std::cosh(2.0) - std::cosh(1.0)) / (std::cosh(4.0) - 1.0) *
                2.0 * M_PI * (std::cosh(0.5) - 1.0);
  CHECK(lambda_bound(s3, 0.5) == doctest::Approx(want));
  CHECK(want == doctest::Approx(0.06764).epsilon(1e-4));

  // Lambda is strictly increasing in r and bounded by the model volume.
  double prev = 0.0;
  for (int i = 1; i <= 9; ++i) {
    double l = lambda_bound(s3, 0.1 * i);
    CHECK(l > prev);
    CHECK(l <= ball_volume(SpaceForm{s3.delta(), 2}, 0.1 * i));
    prev = l;
  }
}

TEST_CASE("scenario invariants are enforced") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  // |B| - |E| <= 0.
  PlacementScenario bad1{&P, SymmetricRegion({{0.0, 2.0}}), 1.0, 4.0, 1.0};
  CHECK_THROWS_AS(bad1.validate(), DomainError);
  // d(B, boundary of D) <= r0.
  PlacementScenario bad2{&P, SymmetricRegion{}, 1.0, 1.5, 1.0};
  CHECK_THROWS_AS(bad2.validate(), DomainError);
  // Inadmissible radius.
  PlacementScenario ok{&P, SymmetricRegion{}, 1.0, 3.0, 1.0};
  CHECK_THROWS_AS(lambda_bound(ok, 1.0), DomainError);
  CHECK_THROWS_AS(lambda_bound(ok, -0.1), DomainError);
}

TEST_CASE("witness search certifies the catalog scenarios") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  WarpedSurface H = WarpedSurface::make(Catalog::hyperbolic);

  PlacementScenario s1{&P, SymmetricRegion{}, 1.0, 3.0, 1.0};
  WitnessResult w1 = find_witness(s1, 0.5, 17, 20000, 101);
  CHECK(w1.pass);
  // E is empty, so every point measures the full flat ball pi/4.
  CHECK(std::abs(w1.measured - M_PI / 4.0) < 3.0 * w1.sigma + 1e-9);

  PlacementScenario s2{&P, SymmetricRegion({{0.0, 1.0}}), 2.0, 4.0, 1.0};
  WitnessResult w2 = find_witness(s2, 0.5, 17, 20000, 102);
  CHECK(w2.pass);
  CHECK(w2.x_t >= 1.5 - 1e-9);  // the ball must clear E

  PlacementScenario s3{&H, SymmetricRegion({{0.0, 1.0}}), 2.0, 4.0, 1.0};
  WitnessResult w3 = find_witness(s3, 0.5, 17, 20000, 103);
  CHECK(w3.pass);
  // Clear of E the measure is the hyperbolic ball 2 pi (cosh 1/2 - 1).
  CHECK(std::abs(w3.measured - 0.801897589399) < 3.0 * w3.sigma + 1e-6);
}

TEST_CASE("fubini average dominates the bound") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  PlacementScenario s2{&P, SymmetricRegion({{0.0, 1.0}}), 2.0, 4.0, 1.0};
  FubiniResult f = fubini_average_check(s2, 0.5, 200, 1000, 104);
  CHECK(f.pass);
  CHECK(f.mean >= f.bound - 3.0 * f.sigma);
}

TEST_CASE("sigma shrinks like one over sqrt(samples)") {
  WarpedSurface P = WarpedSurface::make(Catalog::plane);
  SymmetricRegion E({{0.0, 1.0}});
  McEstimate a = ball_minus_region(P, 1.2, 0.5, E, 20000, 55);
  McEstimate b = ball_minus_region(P, 1.2, 0.5, E, 40000, 55);
  double ratio = b.sigma / a.sigma;
  CHECK(ratio > (1.0 / std::sqrt(2.0)) * 0.8);
  CHECK(ratio < (1.0 / std::sqrt(2.0)) * 1.2);
}
