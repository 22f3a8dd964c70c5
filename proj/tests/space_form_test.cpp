#include <doctest.h>

#include <cmath>

#include "isoprof/space_form.hpp"

using namespace isoprof;

TEST_CASE("n=2 closed forms") {
  CHECK(std::abs(ball_volume(SpaceForm{0.0, 2}, 1.0) - M_PI) < 1e-14);
  // 2 pi (cosh 1 - 1) = 3.41227626528...
  CHECK(std::abs(ball_volume(SpaceForm{-1.0, 2}, 1.0) - 3.41227626528) <
        1e-9);
  CHECK(std::abs(ball_volume(SpaceForm{1.0, 2}, 1.0) -
                 2.0 * M_PI * (1.0 - std::cos(1.0))) < 1e-13);
  // delta = 4 halves all length scales relative to delta = 1.
  CHECK(std::abs(ball_volume(SpaceForm{4.0, 2}, 0.5) -
                 0.25 * ball_volume(SpaceForm{1.0, 2}, 1.0)) < 1e-13);
}

TEST_CASE("quadrature path agrees with closed forms") {
  for (double delta : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
    SpaceForm sf{delta, 2};
    double cap = delta > 0.0 ? M_PI / std::sqrt(delta) : 3.0;
    for (double frac : {0.2, 0.5, 0.9}) {
      double r = frac * cap;
      CHECK(std::abs(ball_volume_quadrature(sf, r) - ball_volume(sf, r)) <
            1e-9 * std::max(1.0, ball_volume(sf, r)));
    }
  }
  // n = 3 flat ball is (4/3) pi r^3.
  CHECK(std::abs(ball_volume(SpaceForm{0.0, 3}, 2.0) -
                 4.0 / 3.0 * M_PI * 8.0) < 1e-10);
}

TEST_CASE("area is the radial derivative of volume") {
  SpaceForm sf{-2.0, 2};
  double r = 1.3, h = 1e-6;
  double fd = (ball_volume(sf, r + h) - ball_volume(sf, r - h)) / (2 * h);
  CHECK(std::abs(fd - ball_area(sf, r)) < 1e-7);
  CHECK(std::abs(ball_area(SpaceForm{0.0, 2}, 2.0) - 4.0 * M_PI) < 1e-13);
}

TEST_CASE("domain caps are enforced for delta > 0") {
  SpaceForm sf{1.0, 2};
  CHECK_THROWS_AS(ball_volume(sf, M_PI + 0.1), DomainError);
  CHECK_THROWS_AS(ball_volume(sf, -1.0), DomainError);
  CHECK(domain_cap(SpaceForm{4.0, 2}) == doctest::Approx(M_PI / 2.0));
  CHECK(std::isinf(domain_cap(SpaceForm{-1.0, 2})));
}

TEST_CASE("inverse_volume inverts ball_volume") {
  for (double delta : {-1.0, 0.0, 2.0}) {
    SpaceForm sf{delta, 2};
    double cap = delta > 0.0 ? M_PI / std::sqrt(delta) : 4.0;
    for (double frac : {0.1, 0.6, 0.95}) {
      double r = frac * cap;
      CHECK(std::abs(inverse_volume(sf, ball_volume(sf, r)) - r) < 1e-10);
    }
  }
  // Sphere of curvature 1 has total area 4 pi; more is unreachable.
  CHECK_THROWS_AS(inverse_volume(SpaceForm{1.0, 2}, 5.0 * M_PI), DomainError);
}

TEST_CASE("model profiles") {
  CHECK(std::abs(space_form_profile(SpaceForm{0.0, 2}, M_PI) - 2.0 * M_PI) <
        1e-12);
  double v = 2.2;
  CHECK(std::abs(space_form_profile(SpaceForm{0.0, 2}, v) -
                 2.0 * std::sqrt(M_PI * v)) < 1e-12);
  CHECK(std::abs(space_form_profile(SpaceForm{-1.0, 2}, v) -
                 std::sqrt(v * v + 4.0 * M_PI * v)) < 1e-10);
}
