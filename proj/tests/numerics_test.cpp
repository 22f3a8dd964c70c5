#include <doctest.h>

#include <cmath>

#include "isoprof/numerics.hpp"

using namespace isoprof;

TEST_CASE("adaptive Simpson integrates smooth functions tightly") {
  double got = integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(std::abs(got - 2.0) < 1e-11);
  got = integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0);
  CHECK(std::abs(got - std::sqrt(M_PI)) < 1e-10);
  CHECK(integrate([](double x) { return x; }, 1.0, 1.0) == 0.0);
}

TEST_CASE("solve_monotone finds bracketed roots") {
  double r = solve_monotone([](double x) { return x * x * x - 2.0; }, 0.0,
                            2.0);
  CHECK(std::abs(r - std::cbrt(2.0)) < 1e-12);
  r = solve_monotone([](double x) { return std::cosh(x) - 3.0; }, 0.0, 5.0,
                     1e-14, 1e-13, [](double x) { return std::sinh(x); });
  CHECK(std::abs(std::cosh(r) - 3.0) < 1e-11);
  CHECK_THROWS_AS(
      solve_monotone([](double x) { return x + 10.0; }, 0.0, 1.0),
      DomainError);
}

TEST_CASE("bracket_upper expands to a sign change") {
  double hi =
      bracket_upper([](double x) { return x - 40.0; }, 0.0, 1.0, 1e6);
  CHECK(hi >= 40.0);
}

TEST_CASE("Dormand-Prince integrates the harmonic oscillator") {
  OdeRhs<2> rhs = [](double, const std::array<double, 2>& y,
                     std::array<double, 2>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  std::array<double, 2> y{1.0, 0.0};
  integrate_ode<2>(rhs, y, 0.0, 10.0 * M_PI, 1e-11, 1e-13);
  CHECK(std::abs(y[0] - 1.0) < 1e-8);
  CHECK(std::abs(y[1]) < 1e-8);

  // Backward integration returns to the start.
  integrate_ode<2>(rhs, y, 10.0 * M_PI, 0.0, 1e-11, 1e-13);
  CHECK(std::abs(y[0] - 1.0) < 1e-8);
}

TEST_CASE("seeded RNG is reproducible") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
}
