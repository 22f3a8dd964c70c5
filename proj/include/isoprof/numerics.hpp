#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace isoprof {

/// Thrown on precondition violations (bad radii, volumes out of range, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative scheme exhausts its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- quadrature ----

/// Adaptive Simpson integration of a smooth function on [a, b].
/// Terminates when the local error estimate is below
/// max(abs_tol, rel_tol * |integral|) distributed over subintervals.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12);

// ---- root finding ----

/// Root of a monotone function on [lo, hi]: bisection to a tight bracket,
/// then Newton polish using the supplied derivative (secant when absent).
/// Requires f(lo) and f(hi) of opposite sign (or zero).
double solve_monotone(const std::function<double(double)>& f, double lo,
                      double hi, double x_tol = 1e-14, double f_tol = 1e-12,
                      const std::function<double(double)>& df = nullptr);

/// Expands [lo, hi] upward until f changes sign; f must be increasing.
double bracket_upper(const std::function<double(double)>& f, double lo,
                     double hi_guess, double hi_cap);

// ---- ODE integration ----

/// Dormand-Prince 5(4) adaptive step control on a fixed-size state.
/// deriv(s, y, dy). Steps from s0 to s1; calls observer after each
/// accepted step when provided.
template <std::size_t N>
using OdeRhs = std::function<void(double, const std::array<double, N>&,
                                  std::array<double, N>&)>;

template <std::size_t N>
using OdeObserver =
    std::function<void(double, const std::array<double, N>&)>;

template <std::size_t N>
void integrate_ode(const OdeRhs<N>& rhs, std::array<double, N>& y, double s0,
                   double s1, double rel_tol = 1e-9, double abs_tol = 1e-12,
                   const OdeObserver<N>& observer = nullptr);

// ---- RNG ----

/// Deterministic RNG wrapper; all Monte-Carlo paths take one of these so
/// (seed, samples) fixes the output exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return dist_(gen_); }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::mt19937_64 gen_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

/// Monte-Carlo estimate with its standard error.
struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;
};

// ---- template implementation ----

template <std::size_t N>
void integrate_ode(const OdeRhs<N>& rhs, std::array<double, N>& y, double s0,
                   double s1, double rel_tol, double abs_tol,
                   const OdeObserver<N>& observer) {
  // Dormand-Prince coefficients.
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double dir = (s1 >= s0) ? 1.0 : -1.0;
  double s = s0;
  double span = std::abs(s1 - s0);
  if (span == 0.0) return;
  double h = dir * std::min(span, 0.1);

  std::array<double, N> k1, k2, k3, k4, k5, k6, k7, yt, y5;
  rhs(s, y, k1);
  std::size_t steps = 0;
  const std::size_t max_steps = 2000000;
  while (dir * (s1 - s) > 0) {
    if (++steps > max_steps)
      throw ConvergenceError("integrate_ode: step budget exhausted");
    bool last = false;
    if (dir * (s + h - s1) >= 0) {
      h = s1 - s;
      last = true;
    }
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    rhs(s + c2 * h, yt, k2);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(s + c3 * h, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(s + c4 * h, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] +
              h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(s + c5 * h, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                          a64 * k4[i] + a65 * k5[i]);
    rhs(s + h, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    rhs(s + h, y5, k7);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      double r = e / sc;
      err += r * r;
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      s = last ? s1 : s + h;
      y = y5;
      k1 = k7;  // FSAL
      if (observer) observer(s, y);
      if (last) return;
    }
    double fac = 0.9 * std::pow(err > 1e-300 ? err : 1e-300, -0.2);
    fac = std::min(5.0, std::max(0.2, fac));
    h *= fac;
    if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(s)))
      throw ConvergenceError("integrate_ode: step size underflow");
  }
}

}  // namespace isoprof
