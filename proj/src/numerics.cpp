#include "isoprof/numerics.hpp"

#include <cmath>
#include <limits>

namespace isoprof {

namespace {

double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double eps,
             int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(fa, flm, fm, m - a);
  double right = simpson(fm, frm, fb, b - m);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adapt(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
         adapt(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(fa, fm, fb, b - a);
  double eps = std::max(abs_tol, rel_tol * std::abs(whole));
  return adapt(f, a, b, fa, fm, fb, whole, eps, 50);
}

double solve_monotone(const std::function<double(double)>& f, double lo,
                      double hi, double x_tol, double f_tol,
                      const std::function<double(double)>& df) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw DomainError("solve_monotone: root not bracketed");
  // Bisect to a short bracket.
  for (int i = 0; i < 80 && (hi - lo) > 64 * x_tol * std::max(1.0, std::abs(lo));
       ++i) {
    double mid = 0.5 * (lo + hi);
    double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if (flo * fmid < 0.0) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  // Newton / secant polish inside the bracket.
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int i = 0; i < 60; ++i) {
    double slope;
    if (df) {
      slope = df(x);
    } else {
      double h = std::max(1e-7, 1e-7 * std::abs(x));
      slope = (f(x + h) - f(x - h)) / (2.0 * h);
    }
    double step = (slope != 0.0) ? fx / slope : 0.0;
    double xn = x - step;
    if (slope == 0.0 || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    double fn = f(xn);
    if (flo * fn < 0.0) {
      hi = xn;
      fhi = fn;
    } else {
      lo = xn;
      flo = fn;
    }
    x = xn;
    fx = fn;
    if (std::abs(fx) <= f_tol &&
        (hi - lo) <= x_tol * std::max(1.0, std::abs(x)))
      return x;
  }
  return x;
}

double bracket_upper(const std::function<double(double)>& f, double lo,
                     double hi_guess, double hi_cap) {
  double hi = hi_guess;
  for (int i = 0; i < 200; ++i) {
    if (hi >= hi_cap) return hi_cap;
    if (f(hi) >= 0.0) return hi;
    hi *= 2.0;
  }
  throw ConvergenceError("bracket_upper: no sign change found");
}

}  // namespace isoprof
