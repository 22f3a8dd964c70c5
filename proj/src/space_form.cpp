#include "isoprof/space_form.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace isoprof {

namespace {

void check_form(const SpaceForm& sf) {
  if (sf.n < 2) throw DomainError("SpaceForm: dimension must be >= 2");
  if (!std::isfinite(sf.delta)) throw DomainError("SpaceForm: bad curvature");
}

void check_radius(const SpaceForm& sf, double r) {
  check_form(sf);
  if (!(r > 0.0))
    throw DomainError("SpaceForm: radius must be positive, got " +
                      std::to_string(r));
  if (r >= domain_cap(sf))
    throw DomainError("SpaceForm: radius " + std::to_string(r) +
                      " >= pi/sqrt(delta)");
}

}  // namespace

double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double domain_cap(const SpaceForm& sf) {
  if (sf.delta > 0.0) return M_PI / std::sqrt(sf.delta);
  return std::numeric_limits<double>::infinity();
}

double model_warp(double delta, double t) {
  if (delta == 0.0) return t;
  double k = std::sqrt(std::abs(delta));
  if (delta > 0.0) return std::sin(k * t) / k;
  return std::sinh(k * t) / k;
}

double ball_area(const SpaceForm& sf, double r) {
  check_radius(sf, r);
  double sn = model_warp(sf.delta, r);
  return sf.n * unit_ball_volume(sf.n) * std::pow(sn, sf.n - 1);
}

double ball_volume_quadrature(const SpaceForm& sf, double r) {
  check_radius(sf, r);
  const double delta = sf.delta;
  const int n = sf.n;
  const double coeff = n * unit_ball_volume(n);
  return integrate(
      [delta, n, coeff](double t) {
        return coeff * std::pow(model_warp(delta, t), n - 1);
      },
      0.0, r, 1e-14, 1e-13);
}

double ball_volume(const SpaceForm& sf, double r) {
  check_radius(sf, r);
  if (sf.n == 2) {
    if (sf.delta == 0.0) return M_PI * r * r;
    double k = std::sqrt(std::abs(sf.delta));
    if (sf.delta < 0.0)
      return 2.0 * M_PI / std::abs(sf.delta) * (std::cosh(k * r) - 1.0);
    return 2.0 * M_PI / sf.delta * (1.0 - std::cos(k * r));
  }
  return ball_volume_quadrature(sf, r);
}

double inverse_volume(const SpaceForm& sf, double v) {
  check_form(sf);
  if (!(v > 0.0)) throw DomainError("inverse_volume: volume must be positive");
  double cap = domain_cap(sf);
  if (std::isfinite(cap)) {
    double total = ball_volume(sf, std::nextafter(cap, 0.0));
    if (v >= total)
      throw DomainError("inverse_volume: volume exceeds model total " +
                        std::to_string(total));
  }
  auto f = [&](double r) { return ball_volume(sf, r) - v; };
  double hi = std::isfinite(cap)
                  ? std::nextafter(cap, 0.0)
                  : bracket_upper(f, 0.0, 1.0,
                                  std::numeric_limits<double>::infinity());
  return solve_monotone(f, 1e-300, hi, 1e-14, 1e-10 * std::max(1.0, v),
                        [&](double r) { return ball_area(sf, r); });
}

double space_form_profile(const SpaceForm& sf, double v) {
  check_form(sf);
  if (sf.n != 2)
    throw DomainError("space_form_profile: only n = 2 is supported");
  if (sf.delta == 0.0) {
    if (!(v > 0.0)) throw DomainError("space_form_profile: bad volume");
    return 2.0 * std::sqrt(M_PI * v);
  }
  if (sf.delta == -1.0) {
    if (!(v > 0.0)) throw DomainError("space_form_profile: bad volume");
    return std::sqrt(v * v + 4.0 * M_PI * v);
  }
  return ball_area(sf, inverse_volume(sf, v));
}

}  // namespace isoprof
