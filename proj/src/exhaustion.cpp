#include "isoprof/exhaustion.hpp"

#include <cmath>
#include <limits>

namespace isoprof {

ExhaustionSpec::ExhaustionSpec(const WarpedSurface& surface)
    : surface_(&surface) {}

double ExhaustionSpec::outer_m(double x) const { return std::sqrt(1.0 + x); }
double ExhaustionSpec::outer_dm(double x) const {
  return 0.5 / std::sqrt(1.0 + x);
}
double ExhaustionSpec::value(double d) const {
  return outer_m(0.5 * d * d);
}

ExhaustionSpec build_sqrt_exhaustion(const WarpedSurface& W) {
  // Level circles are latitude circles; their geodesic curvature is
  // phi'/phi, so phi' must stay positive.
  const int n = 4096;
  for (int i = 0; i <= n; ++i) {
    double t = W.t_num() * i / n;
    if (W.dphi(t) <= 0.0)
      throw DomainError("build_sqrt_exhaustion: phi' <= 0 at t = " +
                        std::to_string(t) + "; level circles would be concave");
  }
  return ExhaustionSpec(W);
}

double gradient_norm(const ExhaustionSpec&, double d) {
  if (!(d >= 0.0)) throw DomainError("gradient_norm: d must be >= 0");
  return d / std::sqrt(1.0 + 0.5 * d * d);
}

double hessian_lower_bound(const ExhaustionSpec&, double d) {
  if (!(d >= 0.0)) throw DomainError("hessian_lower_bound: d must be >= 0");
  double q = 1.0 + 0.5 * d * d;
  return 0.25 * (1.0 + d * d) / (q * std::sqrt(q));
}

double hessian_floor(const ExhaustionSpec&, double d) {
  if (!(d >= 0.0)) throw DomainError("hessian_floor: d must be >= 0");
  double q = 1.0 + 0.5 * d * d;
  return 0.5 / (q * std::sqrt(q));
}

double sublevel_radius(const ExhaustionSpec&, double r) {
  if (!(r >= 1.0)) throw DomainError("sublevel_radius: level below inf f = 1");
  return std::sqrt(2.0 * (r * r - 1.0));
}

ConvexityReport verify_strict_convexity(const ExhaustionSpec& spec,
                                        const ConvexityOptions& opt) {
  const WarpedSurface& W = spec.surface();
  bool hadamard = W.curvature_sup(0.0, W.t_num()) <= 1e-12;

  ConvexityReport rep;
  rep.lipschitz_constant = spec.lipschitz_constant();
  rep.geodesic_count = opt.geodesics;
  rep.domain_radius = opt.max_start_radius + opt.geodesic_length;
  rep.min_hessian_margin = std::numeric_limits<double>::infinity();
  rep.pass = true;

  Rng rng(opt.seed);
  const double h = opt.fd_step;
  for (int g = 0; g < opt.geodesics; ++g) {
    double t0 = opt.max_start_radius * rng.uniform();
    double psi0 = 2.0 * M_PI * rng.uniform();
    std::vector<double> ts =
        radial_trace(W, t0, psi0, opt.geodesic_length, h);
    for (std::size_t k = 1; k + 1 < ts.size(); ++k) {
      double fm = spec.value(ts[k - 1]);
      double f0 = spec.value(ts[k]);
      double fp = spec.value(ts[k + 1]);
      double second = (fp - 2.0 * f0 + fm) / (h * h);
      double d = ts[k];
      double bound = 0.0;  // positivity only on K > 0 surfaces
      if (hadamard)
        bound = (d <= opt.bound_radius) ? hessian_lower_bound(spec, d)
                                        : hessian_floor(spec, d);
      double margin = second - bound;
      if (margin < rep.min_hessian_margin) {
        rep.min_hessian_margin = margin;
        rep.fail_t0 = t0;
        rep.fail_psi0 = psi0;
        rep.fail_s = k * h;
      }
      if (margin < -opt.tol) rep.pass = false;
    }
  }
  return rep;
}

ConvexityReport greene_wu_sandwich(const ExhaustionSpec& spec,
                                   const std::vector<double>& r_grid) {
  ConvexityReport rep;
  rep.lipschitz_constant = spec.lipschitz_constant();
  rep.pass = true;
  double K = std::numeric_limits<double>::infinity();
  for (double r : r_grid) {
    double rad = sublevel_radius(spec, r);
    // Inner inclusion: the Lipschitz bound f(x) <= f(x0) + L d gives
    // ball(x0, (r - inf f)/L) inside C_r.
    double inner = (r - spec.min_value()) / spec.lipschitz_constant();
    if (inner > rad + 1e-12) rep.pass = false;
    if (rad > 1.0) K = std::min(K, r / (rad - 1.0));
    rep.domain_radius = std::max(rep.domain_radius, rad);
  }
  rep.sandwich_constant = K;
  return rep;
}

double level_normal_divergence(const ExhaustionSpec& spec, double t) {
  if (!(t > 0.0))
    throw DomainError("level_normal_divergence: undefined at the pole");
  const WarpedSurface& W = spec.surface();
  return W.dphi(t) / W.phi(t);
}

}  // namespace isoprof
