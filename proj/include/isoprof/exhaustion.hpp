#pragma once

#include <cstdint>
#include <optional>

#include "isoprof/warped_surface.hpp"

namespace isoprof {

/// Radial exhaustion function f(p) = m(d(p, x0)^2 / 2) built over a warped
/// surface, with the square-root outer function m(x) = (1 + x)^{1/2} by
/// default. Sublevel sets C_r are closed pole balls.
class ExhaustionSpec {
 public:
  explicit ExhaustionSpec(const WarpedSurface& surface);

  const WarpedSurface& surface() const { return *surface_; }

  double outer_m(double x) const;    // m
  double outer_dm(double x) const;   // m'
  double value(double d) const;      // f at radial distance d
  double min_value() const { return 1.0; }  // inf f = m(0)
  double lipschitz_constant() const { return std::sqrt(2.0); }

 private:
  const WarpedSurface* surface_;
};

/// Result of a convexity / Greene-Wu verification run.
struct ConvexityReport {
  double lipschitz_constant = 0.0;   // L
  double sandwich_constant = 0.0;    // K of the outer inclusion
  double min_hessian_margin = 0.0;   // worst (f o gamma)'' minus its bound
  int geodesic_count = 0;
  double domain_radius = 0.0;        // radial extent sampled
  bool pass = false;
  // Offending sample on failure.
  double fail_t0 = 0.0, fail_psi0 = 0.0, fail_s = 0.0;
};

/// Builds the default exhaustion f = (1 + t^2/2)^{1/2}; rejects surfaces
/// whose level circles would be concave (phi' < 0 somewhere in the domain).
ExhaustionSpec build_sqrt_exhaustion(const WarpedSurface& W);

/// |grad f| at radial distance d: d / (1 + d^2/2)^{1/2}, supremum sqrt(2).
double gradient_norm(const ExhaustionSpec& spec, double d);

/// Hadamard-case lower bound for the Hessian of f along unit directions:
/// (1 + d^2)/(4 (1 + d^2/2)^{3/2}). Derived under a Cauchy-Schwarz step
/// that holds for d <= 1; see hessian_floor for the global radial bound.
double hessian_lower_bound(const ExhaustionSpec& spec, double d);

/// Global lower bound attained by radial directions: 1/(2 (1 + d^2/2)^{3/2}).
/// Valid on any Hadamard surface for every d >= 0.
double hessian_floor(const ExhaustionSpec& spec, double d);

struct ConvexityOptions {
  int geodesics = 100;
  std::uint64_t seed = 1;
  double tol = 1e-4;
  double fd_step = 1e-3;
  double max_start_radius = 0.6;   // start radii sampled uniformly in [0, this]
  double geodesic_length = 0.35;   // integrated both ways from the start
  // Radius within which the Hadamard bound hessian_lower_bound applies;
  // beyond it (and up to the sampled domain) hessian_floor is asserted.
  double bound_radius = 1.0;
};

/// Samples seeded random geodesics, takes second central differences of
/// f o gamma, and asserts positivity everywhere. On surfaces with K <= 0 the
/// quantitative lower bounds are asserted as well.
ConvexityReport verify_strict_convexity(const ExhaustionSpec& spec,
                                        const ConvexityOptions& opt = {});

/// Radius of the sublevel set C_r: (2 (r^2 - 1))^{1/2}; requires r >= 1.
double sublevel_radius(const ExhaustionSpec& spec, double r);

/// Verifies the inner inclusion ball(x0, L^{-1} (r - inf f)) subset C_r with
/// L = sqrt(2) and reports the largest K with
/// sublevel_radius(r) <= K^{-1} r + 1 on the grid.
ConvexityReport greene_wu_sandwich(const ExhaustionSpec& spec,
                                   const std::vector<double>& r_grid);

/// Divergence of grad f / |grad f| at radius t > 0: the geodesic curvature
/// phi'(t)/phi(t) of the latitude circle. Undefined at the pole.
double level_normal_divergence(const ExhaustionSpec& spec, double t);

}  // namespace isoprof
