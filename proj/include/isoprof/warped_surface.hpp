#pragma once

#include <functional>
#include <string>
#include <vector>

#include "isoprof/numerics.hpp"

namespace isoprof {

enum class Catalog { plane, hyperbolic, cigar, flare, custom };

std::string catalog_name(Catalog c);
Catalog catalog_from_name(const std::string& name);

/// Warping function descriptor: phi with its first two derivatives in
/// closed form, plus phi'''(0) for the curvature limit at the pole.
struct Warp {
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
  std::function<double(double)> ddphi;
  double dddphi0 = 0.0;
};

/// Rotationally symmetric surface with metric dt^2 + phi(t)^2 dtheta^2,
/// smooth pole at t = 0 (phi(0) = 0, phi'(0) = 1).
class WarpedSurface {
 public:
  static WarpedSurface make(Catalog c, double t_num = -1.0);
  static WarpedSurface custom(Warp warp, double t_num);

  Catalog catalog() const { return catalog_; }
  std::string name() const { return catalog_name(catalog_); }
  double t_num() const { return t_num_; }
  void set_t_num(double t) { t_num_ = t; }

  double phi(double t) const { return warp_.phi(t); }
  double dphi(double t) const { return warp_.dphi(t); }
  double ddphi(double t) const { return warp_.ddphi(t); }

  /// Gauss curvature -phi''/phi, extended by the limit -phi'''(0) at the pole.
  double gauss_curvature(double t) const;

  /// sup / inf of the Gauss curvature over [a, b] by dense sampling with
  /// local refinement.
  double curvature_sup(double a, double b) const;
  double curvature_inf(double a, double b) const;

  /// 2 pi * integral_0^R phi and 2 pi phi(R).
  double pole_ball_volume(double R) const;
  double pole_ball_area(double R) const;
  /// Inverse of pole_ball_volume.
  double pole_ball_radius(double v) const;

 private:
  WarpedSurface(Catalog c, Warp warp, double t_num)
      : catalog_(c), warp_(std::move(warp)), t_num_(t_num) {}
  void check_t(double t) const;

  Catalog catalog_;
  Warp warp_;
  double t_num_;
};

// ---- rotationally symmetric regions ----

struct Interval {
  double a = 0.0;
  double b = 0.0;
};

/// Finite union of disjoint closed annuli [a_k, b_k], 0 <= a_1 < b_1 < a_2 < ...
/// Degenerate intervals are normalized away (sets are representatives up to
/// null sets).
class SymmetricRegion {
 public:
  SymmetricRegion() = default;
  explicit SymmetricRegion(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  bool contains(double t) const;
  double outer_radius() const;

 private:
  std::vector<Interval> intervals_;
};

double region_volume(const WarpedSurface& W, const SymmetricRegion& S);
double region_perimeter(const WarpedSurface& W, const SymmetricRegion& S);

struct TruncateResult {
  SymmetricRegion region;      // S intersected with [0, rho]
  double slice_length = 0.0;   // 2 pi phi(rho) if rho cuts an interval interior
};

/// Intersects S with the closed pole ball of radius rho. The identity
/// perimeter(S cap C_rho) = perimeter(S inside the open ball) + slice_length
/// holds exactly for this representation.
TruncateResult region_truncate(const WarpedSurface& W, const SymmetricRegion& S,
                               double rho);

// ---- geodesics ----

struct GeodesicState {
  double t = 0.0;
  double theta = 0.0;
  double vt = 0.0;
  double vtheta = 0.0;
  double arc_length = 0.0;
};

/// Integrates the geodesic equations t'' = phi phi' theta'^2,
/// theta'' = -2 (phi'/phi) t' theta' with adaptive step control.
/// Returns the accepted-step trajectory including the start state.
/// Radial starts (vtheta = 0) are propagated analytically through the pole.
std::vector<GeodesicState> geodesic_integrate(const WarpedSurface& W,
                                              const GeodesicState& start,
                                              double length,
                                              double rel_tol = 1e-9);

/// Radial coordinate along a unit-speed geodesic from (t0, heading psi0),
/// sampled at arc lengths 0, h, 2h, ..., n*h. Heading is measured from the
/// outward radial direction.
std::vector<double> radial_trace(const WarpedSurface& W, double t0,
                                 double psi0, double length, double h);

/// Endpoint radius and Jacobi spread of the unit-speed geodesic leaving
/// (t0, .) with heading alpha after arc length rho. J solves J'' = -K J,
/// J(0) = 0, J'(0) = 1.
struct ExpSample {
  double t_end = 0.0;
  double jacobi = 0.0;
};
ExpSample exp_map_sample(const WarpedSurface& W, double t0, double alpha,
                         double rho);

/// Monte-Carlo estimate of |B(x, s)| for x at radius t0, by uniform sampling
/// of the model disk re-weighted with the Jacobi determinant.
McEstimate offset_ball_measure(const WarpedSurface& W, double t0, double s,
                               int samples, std::uint64_t seed);

/// Monte-Carlo estimate of |B(x, s) \ E| for a symmetric region E.
McEstimate ball_minus_region(const WarpedSurface& W, double t0, double s,
                             const SymmetricRegion& E, int samples,
                             std::uint64_t seed);

/// Deterministic direction-quadrature version of ball_minus_region,
/// used for exact-volume root finding.
double ball_minus_region_quad(const WarpedSurface& W, double t0, double s,
                              const SymmetricRegion& E, int directions = 128);

/// Conjugate-distance bound pi / sqrt(sup K) over the ball hull; +inf when
/// the supremum is non-positive.
double conjugate_bound(const WarpedSurface& W, double t0, double s);

// ---- prescribed geodesic curvature arcs ----

struct ArcPoint {
  double s = 0.0;
  double t = 0.0;
  double theta = 0.0;
  double psi = 0.0;
};

struct Arc {
  std::vector<ArcPoint> points;
  double length = 0.0;
  double swept_area = 0.0;  // signed Green's-theorem accumulation of Phi dtheta
  bool hit_boundary = false;
  bool closed = false;
};

struct ArcStop {
  double boundary_t = -1.0;     // stop on return to this latitude (< 0: off)
  bool detect_closure = false;  // stop when the curve returns to its start
  double max_length = 50.0;
};

/// Shoots the unit-speed curve with prescribed geodesic curvature kappa from
/// (t0, theta0) with heading psi0 (measured from the outward radial
/// direction; psi = pi/2 is the positively oriented latitude direction).
Arc cmc_arc_shoot(const WarpedSurface& W, double kappa, double t0,
                  double theta0, double psi0, const ArcStop& stop,
                  double rel_tol = 1e-10);

}  // namespace isoprof
