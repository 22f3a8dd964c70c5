#pragma once

#include "isoprof/numerics.hpp"

namespace isoprof {

/// Simply connected model space of constant sectional curvature delta in
/// dimension n. Radius arguments must satisfy 0 < r, and r < pi/sqrt(delta)
/// when delta > 0 (the cap is +infinity for delta <= 0).
struct SpaceForm {
  double delta = 0.0;
  int n = 2;
};

/// n-volume of the Euclidean unit ball.
double unit_ball_volume(int n);

/// pi/sqrt(delta) for delta > 0, +infinity otherwise.
double domain_cap(const SpaceForm& sf);

/// Generalized sine sn_delta(t): the warping function of the model.
double model_warp(double delta, double t);

/// Volume of the geodesic ball of radius r. Closed forms for n = 2,
/// adaptive quadrature of the model area element for n >= 3.
double ball_volume(const SpaceForm& sf, double r);

/// Quadrature path for any n, used to cross-check the closed forms.
double ball_volume_quadrature(const SpaceForm& sf, double r);

/// Boundary measure of the model ball; d/dr ball_volume.
double ball_area(const SpaceForm& sf, double r);

/// Radius of the ball of volume v; monotone bracketing plus Newton polish.
double inverse_volume(const SpaceForm& sf, double v);

/// Exact isoperimetric profile of the 2-dimensional model:
/// perimeter of the ball of area v.
double space_form_profile(const SpaceForm& sf, double v);

}  // namespace isoprof
