#pragma once

#include <cstdint>

#include "isoprof/space_form.hpp"
#include "isoprof/warped_surface.hpp"

namespace isoprof {

/// Ball-placement scenario: a symmetric region E, pole balls B and D with
/// |B| - |E| > 0 and d(B, boundary of D) > r0. delta is the curvature
/// supremum over B; inj_bound the conjugate-distance bound (or a user
/// override, since the injectivity radius is not computable from phi alone
/// when K > 0).
struct PlacementScenario {
  const WarpedSurface* surface = nullptr;
  SymmetricRegion E;
  double b = 0.0;        // radius of B
  double dD = 0.0;       // radius of D
  double r0 = 0.0;
  double inj_override = -1.0;  // < 0: use the conjugate bound

  double delta() const;      // sup K over B
  double inj_bound() const;
  double vol_B() const;
  double vol_D() const;
  double vol_E() const;
  double admissible_cap() const;  // min{r0, inj, pi/sqrt(delta)}
  void validate() const;
};

/// Lambda(r) = ((|B| - |E|)/|D|) V_{delta,2}(r), strictly positive for
/// admissible r.
double lambda_bound(const PlacementScenario& sc, double r);

struct WitnessResult {
  bool pass = false;
  double x_t = 0.0;       // radial coordinate of the witness
  double x_theta = 0.0;   // by symmetry always 0
  double measured = 0.0;  // MC estimate of |B(x,r) \ E|
  double sigma = 0.0;
  double lambda = 0.0;
};

/// Searches a radial grid over D (refined near the boundary circles of E)
/// for a point x with |B(x,r) \ E| - 3 sigma >= Lambda(r). A pilot pass
/// ranks candidates; the best is certified at full sample count.
WitnessResult find_witness(const PlacementScenario& sc, double r,
                           int grid_density, int mc_samples,
                           std::uint64_t seed);

struct FubiniResult {
  bool pass = false;
  double mean = 0.0;
  double sigma = 0.0;
  double bound = 0.0;  // Lambda(r)
};

/// Estimates the average of |B(x,r) \ E| over x uniform in D by nested
/// sampling and asserts mean >= Lambda(r) - 3 sigma.
FubiniResult fubini_average_check(const PlacementScenario& sc, double r,
                                  int outer_samples, int inner_samples,
                                  std::uint64_t seed);

}  // namespace isoprof
