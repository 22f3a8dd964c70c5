#include "isoprof/ball_placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isoprof {

double PlacementScenario::delta() const {
  return surface->curvature_sup(0.0, b);
}

double PlacementScenario::inj_bound() const {
  if (inj_override > 0.0) return inj_override;
  double sup = delta();
  if (sup > 0.0) return M_PI / std::sqrt(sup);
  return std::numeric_limits<double>::infinity();
}

double PlacementScenario::vol_B() const { return surface->pole_ball_volume(b); }
double PlacementScenario::vol_D() const { return surface->pole_ball_volume(dD); }
double PlacementScenario::vol_E() const { return region_volume(*surface, E); }

double PlacementScenario::admissible_cap() const {
  double cap = std::min(r0, inj_bound());
  double d = delta();
  if (d > 0.0) cap = std::min(cap, M_PI / std::sqrt(d));
  return cap;
}

void PlacementScenario::validate() const {
  if (!surface) throw DomainError("PlacementScenario: missing surface");
  if (!(b > 0.0) || !(dD > b) || dD > surface->t_num())
    throw DomainError("PlacementScenario: need 0 < b < dD <= T_num");
  if (!(vol_B() - vol_E() > 0.0))
    throw DomainError("PlacementScenario: |B| - |E| must be positive");
  if (!(dD - b > r0))
    throw DomainError("PlacementScenario: d(B, boundary of D) must exceed r0");
  if (!(r0 > 0.0)) throw DomainError("PlacementScenario: r0 must be positive");
}

namespace {

void check_admissible(const PlacementScenario& sc, double r) {
  sc.validate();
  if (!(r > 0.0) || r >= sc.admissible_cap())
    throw DomainError("placement radius must lie in (0, min{r0, inj, "
                      "pi/sqrt(delta)})");
}

}  // namespace

double lambda_bound(const PlacementScenario& sc, double r) {
  check_admissible(sc, r);
  SpaceForm sf{sc.delta(), 2};
  return (sc.vol_B() - sc.vol_E()) / sc.vol_D() * ball_volume(sf, r);
}

WitnessResult find_witness(const PlacementScenario& sc, double r,
                           int grid_density, int mc_samples,
                           std::uint64_t seed) {
  check_admissible(sc, r);
  if (grid_density < 2 || mc_samples < 100)
    throw DomainError("find_witness: grid_density >= 2 and mc_samples >= 100");
  const WarpedSurface& W = *sc.surface;
  const double lambda = lambda_bound(sc, r);

  // Radial grid over D, refined near the boundary circles of E.
  std::vector<double> grid;
  for (int i = 0; i < grid_density; ++i)
    grid.push_back(sc.dD * i / (grid_density - 1));
  for (const auto& iv : sc.E.intervals()) {
    for (double e : {iv.a, iv.b}) {
      for (double off : {-0.5 * r, 0.0, 0.5 * r, r}) {
        double t = e + off;
        if (t >= 0.0 && t <= sc.dD) grid.push_back(t);
      }
    }
  }
  std::sort(grid.begin(), grid.end());

  // Pilot pass to rank candidates.
  int pilot = std::max(200, mc_samples / 20);
  std::vector<std::pair<double, double>> scored;  // (estimate, t)
  std::uint64_t sub = 0;
  double best_est = -1.0, best_sig = 0.0;
  for (double t : grid) {
    McEstimate e;
    try {
      e = ball_minus_region(W, t, r, sc.E, pilot, seed + 1000003 * (++sub));
    } catch (const DomainError&) {
      continue;  // ball leaves the numerical domain at this grid point
    }
    scored.push_back({e.value, t});
    if (e.value > best_est) {
      best_est = e.value;
      best_sig = e.sigma;
    }
  }
  if (scored.empty())
    throw DomainError("find_witness: no admissible grid point");

  // Prefer the smallest t within 2 pilot sigma of the maximum, then walk
  // down the ranking until a point certifies.
  std::stable_sort(scored.begin(), scored.end(), [&](auto& p, auto& q) {
    bool p_top = p.first >= best_est - 2.0 * best_sig;
    bool q_top = q.first >= best_est - 2.0 * best_sig;
    if (p_top != q_top) return p_top;
    if (p_top) return p.second < q.second;
    return p.first > q.first;
  });

  WitnessResult out;
  out.lambda = lambda;
  for (const auto& [est, t] : scored) {
    McEstimate e =
        ball_minus_region(W, t, r, sc.E, mc_samples, seed + 7919 * (++sub));
    if (e.value - 3.0 * e.sigma >= lambda) {
      out.pass = true;
      out.x_t = t;
      out.measured = e.value;
      out.sigma = e.sigma;
      return out;
    }
    if (!out.pass && e.value > out.measured) {
      out.x_t = t;
      out.measured = e.value;
      out.sigma = e.sigma;
    }
  }
  return out;  // pass = false: budget exhausted without a certified witness
}

FubiniResult fubini_average_check(const PlacementScenario& sc, double r,
                                  int outer_samples, int inner_samples,
                                  std::uint64_t seed) {
  check_admissible(sc, r);
  if (outer_samples < 2 || inner_samples < 100)
    throw DomainError("fubini_average_check: sample budget too small");
  const WarpedSurface& W = *sc.surface;
  const double volD = sc.vol_D();

  FubiniResult out;
  out.bound = lambda_bound(sc, r);

  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  int used = 0;
  for (int i = 0; i < outer_samples; ++i) {
    // x uniform in D for the Riemannian measure: invert the radial CDF.
    double u = rng.uniform();
    double t = solve_monotone(
        [&](double s) { return W.pole_ball_volume(s) - u * volD; }, 0.0,
        sc.dD, 1e-12, 1e-9 * std::max(1.0, volD),
        [&](double s) { return W.pole_ball_area(s); });
    McEstimate e;
    try {
      e = ball_minus_region(W, t, r, sc.E, inner_samples,
                            seed + 104729 * (i + 1));
    } catch (const DomainError&) {
      // Ball pokes outside the numerical domain; |B(x,r)\E| >= 0 and we
      // under-count by treating it as 0, which only weakens the mean.
      e = {0.0, 0.0};
    }
    sum += e.value;
    sum2 += e.value * e.value;
    ++used;
  }
  double mean = sum / used;
  double var = std::max(0.0, sum2 / used - mean * mean);
  out.mean = mean;
  out.sigma = std::sqrt(var / used);
  out.pass = mean >= out.bound - 3.0 * out.sigma;
  return out;
}

}  // namespace isoprof
