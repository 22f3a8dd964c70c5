#include "isoprof/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "isoprof/io.hpp"
#include "isoprof/space_form.hpp"

namespace isoprof {

std::string candidate_kind_name(CandidateKind k) {
  switch (k) {
    case CandidateKind::pole_disk: return "PoleDisk";
    case CandidateKind::interior_ball: return "InteriorBall";
    case CandidateKind::complement_annulus: return "ComplementAnnulus";
    case CandidateKind::boundary_bite: return "BoundaryBite";
  }
  throw DomainError("candidate_kind_name: unknown kind");
}

ProfileCurve disk_profile(const WarpedSurface& W,
                          const std::vector<double>& v_grid) {
  ProfileCurve curve;
  curve.surface = W.name();
  curve.kind = "disk_profile";
  for (double v : v_grid) {
    double R = W.pole_ball_radius(v);
    curve.grid.push_back(v);
    curve.values.push_back(W.pole_ball_area(R));
    curve.witnesses.push_back(
        {CandidateKind::pole_disk, v, W.pole_ball_area(R), R, 0.0});
  }
  return curve;
}

namespace {

struct BiteSample {
  bool ok = false;
  double cap = 0.0;      // volume cut off between the arc and the boundary
  double perimeter = 0.0;
  double kappa = 0.0;
  double beta = 0.0;     // entry angle from the boundary tangent
};

/// Shoots the constant-curvature arc entering C_rho at (rho, theta = 0) with
/// heading psi = pi/2 + beta and returns the cap it cuts off. Green's theorem
/// around arc + boundary-return gives cap = |C_rho| dtheta / (2 pi) - swept.
BiteSample bite_shoot(const WarpedSurface& W, double rho, double beta,
                      double kappa, double rel_tol) {
  // The exactly radial heading (beta = pi/2, kappa ~ 0) runs through the
  // pole where theta is singular; a small nudge keeps the minimum radius
  // positive at negligible cost in the optimum.
  if (std::abs(beta - 0.5 * M_PI) < 1e-4)
    beta = 0.5 * M_PI + (beta >= 0.5 * M_PI ? 1e-4 : -1e-4);
  BiteSample out;
  out.kappa = kappa;
  out.beta = beta;
  ArcStop stop;
  stop.boundary_t = rho;
  stop.max_length = 4.0 * rho + 2.5 * (2.0 * M_PI * W.phi(rho));
  Arc arc;
  try {
    arc = cmc_arc_shoot(W, kappa, rho, 0.0, 0.5 * M_PI + beta, stop, rel_tol);
  } catch (const DomainError&) {
    return out;
  } catch (const ConvergenceError&) {
    return out;
  }
  if (!arc.hit_boundary) return out;
  double dtheta = arc.points.back().theta;
  if (dtheta < 1e-9 || dtheta > 2.0 * M_PI - 1e-9) return out;
  double vol_rho = W.pole_ball_volume(rho);
  double cap = vol_rho * dtheta / (2.0 * M_PI) - arc.swept_area;
  if (!(cap > 0.0) || cap >= vol_rho) return out;
  out.ok = true;
  out.cap = cap;
  out.perimeter =
      arc.length + W.pole_ball_area(rho) * (1.0 - dtheta / (2.0 * M_PI));
  return out;
}

/// Matches the cap volume at fixed entry angle by bracketing the curvature
/// on a ladder of samples and bisecting; returns the best match found.
BiteSample bite_match_volume(const WarpedSurface& W, double rho, double beta,
                             double v_cap, double rel_tol, int budget,
                             int& spent) {
  double vol_rho = W.pole_ball_volume(rho);
  double kscale = std::max(1.0, W.dphi(rho) / W.phi(rho));
  std::vector<double> ladder;
  for (double m : {-8.0, -4.0, -2.0, -1.0, -0.5, -0.2, 0.0,
                   0.2, 0.5, 1.0, 2.0, 4.0, 8.0})
    ladder.push_back(m * kscale);

  std::vector<BiteSample> samples;
  for (double k : ladder) {
    if (spent >= budget) break;
    ++spent;
    samples.push_back(bite_shoot(W, rho, beta, k, rel_tol));
  }

  BiteSample best;
  double best_miss = std::numeric_limits<double>::infinity();
  auto consider = [&](const BiteSample& s) {
    if (!s.ok) return;
    double miss = std::abs(s.cap - v_cap);
    if (miss < best_miss) {
      best_miss = miss;
      best = s;
    }
  };
  for (const auto& s : samples) consider(s);

  // Bisect every adjacent bracket of cap - v_cap among valid samples.
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const BiteSample *a = &samples[i], *b = &samples[i + 1];
    if (!a->ok || !b->ok) continue;
    if ((a->cap - v_cap) * (b->cap - v_cap) > 0.0) continue;
    BiteSample lo = *a, hi = *b;
    for (int it = 0; it < 48 && spent < budget; ++it) {
      ++spent;
      BiteSample mid =
          bite_shoot(W, rho, beta, 0.5 * (lo.kappa + hi.kappa), rel_tol);
      if (!mid.ok) break;
      consider(mid);
      if ((lo.cap - v_cap) * (mid.cap - v_cap) <= 0.0)
        hi = mid;
      else
        lo = mid;
      if (std::abs(mid.cap - v_cap) < 1e-10 * vol_rho) break;
    }
  }
  if (best.ok && best_miss > 1e-6 * vol_rho) best.ok = false;
  return best;
}

/// Two-parameter search for the cheapest bite of the target cap volume:
/// a coarse grid over the entry angle followed by golden-section refinement,
/// with the volume constraint solved at every angle.
BiteSample bite_search(const WarpedSurface& W, double rho, double v_cap,
                       const SublevelOptions& opt) {
  const double rel_tol = 1e-8;
  const double lo = 0.02 * M_PI, hi = 0.98 * M_PI;
  const int n = std::max(3, opt.bite_anchor_grid);

  BiteSample best;
  auto eval = [&](double beta) {
    int spent = 0;
    BiteSample s =
        bite_match_volume(W, rho, beta, v_cap, rel_tol, opt.bite_budget, spent);
    if (s.ok && (!best.ok || s.perimeter < best.perimeter)) best = s;
    return s.ok ? s.perimeter : std::numeric_limits<double>::infinity();
  };

  std::vector<double> betas(n), perims(n);
  for (int i = 0; i < n; ++i) {
    betas[i] = lo + (hi - lo) * i / (n - 1);
    perims[i] = eval(betas[i]);
  }
  int imin = int(std::min_element(perims.begin(), perims.end()) -
                 perims.begin());
  if (!best.ok) return best;

  double a = betas[std::max(0, imin - 1)];
  double b = betas[std::min(n - 1, imin + 1)];
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = eval(x1), f2 = eval(x2);
  for (int it = 0; it < opt.bite_refine_iters && b - a > 1e-5; ++it) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = eval(x1);
    }
  }
  return best;
}

}  // namespace

SublevelResult sublevel_profile_candidates(const WarpedSurface& W, double rho,
                                           double v,
                                           const SublevelOptions& opt) {
  if (!(rho > 0.0) || rho > W.t_num())
    throw DomainError("sublevel_profile_candidates: rho outside (0, T_num]");
  double vol_rho = W.pole_ball_volume(rho);
  if (!(v > 0.0) || v >= vol_rho * (1.0 - 1e-12))
    throw DomainError(
        "sublevel_profile_candidates: need 0 < v < |C_rho|");

  SublevelResult out;

  double R = W.pole_ball_radius(v);
  out.candidates.push_back(
      {CandidateKind::pole_disk, v, W.pole_ball_area(R), R, 0.0});

  // Interior ball: exact space-form value on constant-curvature surfaces.
  if (W.catalog() == Catalog::plane || W.catalog() == Catalog::hyperbolic) {
    SpaceForm sf{W.catalog() == Catalog::plane ? 0.0 : -1.0, 2};
    double s = inverse_volume(sf, v);
    if (s <= rho)
      out.candidates.push_back(
          {CandidateKind::interior_ball, v, space_form_profile(sf, v), s, 0.0});
  }

  double rest = vol_rho - v;
  double a = W.pole_ball_radius(rest);
  out.candidates.push_back({CandidateKind::complement_annulus, v,
                            W.pole_ball_area(rho) + W.pole_ball_area(a), a,
                            0.0});

  if (opt.include_bite) {
    BiteSample bite = bite_search(W, rho, rest, opt);
    if (bite.ok)
      out.candidates.push_back({CandidateKind::boundary_bite,
                                vol_rho - bite.cap, bite.perimeter, bite.kappa,
                                bite.beta});
    else
      out.bite_converged = false;
  }

  // Ties go to the earliest listed candidate, i.e. the pole disk.
  out.best = out.candidates.front();
  for (const auto& c : out.candidates)
    if (c.perimeter <
        out.best.perimeter - 1e-12 * std::max(1.0, out.best.perimeter))
      out.best = c;
  out.value = out.best.perimeter;
  return out;
}

InfOverRResult inf_over_r(const WarpedSurface& W, const ExhaustionSpec& spec,
                          double v, const std::vector<double>& r_schedule,
                          const SublevelOptions& opt) {
  if (r_schedule.empty())
    throw DomainError("inf_over_r: empty schedule");
  for (std::size_t i = 0; i + 1 < r_schedule.size(); ++i)
    if (!(r_schedule[i] < r_schedule[i + 1]))
      throw DomainError("inf_over_r: schedule must be strictly increasing");

  InfOverRResult out;
  out.curve.surface = W.name();
  out.curve.kind = "inf_over_r";
  out.value = std::numeric_limits<double>::infinity();

  for (double r : r_schedule) {
    double rho = sublevel_radius(spec, r);
    if (rho <= 0.0 || rho > W.t_num()) continue;
    if (v >= W.pole_ball_volume(rho) * (1.0 - 1e-9)) continue;
    SublevelResult sl = sublevel_profile_candidates(W, rho, v, opt);
    if (!out.curve.values.empty()) {
      double prev = out.curve.values.back();
      if (sl.value > prev + 1e-9 * std::max(1.0, prev)) out.monotone = false;
    }
    out.curve.grid.push_back(r);
    out.curve.values.push_back(sl.value);
    out.curve.witnesses.push_back(sl.best);
    if (sl.value < out.value) {
      out.value = sl.value;
      out.r_achieving = r;
    }
  }
  if (out.curve.values.empty())
    throw DomainError(
        "inf_over_r: v exceeds every scheduled sublevel volume; extend the "
        "r schedule upward");
  std::size_t m = out.curve.values.size();
  out.converged =
      m >= 2 && std::abs(out.curve.values[m - 1] - out.curve.values[m - 2]) <=
                    1e-8 * std::max(1.0, out.curve.values[m - 1]);
  return out;
}

std::vector<double> default_r_schedule(const WarpedSurface& W,
                                       const ExhaustionSpec& spec, double v,
                                       int levels) {
  if (levels < 2) throw DomainError("default_r_schedule: levels >= 2");
  double R_v = W.pole_ball_radius(v);
  double rad_max = std::min(4.0 * R_v, 0.995 * W.t_num());
  if (!(R_v < rad_max))
    throw DomainError("default_r_schedule: volume too large for the domain");
  std::vector<double> out;
  for (int i = 0; i < levels; ++i) {
    double rad = R_v * std::pow(rad_max / R_v, double(i) / (levels - 1));
    out.push_back(spec.value(rad));
  }
  return out;
}

CompensateResult truncate_and_compensate(const WarpedSurface& W,
                                         const SymmetricRegion& E, double rho,
                                         const CompensateContext& ctx) {
  if (!(rho > 0.0) || rho > W.t_num())
    throw DomainError("truncate_and_compensate: rho outside (0, T_num]");

  TruncateResult tr = region_truncate(W, E, rho);
  double vol_E = region_volume(W, E);
  double vol_tr = region_volume(W, tr.region);
  double deficit = vol_E - vol_tr;

  CompensateResult out;
  out.truncated = tr.region;
  out.deficit = deficit;
  if (deficit <= 1e-14 * std::max(1.0, vol_E)) {
    out.deficit = 0.0;
    out.volume = vol_E;
    out.perimeter_bound = region_perimeter(W, E);
    return out;
  }

  // Perimeter of the truncated part strictly inside the open ball.
  double perim_interior = 0.0;
  for (const auto& iv : tr.region.intervals()) {
    if (iv.a > 0.0 && iv.a < rho - 1e-14)
      perim_interior += W.pole_ball_area(iv.a);
    if (iv.b < rho - 1e-14) perim_interior += W.pole_ball_area(iv.b);
  }

  // Bounded set C_t with |C_t| > |E|; auto choice doubles the volume.
  double t = ctx.t;
  if (t <= 0.0) t = W.pole_ball_radius(2.0 * vol_E);
  if (2.0 * t > W.t_num())
    throw DomainError("truncate_and_compensate: C_2t leaves the domain");
  double vol_t = W.pole_ball_volume(t);
  if (!(vol_t > vol_E))
    throw DomainError("truncate_and_compensate: need |C_t| > |E|");

  PlacementScenario sc;
  sc.surface = &W;
  sc.E = tr.region;
  sc.b = t;
  sc.dD = 2.0 * t;
  sc.r0 = ctx.r0;
  sc.inj_override = ctx.inj_override;
  sc.validate();

  // Ball radius from the compensation display:
  // deficit = ((|C_t| - |E cap C_rho|) / |C_2t|) V_{delta(t),2}(s).
  SpaceForm sf{sc.delta(), 2};
  double target = deficit * sc.vol_D() / (vol_t - vol_tr);
  double cap = sc.admissible_cap();
  double s;
  try {
    s = inverse_volume(sf, target);
  } catch (const DomainError&) {
    throw DomainError(
        "truncate_and_compensate: deficit too large for an admissible "
        "compensating ball");
  }
  if (!(s < cap))
    throw DomainError(
        "truncate_and_compensate: deficit too large for an admissible "
        "compensating ball");

  WitnessResult wit =
      find_witness(sc, s, ctx.grid_density, ctx.mc_samples, ctx.seed);
  if (!wit.pass)
    throw ConvergenceError(
        "truncate_and_compensate: witness search exhausted its budget");

  // Prefer a center whose ball clears the truncated region: the free volume
  // is maximal there and the direction quadrature is kink-free, so the
  // radius solve below is exact.
  double edge_max = 0.0;
  for (const auto& iv : tr.region.intervals())
    edge_max = std::max(edge_max, iv.b);
  double center = wit.x_t;
  if (center < edge_max + s && edge_max + s <= sc.dD) {
    try {
      ball_minus_region_quad(W, edge_max + s, s, tr.region);
      center = edge_max + s;
    } catch (const DomainError&) {
    }
  }

  // Shrink the ball until it restores exactly the deficit volume.
  auto free_volume = [&](double r) {
    return ball_minus_region_quad(W, center, r, tr.region) - deficit;
  };
  double hi = s;
  while (free_volume(hi) < 0.0) {
    double next = std::min(1.25 * hi, 0.999 * cap);
    if (next <= hi)
      throw ConvergenceError(
          "truncate_and_compensate: admissible radii cannot restore the "
          "deficit at the witness");
    hi = next;
  }
  double s_star = solve_monotone(free_volume, 1e-9 * s, hi, 1e-10,
                                 1e-10 * std::max(1.0, deficit));

  out.ball_center_t = center;
  out.ball_radius = s_star;
  out.volume = vol_tr + deficit;

  // Bishop-side area comparison over the bounded set containing the ball.
  double kappa_low =
      W.curvature_inf(0.0, std::min(W.t_num(), 2.0 * t + ctx.r0));
  out.perimeter_bound = perim_interior + tr.slice_length +
                        ball_area(SpaceForm{kappa_low, 2}, s_star);
  return out;
}

ContinuityReport monotone_continuity_report(const ProfileCurve& coarse,
                                            const ProfileCurve& fine,
                                            double tol, double ratio_slack) {
  auto scan = [&](const ProfileCurve& c, ContinuityReport& rep, double& jump) {
    if (c.grid.size() < 2 || c.grid.size() != c.values.size())
      throw DomainError("monotone_continuity_report: malformed curve");
    jump = 0.0;
    for (std::size_t j = 0; j + 1 < c.grid.size(); ++j) {
      if (!(c.grid[j + 1] > c.grid[j]))
        throw DomainError(
            "monotone_continuity_report: grid must be strictly increasing");
      double d = c.values[j + 1] - c.values[j];
      if (d < -tol * std::max(1.0, std::abs(c.values[j]))) {
        rep.monotone = false;
        rep.worst_drop = std::min(rep.worst_drop, d);
      }
      jump = std::max(jump, std::abs(d));
    }
  };

  ContinuityReport rep;
  scan(coarse, rep, rep.max_jump_coarse);
  scan(fine, rep, rep.max_jump_fine);
  for (std::size_t j = 0; j + 1 < coarse.grid.size(); ++j)
    rep.modulus = std::max(
        rep.modulus, std::abs(coarse.values[j + 1] - coarse.values[j]) /
                         (coarse.grid[j + 1] - coarse.grid[j]));
  rep.jump_ratio = rep.max_jump_coarse > 0.0
                       ? rep.max_jump_fine / rep.max_jump_coarse
                       : 0.0;
  bool halves = rep.jump_ratio >= 0.5 - ratio_slack &&
                rep.jump_ratio <= 0.5 + ratio_slack;
  rep.pass = rep.monotone && halves;
  return rep;
}

bool check_strictly_increasing(const std::vector<double>& values,
                               double rel_tol) {
  for (std::size_t j = 0; j + 1 < values.size(); ++j)
    if (!(values[j + 1] - values[j] >
          rel_tol * std::max(1.0, std::abs(values[j]))))
      return false;
  return true;
}

StrictMonotonicityReport strict_monotonicity_check(
    const WarpedSurface& W, double rho, const std::vector<double>& v_grid,
    const SublevelOptions& opt) {
  StrictMonotonicityReport rep;
  for (std::size_t j = 0; j + 1 < v_grid.size(); ++j)
    if (!(v_grid[j] < v_grid[j + 1]))
      throw DomainError(
          "strict_monotonicity_check: v_grid must be strictly increasing");
  for (double v : v_grid)
    rep.values.push_back(sublevel_profile_candidates(W, rho, v, opt).value);
  rep.pass = true;
  for (std::size_t j = 0; j + 1 < rep.values.size(); ++j) {
    if (!(rep.values[j + 1] - rep.values[j] >
          1e-9 * std::max(1.0, rep.values[j]))) {
      rep.pass = false;
      rep.witness_v = v_grid[j + 1];
      break;
    }
  }
  return rep;
}

std::string profile_curve_csv(const ProfileCurve& curve) {
  std::ostringstream os;
  os << "# schema_version=1 surface=" << curve.surface
     << " kind=" << curve.kind << "\n";
  os << "v,I,kind,r,candidate,candidate_param\n";
  bool r_grid = curve.kind == "inf_over_r";
  for (std::size_t j = 0; j < curve.grid.size(); ++j) {
    double v = r_grid ? (j < curve.witnesses.size()
                             ? curve.witnesses[j].volume
                             : 0.0)
                      : curve.grid[j];
    double r = r_grid ? curve.grid[j] : curve.rho;
    std::string cand = "-";
    double param = 0.0;
    if (j < curve.witnesses.size()) {
      cand = candidate_kind_name(curve.witnesses[j].kind);
      param = curve.witnesses[j].param;
    }
    os << format_g12(v) << "," << format_g12(curve.values[j]) << ","
       << curve.kind << "," << format_g12(r) << "," << cand << ","
       << format_g12(param) << "\n";
  }
  return os.str();
}

}  // namespace isoprof
