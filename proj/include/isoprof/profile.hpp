#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isoprof/ball_placement.hpp"
#include "isoprof/exhaustion.hpp"
#include "isoprof/warped_surface.hpp"

namespace isoprof {

enum class CandidateKind {
  pole_disk,
  interior_ball,
  complement_annulus,
  boundary_bite,
};

std::string candidate_kind_name(CandidateKind k);

/// Candidate region inside a sublevel ball C_rho with its TOTAL perimeter
/// (boundary lying on the sublevel circle is counted; this is what makes the
/// sublevel profiles strictly increasing, unlike the relative profile).
struct CandidateRegion {
  CandidateKind kind = CandidateKind::pole_disk;
  double volume = 0.0;
  double perimeter = 0.0;
  double param = 0.0;   // radius / annulus inner radius / arc curvature
  double param2 = 0.0;  // bite entry angle
};

struct SublevelResult {
  double value = 0.0;
  CandidateRegion best;
  std::vector<CandidateRegion> candidates;
  bool bite_converged = true;  // false when the arc shooting found no bite
};

/// Sampled profile curve v -> I(v) with provenance.
struct ProfileCurve {
  std::string surface;
  std::string kind;  // disk_profile | sublevel_candidates | inf_over_r
  double rho = 0.0;  // sublevel radius when applicable
  std::vector<double> grid;    // volumes (or r levels for inf_over_r curves)
  std::vector<double> values;  // perimeters
  std::vector<CandidateRegion> witnesses;
};

/// Pole-disk upper-bound profile: perimeter of the pole ball of volume v.
/// Exact oracle in constant curvature.
ProfileCurve disk_profile(const WarpedSurface& W,
                          const std::vector<double>& v_grid);

struct SublevelOptions {
  bool include_bite = true;
  int bite_anchor_grid = 10;   // entry-angle grid size (even avoids the
                               // exactly radial diameter heading)
  int bite_budget = 200;       // arc shots per entry angle
  int bite_refine_iters = 14;  // golden-section refinement steps
};

/// Minimum total perimeter over the candidate families inside the pole ball
/// C_rho at volume v (0 < v < |C_rho|).
SublevelResult sublevel_profile_candidates(const WarpedSurface& W, double rho,
                                           double v,
                                           const SublevelOptions& opt = {});

struct InfOverRResult {
  double value = 0.0;
  double r_achieving = 0.0;
  bool converged = false;      // stabilized before the schedule ran out
  bool monotone = true;        // the feasible I_r sequence was non-increasing
  ProfileCurve curve;          // grid = r levels, values = I_r^cand(v)
};

/// Evaluates I_r^cand(v) along an increasing schedule of exhaustion levels
/// and returns the running infimum (the approximation of I_M(v)).
InfOverRResult inf_over_r(const WarpedSurface& W, const ExhaustionSpec& spec,
                          double v, const std::vector<double>& r_schedule,
                          const SublevelOptions& opt = {});

/// Default schedule: geometrically spaced levels whose sublevel radii run
/// from the radius of the volume-v pole disk up to 4x that radius.
std::vector<double> default_r_schedule(const WarpedSurface& W,
                                       const ExhaustionSpec& spec, double v,
                                       int levels = 32);

struct CompensateContext {
  double t = -1.0;    // bounded-set level: |C_t| must exceed |E| (< 0: auto)
  double r0 = 1.0;
  double inj_override = -1.0;
  int grid_density = 33;
  int mc_samples = 20000;
  std::uint64_t seed = 1;
};

struct CompensateResult {
  SymmetricRegion truncated;   // E intersected with C_rho
  double deficit = 0.0;        // |E| - |E cap C_rho|
  double ball_center_t = 0.0;
  double ball_radius = 0.0;    // s*, sized so |F| = |E|
  double volume = 0.0;         // |F|
  double perimeter_bound = 0.0;  // certified upper bound for P(F)
};

/// Truncate-and-compensate construction: replaces E by
/// F = (E cap C_rho) union B*, where B* restores the truncated volume and
/// the perimeter certificate is
/// P(E, int C_rho) + slice + (Bishop-side area bound for B*).
CompensateResult truncate_and_compensate(const WarpedSurface& W,
                                         const SymmetricRegion& E, double rho,
                                         const CompensateContext& ctx = {});

struct ContinuityReport {
  bool monotone = true;
  double worst_drop = 0.0;       // most negative forward difference
  double max_jump_coarse = 0.0;
  double max_jump_fine = 0.0;
  double jump_ratio = 0.0;       // fine / coarse
  double modulus = 0.0;          // max |dI| / |dv| on the coarse grid
  bool pass = false;
};

/// Non-decreasing check plus a two-level refinement test: the maximum jump
/// of the fine curve should be about half the coarse one.
ContinuityReport monotone_continuity_report(const ProfileCurve& coarse,
                                            const ProfileCurve& fine,
                                            double tol = 1e-9,
                                            double ratio_slack = 0.30);

/// Strict monotonicity of a value sequence with relative tolerance.
bool check_strictly_increasing(const std::vector<double>& values,
                               double rel_tol = 1e-9);

struct StrictMonotonicityReport {
  bool pass = false;
  std::vector<double> values;
  double witness_v = 0.0;  // first offending volume on failure
};

/// Strict monotonicity of the sublevel candidate profile on a volume grid.
StrictMonotonicityReport strict_monotonicity_check(
    const WarpedSurface& W, double rho, const std::vector<double>& v_grid,
    const SublevelOptions& opt = {});

/// CSV emission: one row per grid point, `v, I, kind, r, candidate,
/// candidate_param`, with a versioned `#` header line.
std::string profile_curve_csv(const ProfileCurve& curve);

}  // namespace isoprof
