#pragma once

#include <string>
#include <vector>

#include "isoprof/numerics.hpp"

namespace isoprof {

/// Sampled family f_i(x_j): rows indexed by i on a strictly increasing grid.
/// Each row must be non-decreasing in j, and rows non-increasing in i
/// pointwise.
struct MonotoneFamily {
  std::vector<double> x_grid;
  std::vector<std::vector<double>> rows;

  void validate(double tol = 1e-12) const;
};

/// Sampled function with a per-point Cauchy-tail estimate |f_m - f_{m-1}|.
struct SampledLimit {
  std::vector<double> x_grid;
  std::vector<double> values;
  std::vector<double> tail;
  std::vector<bool> tail_ok;
};

/// Last row of the family plus the tail estimate; points whose tail exceeds
/// tail_tolerance are flagged.
SampledLimit pointwise_limit(const MonotoneFamily& fam,
                             double tail_tolerance = 1e-6);

/// The counterexample family: 1 for x >= 0, 1 + i x on [-1/i, 0], 0 below.
/// Its limit is the characteristic function of [0, inf), right- but not
/// left-continuous at 0.
double remark_family(int i, double x);

/// Builds the counterexample family on a uniform grid over [a, b].
MonotoneFamily build_remark_family(int m, int grid_points, double a = -1.0,
                                   double b = 1.0);

struct ContinuityProbeReport {
  bool pass = false;
  double x0 = 0.0;
  double g0 = 0.0;
  std::vector<double> probes;  // offsets actually probed (signed)
  std::vector<double> gaps;    // |g(x0 + h) - g(x0)|
  double final_gap = 0.0;
};

/// Checks g(x0 + h_k) -> g(x0) along decreasing probe radii by nearest-grid
/// sampling; side = +1 probes from the right, -1 from the left.
ContinuityProbeReport right_continuity_check(
    const SampledLimit& g, double x0, const std::vector<double>& probe_radii,
    int side = +1, double tolerance = 1e-6);

/// Default geometric probes h0 * 2^{-k}, k = 0..count-1.
std::vector<double> geometric_probes(double h0, int count = 12);

/// Parses a CSV matrix: first row the x grid, following rows the f_i values.
/// Lines starting with '#' are skipped.
MonotoneFamily family_from_csv(const std::string& csv);

}  // namespace isoprof
