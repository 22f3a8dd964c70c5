#include "isoprof/monotone_limits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace isoprof {

void MonotoneFamily::validate(double tol) const {
  if (x_grid.size() < 2 || rows.empty())
    throw DomainError("MonotoneFamily: need >= 2 grid points and >= 1 row");
  for (std::size_t j = 0; j + 1 < x_grid.size(); ++j)
    if (!(x_grid[j] < x_grid[j + 1]))
      throw DomainError("MonotoneFamily: grid must be strictly increasing");
  for (const auto& row : rows) {
    if (row.size() != x_grid.size())
      throw DomainError("MonotoneFamily: row length mismatch");
    for (std::size_t j = 0; j + 1 < row.size(); ++j)
      if (row[j + 1] < row[j] - tol)
        throw DomainError("MonotoneFamily: row not non-decreasing");
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    for (std::size_t j = 0; j < x_grid.size(); ++j)
      if (rows[i + 1][j] > rows[i][j] + tol)
        throw DomainError("MonotoneFamily: rows must be non-increasing in i");
}

SampledLimit pointwise_limit(const MonotoneFamily& fam,
                             double tail_tolerance) {
  fam.validate();
  SampledLimit out;
  out.x_grid = fam.x_grid;
  out.values = fam.rows.back();
  std::size_t m = fam.rows.size();
  for (std::size_t j = 0; j < fam.x_grid.size(); ++j) {
    double tail =
        m >= 2 ? std::abs(fam.rows[m - 1][j] - fam.rows[m - 2][j]) : 0.0;
    out.tail.push_back(tail);
    out.tail_ok.push_back(tail <= tail_tolerance);
  }
  return out;
}

double remark_family(int i, double x) {
  if (i < 1) throw DomainError("remark_family: i >= 1");
  if (x >= 0.0) return 1.0;
  if (x <= -1.0 / i) return 0.0;
  return 1.0 + i * x;
}

MonotoneFamily build_remark_family(int m, int grid_points, double a,
                                   double b) {
  if (m < 1 || grid_points < 2)
    throw DomainError("build_remark_family: m >= 1, grid_points >= 2");
  MonotoneFamily fam;
  for (int j = 0; j < grid_points; ++j)
    fam.x_grid.push_back(a + (b - a) * j / (grid_points - 1));
  for (int i = 1; i <= m; ++i) {
    std::vector<double> row;
    for (double x : fam.x_grid) row.push_back(remark_family(i, x));
    fam.rows.push_back(std::move(row));
  }
  return fam;
}

namespace {

double sample_nearest(const SampledLimit& g, double x) {
  auto it = std::lower_bound(g.x_grid.begin(), g.x_grid.end(), x);
  if (it == g.x_grid.begin()) return g.values.front();
  if (it == g.x_grid.end()) return g.values.back();
  std::size_t j = it - g.x_grid.begin();
  // Ties go right so probing a jump point of a right-continuous sampled
  // function reads the right-hand value.
  return (x - g.x_grid[j - 1] < g.x_grid[j] - x) ? g.values[j - 1]
                                                 : g.values[j];
}

}  // namespace

ContinuityProbeReport right_continuity_check(
    const SampledLimit& g, double x0, const std::vector<double>& probe_radii,
    int side, double tolerance) {
  if (g.x_grid.size() != g.values.size() || g.x_grid.size() < 2)
    throw DomainError("right_continuity_check: malformed sampled function");
  if (x0 <= g.x_grid.front() || x0 >= g.x_grid.back())
    throw DomainError("right_continuity_check: x0 must be interior");
  if (side != 1 && side != -1)
    throw DomainError("right_continuity_check: side must be +1 or -1");
  for (std::size_t k = 0; k + 1 < probe_radii.size(); ++k)
    if (!(probe_radii[k] > probe_radii[k + 1]) || probe_radii[k + 1] <= 0.0)
      throw DomainError(
          "right_continuity_check: probes must be positive decreasing");

  ContinuityProbeReport rep;
  rep.x0 = x0;
  rep.g0 = sample_nearest(g, x0);
  for (double h : probe_radii) {
    double x = x0 + side * h;
    if (x <= g.x_grid.front() || x >= g.x_grid.back()) continue;
    rep.probes.push_back(side * h);
    rep.gaps.push_back(std::abs(sample_nearest(g, x) - rep.g0));
  }
  if (rep.gaps.empty())
    throw DomainError("right_continuity_check: no probe lands in the grid");
  rep.final_gap = rep.gaps.back();
  rep.pass = rep.final_gap <= tolerance * std::max(1.0, std::abs(rep.g0));
  return rep;
}

std::vector<double> geometric_probes(double h0, int count) {
  if (!(h0 > 0.0) || count < 1)
    throw DomainError("geometric_probes: h0 > 0 and count >= 1");
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(h0 * std::pow(2.0, -k));
  return out;
}

MonotoneFamily family_from_csv(const std::string& csv) {
  MonotoneFamily fam;
  std::istringstream is(csv);
  std::string line;
  bool have_grid = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw DomainError("family_from_csv: non-numeric cell '" + cell + "'");
      }
    }
    if (vals.empty()) continue;
    if (!have_grid) {
      fam.x_grid = std::move(vals);
      have_grid = true;
    } else {
      fam.rows.push_back(std::move(vals));
    }
  }
  fam.validate();
  return fam;
}

}  // namespace isoprof
