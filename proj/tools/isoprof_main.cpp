#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "isoprof/config.hpp"
#include "isoprof/exhaustion.hpp"
#include "isoprof/io.hpp"
#include "isoprof/monotone_limits.hpp"
#include "isoprof/profile.hpp"
#include "isoprof/space_form.hpp"
#include "isoprof/verify.hpp"

namespace {

using namespace isoprof;

/// Resolves relative output paths against ISOPROF_OUT_DIR when set.
std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("ISOPROF_OUT_DIR");
  if (!dir || path.empty() || path.front() == '/') return path;
  return std::string(dir) + "/" + path;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(resolve_out(out_path), content);
}

WarpedSurface load_surface(const std::string& name,
                           const std::string& config_path) {
  if (!config_path.empty())
    return surface_from_json(read_text_file(config_path));
  return WarpedSurface::make(catalog_from_name(name));
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

int run(int argc, char** argv) {
  CLI::App app{
      "isoprof: isoperimetric-profile toolkit for rotationally symmetric "
      "surfaces"};
  app.require_subcommand(1);

  // ---- spaceform ----
  auto* sf_cmd = app.add_subcommand(
      "spaceform", "Tables of model ball volume, area and profile");
  double sf_delta = 0.0;
  double sf_rmin = 0.1, sf_rmax = 1.0;
  int sf_n = 2, sf_points = 20;
  std::string sf_out;
  sf_cmd->add_option("--delta", sf_delta, "Constant curvature");
  sf_cmd->add_option("--n", sf_n, "Dimension")->check(CLI::Range(2, 16));
  sf_cmd->add_option("--rmin", sf_rmin, "Smallest radius");
  sf_cmd->add_option("--rmax", sf_rmax, "Largest radius");
  sf_cmd->add_option("--points", sf_points, "Grid size")
      ->check(CLI::Range(2, 100000));
  sf_cmd->add_option("--out", sf_out, "Output path (default stdout)");

  // ---- surface ----
  auto* su_cmd = app.add_subcommand(
      "surface", "Curvature and volume tables for a warped surface");
  std::string su_name = "plane", su_config, su_out;
  double su_tmin = 0.0, su_tmax = 2.0;
  int su_points = 21;
  su_cmd->add_option("--surface", su_name,
                     "Catalog name: plane|hyperbolic|cigar|flare");
  su_cmd->add_option("--config", su_config, "Surface JSON config");
  su_cmd->add_option("--tmin", su_tmin, "Smallest radius");
  su_cmd->add_option("--tmax", su_tmax, "Largest radius");
  su_cmd->add_option("--points", su_points, "Grid size")
      ->check(CLI::Range(2, 100000));
  su_cmd->add_option("--out", su_out, "Output path (default stdout)");

  // ---- exhaustion ----
  auto* ex_cmd = app.add_subcommand(
      "exhaustion", "Convexity report for the square-root exhaustion");
  std::string ex_name = "hyperbolic", ex_config, ex_out;
  int ex_geodesics = 100;
  std::uint64_t ex_seed = 0;
  ex_cmd->add_option("--surface", ex_name, "Catalog name");
  ex_cmd->add_option("--config", ex_config, "Surface JSON config");
  ex_cmd->add_option("--geodesics", ex_geodesics, "Sampled geodesics")
      ->check(CLI::Range(1, 100000));
  ex_cmd->add_option("--seed", ex_seed, "RNG seed")->required();
  ex_cmd->add_option("--out", ex_out, "Output path (default stdout)");

  // ---- placement ----
  auto* pl_cmd =
      app.add_subcommand("placement", "Ball-placement witness run");
  std::string pl_config, pl_out;
  double pl_r = 0.5;
  int pl_grid = 33, pl_samples = 100000;
  std::uint64_t pl_seed = 0;
  bool pl_fubini = false;
  pl_cmd->add_option("--config", pl_config, "Scenario JSON")->required();
  pl_cmd->add_option("--r", pl_r, "Ball radius")->required();
  pl_cmd->add_option("--grid", pl_grid, "Radial grid density")
      ->check(CLI::Range(2, 100000));
  pl_cmd->add_option("--samples", pl_samples, "MC samples per estimate")
      ->check(CLI::Range(100, 100000000));
  pl_cmd->add_option("--seed", pl_seed, "RNG seed")->required();
  pl_cmd->add_flag("--fubini", pl_fubini, "Also run the averaging check");
  pl_cmd->add_option("--out", pl_out, "Output path (default stdout)");

  // ---- profile ----
  auto* pr_cmd = app.add_subcommand("profile", "Profile curve sweeps");
  std::string pr_name = "plane", pr_config, pr_kind = "disk", pr_out;
  double pr_vmin = 0.1, pr_vmax = 10.0, pr_rho = 1.0;
  int pr_points = 50, pr_levels = 32;
  bool pr_no_bite = false;
  pr_cmd->add_option("--surface", pr_name, "Catalog name");
  pr_cmd->add_option("--config", pr_config, "Surface JSON config");
  pr_cmd->add_option("--kind", pr_kind, "disk | sublevel | infr");
  pr_cmd->add_option("--vmin", pr_vmin, "Smallest volume");
  pr_cmd->add_option("--vmax", pr_vmax, "Largest volume");
  pr_cmd->add_option("--points", pr_points, "Volume grid size")
      ->check(CLI::Range(2, 100000));
  pr_cmd->add_option("--rho", pr_rho, "Sublevel-set radius (kind=sublevel)");
  pr_cmd->add_option("--r-levels", pr_levels, "Schedule length (kind=infr)")
      ->check(CLI::Range(2, 1000));
  pr_cmd->add_flag("--no-bite", pr_no_bite, "Skip the boundary-bite family");
  pr_cmd->add_option("--out", pr_out, "Output path (default stdout)");

  // ---- limits ----
  auto* li_cmd =
      app.add_subcommand("limits", "Monotone-limit continuity checks");
  std::string li_demo, li_csv, li_out;
  double li_x0 = 0.0;
  li_cmd->add_option("--demo", li_demo, "Built-in demo: remark");
  li_cmd->add_option("--csv", li_csv, "CSV matrix: grid row, then f_i rows");
  li_cmd->add_option("--x0", li_x0, "Probe point");
  li_cmd->add_option("--out", li_out, "Output path (default stdout)");

  // ---- verify-all ----
  auto* va_cmd =
      app.add_subcommand("verify-all", "Run every module invariant suite");
  std::uint64_t va_seed = 0;
  std::string va_out;
  va_cmd->add_option("--seed", va_seed, "RNG seed")->required();
  va_cmd->add_option("--out", va_out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (sf_cmd->parsed()) {
    SpaceForm sf{sf_delta, sf_n};
    std::ostringstream os;
    os << "# schema_version=1 delta=" << format_g12(sf_delta)
       << " n=" << sf_n << "\n";
    os << "r,volume,area,profile\n";
    for (int i = 0; i < sf_points; ++i) {
      double r = sf_rmin + (sf_rmax - sf_rmin) * i / (sf_points - 1);
      double v = ball_volume(sf, r);
      // The profile column is the 2-dimensional model profile at the
      // 2-dimensional ball volume for this radius.
      double v2 = sf_n == 2 ? v : ball_volume(SpaceForm{sf_delta, 2}, r);
      os << format_g12(r) << "," << format_g12(v) << ","
         << format_g12(ball_area(sf, r)) << ","
         << format_g12(space_form_profile(SpaceForm{sf_delta, 2}, v2)) << "\n";
    }
    emit(sf_out, os.str());
    return 0;
  }

  if (su_cmd->parsed()) {
    WarpedSurface W = load_surface(su_name, su_config);
    std::ostringstream os;
    os << "# schema_version=1 surface=" << W.name() << "\n";
    os << "t,phi,K,volume,area\n";
    for (int i = 0; i < su_points; ++i) {
      double t = su_tmin + (su_tmax - su_tmin) * i / (su_points - 1);
      os << format_g12(t) << "," << format_g12(W.phi(t)) << ","
         << format_g12(W.gauss_curvature(t)) << ","
         << format_g12(W.pole_ball_volume(t)) << ","
         << format_g12(W.pole_ball_area(t)) << "\n";
    }
    emit(su_out, os.str());
    return 0;
  }

  if (ex_cmd->parsed()) {
    WarpedSurface W = load_surface(ex_name, ex_config);
    ExhaustionSpec spec = build_sqrt_exhaustion(W);
    ConvexityOptions opt;
    opt.geodesics = ex_geodesics;
    opt.seed = ex_seed;
    ConvexityReport rep = verify_strict_convexity(spec, opt);
    std::vector<double> grid;
    for (int i = 0; i <= 18; ++i) grid.push_back(1.0 + 0.5 * i);
    ConvexityReport gw = greene_wu_sandwich(spec, grid);
    std::ostringstream os;
    os << "{\n  \"schema_version\": 1,\n"
       << "  \"L\": " << format_g12(rep.lipschitz_constant) << ",\n"
       << "  \"K\": " << format_g12(gw.sandwich_constant) << ",\n"
       << "  \"min_hessian_margin\": " << format_g12(rep.min_hessian_margin)
       << ",\n"
       << "  \"geodesic_count\": " << rep.geodesic_count << ",\n"
       << "  \"pass\": " << bool_json(rep.pass && gw.pass) << "\n}\n";
    emit(ex_out, os.str());
    return (rep.pass && gw.pass) ? 0 : 2;
  }

  if (pl_cmd->parsed()) {
    std::string text = read_text_file(pl_config);
    WarpedSurface W = surface_from_json(scenario_surface_json(text));
    PlacementScenario sc = scenario_from_json(text, W);
    WitnessResult w = find_witness(sc, pl_r, pl_grid, pl_samples, pl_seed);
    bool pass = w.pass;
    std::ostringstream os;
    os << "{\n  \"schema_version\": 1,\n"
       << "  \"x_t\": " << format_g12(w.x_t) << ",\n"
       << "  \"x_theta\": " << format_g12(w.x_theta) << ",\n"
       << "  \"measured\": " << format_g12(w.measured) << ",\n"
       << "  \"sigma\": " << format_g12(w.sigma) << ",\n"
       << "  \"lambda\": " << format_g12(w.lambda) << ",\n"
       << "  \"pass\": " << bool_json(w.pass);
    if (pl_fubini) {
      FubiniResult f = fubini_average_check(sc, pl_r, pl_grid * 10,
                                            pl_samples / 50, pl_seed + 1);
      pass = pass && f.pass;
      os << ",\n  \"fubini_mean\": " << format_g12(f.mean)
         << ",\n  \"fubini_sigma\": " << format_g12(f.sigma)
         << ",\n  \"fubini_pass\": " << bool_json(f.pass);
    }
    os << "\n}\n";
    emit(pl_out, os.str());
    return pass ? 0 : 2;
  }

  if (pr_cmd->parsed()) {
    WarpedSurface W = load_surface(pr_name, pr_config);
    std::vector<double> v_grid;
    for (int i = 0; i < pr_points; ++i)
      v_grid.push_back(pr_vmin +
                       (pr_vmax - pr_vmin) * i / (pr_points - 1));
    SublevelOptions opt;
    opt.include_bite = !pr_no_bite;
    ProfileCurve curve;
    if (pr_kind == "disk") {
      curve = disk_profile(W, v_grid);
    } else if (pr_kind == "sublevel") {
      curve.surface = W.name();
      curve.kind = "sublevel_candidates";
      curve.rho = pr_rho;
      for (double v : v_grid) {
        SublevelResult r = sublevel_profile_candidates(W, pr_rho, v, opt);
        curve.grid.push_back(v);
        curve.values.push_back(r.value);
        curve.witnesses.push_back(r.best);
      }
    } else if (pr_kind == "infr") {
      ExhaustionSpec spec = build_sqrt_exhaustion(W);
      // One curve over r at the mid volume, per the inf_over_r contract.
      double v = 0.5 * (pr_vmin + pr_vmax);
      auto sched = default_r_schedule(W, spec, v, pr_levels);
      curve = inf_over_r(W, spec, v, sched, opt).curve;
    } else {
      throw DomainError("profile: --kind must be disk, sublevel or infr");
    }
    emit(pr_out, profile_curve_csv(curve));
    return 0;
  }

  if (li_cmd->parsed()) {
    MonotoneFamily fam;
    if (li_demo == "remark")
      fam = build_remark_family(1200, 1001);
    else if (!li_csv.empty())
      fam = family_from_csv(read_text_file(li_csv));
    else
      throw DomainError("limits: need --demo remark or --csv <file>");
    SampledLimit lim = pointwise_limit(fam, 1e-2);
    auto probes = geometric_probes(0.25, 8);
    ContinuityProbeReport right =
        right_continuity_check(lim, li_x0, probes, +1);
    ContinuityProbeReport left =
        right_continuity_check(lim, li_x0, probes, -1);
    std::ostringstream os;
    os << "{\n  \"schema_version\": 1,\n"
       << "  \"x0\": " << format_g12(li_x0) << ",\n"
       << "  \"limit_at_x0\": " << format_g12(right.g0) << ",\n"
       << "  \"right_gap\": " << format_g12(right.final_gap) << ",\n"
       << "  \"right_pass\": " << bool_json(right.pass) << ",\n"
       << "  \"left_gap\": " << format_g12(left.final_gap) << ",\n"
       << "  \"left_pass\": " << bool_json(left.pass) << "\n}\n";
    emit(li_out, os.str());
    return 0;
  }

  if (va_cmd->parsed()) {
    auto suites = verify_all(va_seed);
    emit(va_out, verify_report_json(suites, va_seed));
    for (const auto& s : suites)
      if (!s.pass) return 2;
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const isoprof::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const isoprof::ConvergenceError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
