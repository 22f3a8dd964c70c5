#include "isoprof/warped_surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace isoprof {

std::string catalog_name(Catalog c) {
  switch (c) {
    case Catalog::plane: return "plane";
    case Catalog::hyperbolic: return "hyperbolic";
    case Catalog::cigar: return "cigar";
    case Catalog::flare: return "flare";
    default: return "custom";
  }
}

Catalog catalog_from_name(const std::string& name) {
  if (name == "plane") return Catalog::plane;
  if (name == "hyperbolic") return Catalog::hyperbolic;
  if (name == "cigar") return Catalog::cigar;
  if (name == "flare") return Catalog::flare;
  if (name == "custom") return Catalog::custom;
  throw DomainError("unknown catalog surface '" + name + "'");
}

namespace {

Warp catalog_warp(Catalog c) {
  switch (c) {
    case Catalog::plane:
      return {[](double t) { return t; }, [](double) { return 1.0; },
              [](double) { return 0.0; }, 0.0};
    case Catalog::hyperbolic:
      return {[](double t) { return std::sinh(t); },
              [](double t) { return std::cosh(t); },
              [](double t) { return std::sinh(t); }, 1.0};
    case Catalog::cigar:
      return {[](double t) { return std::tanh(t); },
              [](double t) {
                double c = std::cosh(t);
                return 1.0 / (c * c);
              },
              [](double t) {
                double c = std::cosh(t);
                return -2.0 * std::tanh(t) / (c * c);
              },
              -2.0};
    case Catalog::flare:
      return {[](double t) { return t + t * t * t * std::exp(t * t); },
              [](double t) {
                double t2 = t * t;
                return 1.0 + (3.0 * t2 + 2.0 * t2 * t2) * std::exp(t2);
              },
              [](double t) {
                double t2 = t * t;
                return (6.0 * t + 14.0 * t2 * t + 4.0 * t2 * t2 * t) *
                       std::exp(t2);
              },
              6.0};
    default:
      throw DomainError("catalog_warp: custom surfaces need a Warp");
  }
}

double default_t_num(Catalog c) {
  switch (c) {
    case Catalog::plane: return 50.0;
    case Catalog::hyperbolic: return 25.0;
    case Catalog::cigar: return 50.0;
    case Catalog::flare: return 3.5;
    default: return 10.0;
  }
}

constexpr double kPoleSeries = 1e-6;

}  // namespace

WarpedSurface WarpedSurface::make(Catalog c, double t_num) {
  if (c == Catalog::custom)
    throw DomainError("WarpedSurface::make: use custom() for custom warps");
  return WarpedSurface(c, catalog_warp(c),
                       t_num > 0.0 ? t_num : default_t_num(c));
}

WarpedSurface WarpedSurface::custom(Warp warp, double t_num) {
  if (!(t_num > 0.0)) throw DomainError("custom surface: T_num must be > 0");
  if (std::abs(warp.phi(0.0)) > 1e-12 ||
      std::abs(warp.dphi(0.0) - 1.0) > 1e-12)
    throw DomainError("custom surface: need phi(0) = 0 and phi'(0) = 1");
  if (warp.dddphi0 == 0.0) {
    // phi''(0) = 0 at a smooth pole, so phi'''(0) ~ phi''(h)/h.
    double h = 1e-4;
    warp.dddphi0 = warp.ddphi(h) / h;
  }
  for (double t = t_num / 64.0; t <= t_num; t += t_num / 64.0)
    if (!(warp.phi(t) > 0.0))
      throw DomainError("custom surface: phi must be positive on (0, T_num]");
  return WarpedSurface(Catalog::custom, std::move(warp), t_num);
}

void WarpedSurface::check_t(double t) const {
  if (!(t >= 0.0) || t > t_num_)
    throw DomainError("radial coordinate " + std::to_string(t) +
                      " outside [0, " + std::to_string(t_num_) + "]");
}

double WarpedSurface::gauss_curvature(double t) const {
  check_t(t);
  if (t < kPoleSeries) return -warp_.dddphi0;
  return -warp_.ddphi(t) / warp_.phi(t);
}

namespace {

double scan_extremum(const std::function<double(double)>& f, double a,
                     double b, bool want_max) {
  if (b < a) std::swap(a, b);
  if (b - a < 1e-15) return f(a);
  const int n = 2048;
  double best = -std::numeric_limits<double>::infinity();
  int best_i = 0;
  for (int i = 0; i <= n; ++i) {
    double t = a + (b - a) * i / n;
    double v = f(t);
    double signedv = want_max ? v : -v;
    if (signedv > best) {
      best = signedv;
      best_i = i;
    }
  }
  // Golden-section refinement around the best sample.
  double lo = a + (b - a) * std::max(0, best_i - 1) / n;
  double hi = a + (b - a) * std::min(n, best_i + 1) / n;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = want_max ? f(x1) : -f(x1), f2 = want_max ? f(x2) : -f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = want_max ? f(x2) : -f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = want_max ? f(x1) : -f(x1);
    }
  }
  double v = std::max({best, f1, f2});
  return want_max ? v : -v;
}

}  // namespace

double WarpedSurface::curvature_sup(double a, double b) const {
  if (b < a) std::swap(a, b);
  a = std::max(a, 0.0);
  b = std::min(b, t_num_);
  if (!(b >= a)) throw DomainError("curvature_sup: empty region");
  return scan_extremum([this](double t) { return gauss_curvature(t); }, a, b,
                       true);
}

double WarpedSurface::curvature_inf(double a, double b) const {
  if (b < a) std::swap(a, b);
  a = std::max(a, 0.0);
  b = std::min(b, t_num_);
  if (!(b >= a)) throw DomainError("curvature_inf: empty region");
  return scan_extremum([this](double t) { return gauss_curvature(t); }, a, b,
                       false);
}

double WarpedSurface::pole_ball_volume(double R) const {
  if (R == 0.0) return 0.0;
  check_t(R);
  return 2.0 * M_PI *
         integrate([this](double t) { return warp_.phi(t); }, 0.0, R, 1e-13,
                   1e-12);
}

double WarpedSurface::pole_ball_area(double R) const {
  check_t(R);
  return 2.0 * M_PI * warp_.phi(R);
}

double WarpedSurface::pole_ball_radius(double v) const {
  if (!(v > 0.0)) throw DomainError("pole_ball_radius: volume must be > 0");
  double total = pole_ball_volume(t_num_);
  if (v > total)
    throw DomainError("pole_ball_radius: volume exceeds numerical domain");
  return solve_monotone([this, v](double R) { return pole_ball_volume(R) - v; },
                        0.0, t_num_, 1e-14, 1e-11 * std::max(1.0, v),
                        [this](double R) { return pole_ball_area(R); });
}

// ---- regions ----

SymmetricRegion::SymmetricRegion(std::vector<Interval> intervals) {
  for (const auto& iv : intervals) {
    if (!(iv.a >= 0.0) || !(iv.b >= iv.a))
      throw DomainError("SymmetricRegion: invalid interval");
    if (iv.b > iv.a) intervals_.push_back(iv);  // degenerate dropped
  }
  for (std::size_t k = 1; k < intervals_.size(); ++k)
    if (!(intervals_[k].a > intervals_[k - 1].b))
      throw DomainError("SymmetricRegion: intervals must be ordered with "
                        "positive gaps");
}

bool SymmetricRegion::contains(double t) const {
  for (const auto& iv : intervals_)
    if (t >= iv.a && t <= iv.b) return true;
  return false;
}

double SymmetricRegion::outer_radius() const {
  return intervals_.empty() ? 0.0 : intervals_.back().b;
}

double region_volume(const WarpedSurface& W, const SymmetricRegion& S) {
  double v = 0.0;
  for (const auto& iv : S.intervals())
    v += W.pole_ball_volume(iv.b) - W.pole_ball_volume(iv.a);
  return v;
}

double region_perimeter(const WarpedSurface& W, const SymmetricRegion& S) {
  double p = 0.0;
  for (const auto& iv : S.intervals()) {
    if (iv.a > 0.0) p += 2.0 * M_PI * W.phi(iv.a);
    p += 2.0 * M_PI * W.phi(iv.b);
  }
  return p;
}

TruncateResult region_truncate(const WarpedSurface& W, const SymmetricRegion& S,
                               double rho) {
  if (!(rho > 0.0) || rho > W.t_num())
    throw DomainError("region_truncate: rho outside (0, T_num]");
  TruncateResult out;
  std::vector<Interval> kept;
  for (const auto& iv : S.intervals()) {
    if (iv.b <= rho) {
      kept.push_back(iv);
    } else if (iv.a < rho) {
      kept.push_back({iv.a, rho});
      out.slice_length = 2.0 * M_PI * W.phi(rho);
    }
  }
  out.region = SymmetricRegion(kept);
  return out;
}

// ---- geodesics ----

namespace {

// Analytic radial path with reflection through the pole. Returns final
// radius; theta_flip set when the pole was crossed.
double radial_at(double t0, double dir, double s, bool& theta_flip) {
  double t = t0 + dir * s;
  theta_flip = false;
  if (t < 0.0) {
    t = -t;
    theta_flip = true;
  }
  return t;
}

}  // namespace

std::vector<GeodesicState> geodesic_integrate(const WarpedSurface& W,
                                              const GeodesicState& start,
                                              double length, double rel_tol) {
  double speed2 = start.vt * start.vt +
                  W.phi(start.t) * W.phi(start.t) * start.vtheta * start.vtheta;
  if (std::abs(speed2 - 1.0) > 1e-6)
    throw DomainError("geodesic_integrate: start must be unit speed");

  std::vector<GeodesicState> traj;
  traj.push_back(start);

  if (start.vtheta == 0.0) {
    // Radial geodesic: straight line through the pole.
    int n = std::max(16, static_cast<int>(length / 0.05));
    for (int k = 1; k <= n; ++k) {
      double s = length * k / n;
      bool flip;
      double t = radial_at(start.t, start.vt, s, flip);
      if (t > W.t_num())
        throw DomainError("geodesic exits numerical domain [0, T_num]");
      GeodesicState g;
      g.t = t;
      g.theta = start.theta + (flip ? M_PI : 0.0);
      g.vt = flip ? -start.vt : start.vt;
      g.vtheta = 0.0;
      g.arc_length = start.arc_length + s;
      traj.push_back(g);
    }
    return traj;
  }

  std::array<double, 4> y{start.t, start.theta, start.vt, start.vtheta};
  OdeRhs<4> rhs = [&W](double, const std::array<double, 4>& y,
                       std::array<double, 4>& dy) {
    double p = W.phi(y[0]), dp = W.dphi(y[0]);
    dy[0] = y[2];
    dy[1] = y[3];
    dy[2] = p * dp * y[3] * y[3];
    dy[3] = -2.0 * (dp / p) * y[2] * y[3];
  };
  double t_cap = W.t_num();
  OdeObserver<4> obs = [&](double s, const std::array<double, 4>& y) {
    if (y[0] > t_cap)
      throw DomainError("geodesic exits numerical domain [0, T_num]");
    GeodesicState g;
    g.t = y[0];
    g.theta = y[1];
    g.vt = y[2];
    g.vtheta = y[3];
    g.arc_length = start.arc_length + s;
    traj.push_back(g);
  };
  integrate_ode<4>(rhs, y, 0.0, length, rel_tol, 1e-12, obs);
  return traj;
}

std::vector<double> radial_trace(const WarpedSurface& W, double t0,
                                 double psi0, double length, double h) {
  int n = static_cast<int>(std::round(length / h));
  std::vector<double> out;
  out.reserve(n + 1);
  out.push_back(t0);

  double sinp = std::sin(psi0), cosp = std::cos(psi0);
  if (t0 < 1e-12 || std::abs(sinp) < 1e-8) {
    double dir = (t0 < 1e-12) ? 1.0 : (cosp >= 0.0 ? 1.0 : -1.0);
    for (int k = 1; k <= n; ++k) {
      bool flip;
      double t = radial_at(t0, dir, k * h, flip);
      if (t > W.t_num())
        throw DomainError("geodesic exits numerical domain [0, T_num]");
      out.push_back(t);
    }
    return out;
  }

  std::array<double, 2> y{t0, psi0};
  OdeRhs<2> rhs = [&W](double, const std::array<double, 2>& y,
                       std::array<double, 2>& dy) {
    dy[0] = std::cos(y[1]);
    dy[1] = -(W.dphi(y[0]) / W.phi(y[0])) * std::sin(y[1]);
  };
  for (int k = 1; k <= n; ++k) {
    integrate_ode<2>(rhs, y, (k - 1) * h, k * h, 1e-11, 1e-13);
    if (y[0] > W.t_num())
      throw DomainError("geodesic exits numerical domain [0, T_num]");
    out.push_back(y[0]);
  }
  return out;
}

ExpSample exp_map_sample(const WarpedSurface& W, double t0, double alpha,
                         double rho) {
  if (rho <= 0.0) return {t0, 0.0};
  if (t0 < 1e-12) {
    // Pole center: exponential map is exactly radial with J = phi.
    if (rho > W.t_num())
      throw DomainError("exp_map_sample: leaves numerical domain");
    return {rho, W.phi(rho)};
  }
  double sina = std::sin(alpha);
  if (std::abs(sina) < 1e-8) {
    // Radial direction: J'' = -K(t(s)) J along the analytic radial path.
    double dir = std::cos(alpha) >= 0.0 ? 1.0 : -1.0;
    int n = std::max(64, static_cast<int>(rho / 0.005));
    double hs = rho / n;
    double J = 0.0, Jp = 1.0;
    auto kk = [&](double s) {
      bool flip;
      return W.gauss_curvature(radial_at(t0, dir, s, flip));
    };
    for (int k = 0; k < n; ++k) {
      double s = k * hs;
      // RK4 on (J, J')
      auto f = [&](double sv, double Jv, double Jpv, double& dJ, double& dJp) {
        dJ = Jpv;
        dJp = -kk(sv) * Jv;
      };
      double k1J, k1P, k2J, k2P, k3J, k3P, k4J, k4P;
      f(s, J, Jp, k1J, k1P);
      f(s + hs / 2, J + hs / 2 * k1J, Jp + hs / 2 * k1P, k2J, k2P);
      f(s + hs / 2, J + hs / 2 * k2J, Jp + hs / 2 * k2P, k3J, k3P);
      f(s + hs, J + hs * k3J, Jp + hs * k3P, k4J, k4P);
      J += hs / 6 * (k1J + 2 * k2J + 2 * k3J + k4J);
      Jp += hs / 6 * (k1P + 2 * k2P + 2 * k3P + k4P);
    }
    bool flip;
    double t_end = radial_at(t0, dir, rho, flip);
    if (t_end > W.t_num())
      throw DomainError("exp_map_sample: leaves numerical domain");
    return {t_end, J};
  }

  std::array<double, 4> y{t0, alpha, 0.0, 1.0};  // t, psi, J, J'
  OdeRhs<4> rhs = [&W](double, const std::array<double, 4>& y,
                       std::array<double, 4>& dy) {
    double t = y[0];
    dy[0] = std::cos(y[1]);
    dy[1] = -(W.dphi(t) / W.phi(t)) * std::sin(y[1]);
    dy[2] = y[3];
    dy[3] = -W.gauss_curvature(std::min(std::max(t, 0.0), W.t_num())) * y[2];
  };
  integrate_ode<4>(rhs, y, 0.0, rho, 1e-8, 1e-12);
  if (y[0] > W.t_num())
    throw DomainError("exp_map_sample: leaves numerical domain");
  return {y[0], y[2]};
}

namespace {

void check_ball(const WarpedSurface& W, double t0, double s) {
  if (!(t0 >= 0.0) || t0 > W.t_num())
    throw DomainError("ball center outside [0, T_num]");
  if (!(s > 0.0)) throw DomainError("ball radius must be positive");
  if (t0 + s >= W.t_num())
    throw DomainError("ball of radius " + std::to_string(s) +
                      " reaches the numerical domain edge");
  double cap = conjugate_bound(W, t0, s);
  if (s >= cap)
    throw DomainError("ball radius exceeds the conjugate-distance bound " +
                      std::to_string(cap));
}

McEstimate mc_ball(const WarpedSurface& W, double t0, double s, int samples,
                   std::uint64_t seed,
                   const std::function<bool(double)>& keep) {
  check_ball(W, t0, s);
  if (samples < 2) throw DomainError("need at least 2 samples");
  Rng rng(seed);
  double sum = 0.0, sum2 = 0.0;
  const double disk = M_PI * s * s;
  for (int i = 0; i < samples; ++i) {
    double alpha = 2.0 * M_PI * rng.uniform();
    double u = rng.uniform();
    double rho = s * std::sqrt(std::max(u, 1e-300));
    ExpSample es = exp_map_sample(W, t0, alpha, rho);
    double w = (keep(es.t_end) ? 1.0 : 0.0) * es.jacobi / rho;
    sum += w;
    sum2 += w * w;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sum2 / samples - mean * mean);
  McEstimate out;
  out.value = disk * mean;
  out.sigma = disk * std::sqrt(var / samples);
  return out;
}

}  // namespace

McEstimate offset_ball_measure(const WarpedSurface& W, double t0, double s,
                               int samples, std::uint64_t seed) {
  return mc_ball(W, t0, s, samples, seed, [](double) { return true; });
}

McEstimate ball_minus_region(const WarpedSurface& W, double t0, double s,
                             const SymmetricRegion& E, int samples,
                             std::uint64_t seed) {
  return mc_ball(W, t0, s, samples, seed,
                 [&E](double t) { return !E.contains(t); });
}

double conjugate_bound(const WarpedSurface& W, double t0, double s) {
  double sup = W.curvature_sup(std::max(0.0, t0 - s),
                               std::min(W.t_num(), t0 + s));
  if (sup > 0.0) return M_PI / std::sqrt(sup);
  return std::numeric_limits<double>::infinity();
}

namespace {

// State along a ray of the exponential map with accumulated Jacobi integral:
// (t, psi, J, J', acc) with acc' = J.
using RayState = std::array<double, 5>;

OdeRhs<5> ray_rhs(const WarpedSurface& W) {
  return [&W](double, const RayState& y, RayState& dy) {
    double t = y[0];
    dy[0] = std::cos(y[1]);
    dy[1] = -(W.dphi(t) / W.phi(t)) * std::sin(y[1]);
    dy[2] = y[3];
    dy[3] = -W.gauss_curvature(std::min(std::max(t, 1e-300), W.t_num())) * y[2];
    dy[4] = y[2];
  };
}

}  // namespace

double ball_minus_region_quad(const WarpedSurface& W, double t0, double s,
                              const SymmetricRegion& E, int directions) {
  check_ball(W, t0, s);
  if (t0 < 1e-12) {
    // Pole center: radial symmetry, single quadrature.
    return 2.0 * M_PI *
           integrate(
               [&](double t) { return E.contains(t) ? 0.0 : W.phi(t); }, 0.0,
               s, 1e-13, 1e-12);
  }

  // Edge radii where membership can switch.
  std::vector<double> edges;
  for (const auto& iv : E.intervals()) {
    edges.push_back(iv.a);
    edges.push_back(iv.b);
  }

  auto rhs = ray_rhs(W);
  double total = 0.0;
  for (int j = 0; j < directions; ++j) {
    double alpha = 2.0 * M_PI * (j + 0.5) / directions;

    // Record accepted steps to locate membership switches.
    std::vector<std::pair<double, RayState>> nodes;
    RayState y{t0, alpha, 0.0, 1.0, 0.0};
    nodes.push_back({0.0, y});
    integrate_ode<5>(rhs, y, 0.0, s, 1e-10, 1e-13,
                     [&](double rho, const RayState& st) {
                       nodes.push_back({rho, st});
                     });

    // Resume integration from the recorded node just below rho.
    auto t_at = [&](double rho) {
      std::size_t k = 0;
      while (k + 1 < nodes.size() && nodes[k + 1].first <= rho) ++k;
      RayState z = nodes[k].second;
      integrate_ode<5>(rhs, z, nodes[k].first, rho, 1e-11, 1e-14);
      return z[0];
    };

    // Breakpoints: turning point of t plus crossings of each edge radius.
    std::vector<double> brk{0.0, s};
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      double r0 = nodes[k].first, r1 = nodes[k + 1].first;
      double c0 = std::cos(nodes[k].second[1]), c1 = std::cos(nodes[k + 1].second[1]);
      std::vector<std::pair<double, double>> pieces{{r0, r1}};
      if (c0 * c1 < 0.0) {
        double lo = r0, hi = r1;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          RayState z = nodes[k].second;
          integrate_ode<5>(rhs, z, r0, mid, 1e-11, 1e-14);
          if (c0 * std::cos(z[1]) < 0.0)
            hi = mid;
          else
            lo = mid;
        }
        double turn = 0.5 * (lo + hi);
        brk.push_back(turn);
        pieces = {{r0, turn}, {turn, r1}};
      }
      for (auto [pa, pb] : pieces) {
        double ta = t_at(pa), tb = t_at(pb);
        for (double e : edges) {
          if ((ta - e) * (tb - e) < 0.0) {
            double lo = pa, hi = pb;
            for (int it = 0; it < 60; ++it) {
              double mid = 0.5 * (lo + hi);
              if ((ta - e) * (t_at(mid) - e) < 0.0)
                hi = mid;
              else
                lo = mid;
            }
            brk.push_back(0.5 * (lo + hi));
          }
        }
      }
    }
    std::sort(brk.begin(), brk.end());

    // Second pass: accumulate the Jacobi integral over kept pieces.
    RayState z{t0, alpha, 0.0, 1.0, 0.0};
    double acc_kept = 0.0;
    for (std::size_t k = 0; k + 1 < brk.size(); ++k) {
      if (brk[k + 1] - brk[k] < 1e-14) continue;
      double acc0 = z[4];
      integrate_ode<5>(rhs, z, brk[k], brk[k + 1], 1e-11, 1e-14);
      double mid_t = t_at(0.5 * (brk[k] + brk[k + 1]));
      if (!E.contains(mid_t)) acc_kept += z[4] - acc0;
    }
    total += acc_kept;
  }
  return total * 2.0 * M_PI / directions;
}

// ---- prescribed-curvature arcs ----

Arc cmc_arc_shoot(const WarpedSurface& W, double kappa, double t0,
                  double theta0, double psi0, const ArcStop& stop,
                  double rel_tol) {
  if (!(t0 >= 0.0) || t0 > W.t_num())
    throw DomainError("cmc_arc_shoot: start outside domain");
  if (t0 < 1e-12 && std::abs(kappa) < 1e-300)
    throw DomainError("cmc_arc_shoot: radial geodesic through pole; use "
                      "geodesic_integrate");

  // State: t, theta, psi, V = pole ball volume at t, A = swept area.
  using S5 = std::array<double, 5>;
  OdeRhs<5> rhs = [&W, kappa](double, const S5& y, S5& dy) {
    double p = W.phi(y[0]), dp = W.dphi(y[0]);
    double sinp = std::sin(y[2]), cosp = std::cos(y[2]);
    dy[0] = cosp;
    dy[1] = sinp / p;
    dy[2] = kappa - (dp / p) * sinp;
    dy[3] = 2.0 * M_PI * p * cosp;
    dy[4] = y[3] * sinp / (2.0 * M_PI * p);
  };

  Arc arc;
  S5 y{t0, theta0, psi0, W.pole_ball_volume(t0), 0.0};
  arc.points.push_back({0.0, t0, theta0, psi0});

  auto dist_to_start = [&](const S5& z) {
    double dth = std::remainder(z[1] - theta0, 2.0 * M_PI);
    double pm = W.phi(0.5 * (z[0] + t0));
    double dt = z[0] - t0;
    return std::sqrt(dt * dt + pm * pm * dth * dth);
  };

  const double ds = 0.02;
  double s = 0.0;
  bool was_inside = false;
  double prev_dist = std::numeric_limits<double>::infinity();
  S5 prev_state = y;
  double prev_s = 0.0;

  while (s < stop.max_length) {
    double s_next = std::min(s + ds, stop.max_length);
    S5 y_prev = y;
    integrate_ode<5>(rhs, y, s, s_next, rel_tol, 1e-13);
    if (y[0] < -1e-12 || y[0] > W.t_num())
      throw DomainError("cmc_arc_shoot: arc exits numerical domain");

    // Boundary return event.
    if (stop.boundary_t > 0.0) {
      if (y[0] < stop.boundary_t - 1e-12) was_inside = true;
      if (was_inside && y[0] >= stop.boundary_t && s_next > 1e-9) {
        double lo = s, hi = s_next;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          S5 z = y_prev;
          integrate_ode<5>(rhs, z, s, mid, rel_tol, 1e-13);
          if (z[0] >= stop.boundary_t)
            hi = mid;
          else
            lo = mid;
        }
        S5 z = y_prev;
        integrate_ode<5>(rhs, z, s, hi, rel_tol, 1e-13);
        arc.points.push_back({hi, z[0], z[1], z[2]});
        arc.length = hi;
        arc.swept_area = z[4];
        arc.hit_boundary = true;
        return arc;
      }
    }

    // Closure: look for a local minimum of the distance to the start.
    if (stop.detect_closure && s_next > 4.0 * ds) {
      double d = dist_to_start(y);
      if (prev_dist < d && prev_dist < 3.0 * ds && prev_s > 4.0 * ds) {
        // Refine around prev_s by golden section on [prev_s - ds, s_next].
        double lo = std::max(prev_s - ds, 0.0), hi = s_next;
        auto dist_at = [&](double sv) {
          S5 z = prev_state;
          integrate_ode<5>(rhs, z, prev_s, sv, rel_tol, 1e-13);
          return std::make_pair(dist_to_start(z), z);
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = dist_at(x1).first, f2 = dist_at(x2).first;
        for (int it = 0; it < 90 && hi - lo > 1e-13; ++it) {
          if (f1 > f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = dist_at(x2).first;
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = dist_at(x1).first;
          }
        }
        auto [dmin, zmin] = dist_at(0.5 * (lo + hi));
        if (dmin < 1e-6) {
          arc.points.push_back({0.5 * (lo + hi), zmin[0], zmin[1], zmin[2]});
          arc.length = 0.5 * (lo + hi);
          arc.swept_area = zmin[4];
          arc.closed = true;
          return arc;
        }
      }
      prev_dist = d;
    } else if (stop.detect_closure) {
      prev_dist = dist_to_start(y);
    }

    prev_state = y;
    prev_s = s_next;
    s = s_next;
    arc.points.push_back({s, y[0], y[1], y[2]});
  }
  arc.length = s;
  arc.swept_area = y[4];
  return arc;
}

}  // namespace isoprof
