#include "slelab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "slelab/angular.hpp"
#include "slelab/cardy.hpp"
#include "slelab/excursion.hpp"
#include "slelab/loewner.hpp"
#include "slelab/parallel.hpp"
#include "slelab/walk.hpp"

namespace slelab::experiments {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct ChunkPlan {
  std::size_t total = 0;
  std::size_t chunk = 1;
  std::size_t n_chunks() const { return (total + chunk - 1) / chunk; }
  std::size_t items(std::size_t c) const {
    std::size_t lo = c * chunk;
    return std::min(chunk, total - lo);
  }
};

int resolve_workers(const McOptions& o) {
  return o.workers > 0 ? o.workers : mc::default_workers();
}

mc::FitResult fit_series_loglog(const std::vector<double>& scales,
                                const std::vector<mc::Accumulator>& acc) {
  std::vector<mc::ScalePoint> pts;
  for (std::size_t i = 0; i < scales.size(); ++i)
    if (acc[i].mean() > 0.0)
      pts.push_back({scales[i], acc[i].mean(), acc[i].stderr_mean()});
  if (pts.size() < 3) return {};
  return mc::fit_exponent(pts);
}

mc::FitResult fit_series_semilog(const std::vector<double>& xs,
                                 const std::vector<mc::Accumulator>& acc) {
  std::vector<double> x, y, s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double m = acc[i].mean();
    if (m > 0.0) {
      x.push_back(xs[i]);
      y.push_back(std::log(m));
      s.push_back(acc[i].stderr_mean() / m);
    }
  }
  if (x.size() < 3) return {};
  return mc::weighted_linear_fit(x, y, s);
}

}  // namespace

std::vector<NuEstimateResult> nu_estimate(double kappa,
                                          const std::vector<double>& bs,
                                          const std::vector<double>& t_grid,
                                          std::size_t paths, std::size_t grid_x,
                                          double dt, const McOptions& opts) {
  ChunkPlan plan{paths, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  std::vector<std::vector<angular::ArcLengthEstimate>> parts(C);

  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    parts[c] = angular::estimate_arc_length_moments(
        kappa, bs, t_grid, plan.items(c), grid_x, dt, stream);
  });

  std::vector<NuEstimateResult> out(bs.size());
  for (std::size_t j = 0; j < bs.size(); ++j) {
    out[j].kappa = kappa;
    out[j].b = bs[j];
    out[j].t_grid = t_grid;
    out[j].moments.assign(t_grid.size(), {});
    for (std::size_t c = 0; c < C; ++c) {
      for (std::size_t i = 0; i < t_grid.size(); ++i)
        out[j].moments[i] = mc::merge(out[j].moments[i], parts[c][j].moments[i]);
      out[j].coarse_flagged += parts[c][j].coarse_flagged;
    }
    out[j].fit = fit_series_semilog(t_grid, out[j].moments);
  }
  return out;
}

SandwichResult sandwich(double kappa, double b, const std::vector<double>& xs,
                        const std::vector<double>& ts,
                        std::size_t paths_per_cell, double dt,
                        const McOptions& opts) {
  SandwichResult out;
  out.kappa = kappa;
  out.b = b;
  angular::AngularConfig cfg;
  cfg.kappa = kappa;
  cfg.b = b;
  cfg.dt = dt;

  ChunkPlan plan{paths_per_cell, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    std::vector<std::vector<mc::Accumulator>> parts(C);
    mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
      rng::RandomStream stream(opts.seed,
                               opts.stream_base + xi * C + c);
      parts[c] = angular::estimate_f_times(xs[xi], ts, cfg, plan.items(c),
                                           stream);
    });
    std::vector<mc::Accumulator> acc(ts.size());
    for (std::size_t c = 0; c < C; ++c)
      for (std::size_t i = 0; i < ts.size(); ++i)
        acc[i] = mc::merge(acc[i], parts[c][i]);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      SandwichCell cell;
      cell.x = xs[xi];
      cell.t = ts[i];
      cell.f_hat = acc[i].mean();
      cell.stderr_f = acc[i].stderr_mean();
      cell.h_star = angular::h_star(xs[xi], ts[i], kappa, b);
      cell.ratio = cell.h_star > 0.0 ? cell.f_hat / cell.h_star : 0.0;
      out.cells.push_back(cell);
    }
  }
  return out;
}

namespace {

// Map the disk quadrilateral to the half-plane sending start -> 0 and
// target -> infinity; returns the real images of the other marked points.
std::vector<double> halfplane_marks(const cardy::Quadrilateral& q,
                                    std::complex<double> target,
                                    const std::vector<std::complex<double>>& pts) {
  std::complex<double> p = q.w1p();
  auto mob = [&](std::complex<double> z) { return (z - p) / (z - target); };
  std::complex<double> ref = mob(q.w2());
  std::complex<double> rho = std::conj(ref) / std::abs(ref);
  std::vector<double> out;
  for (const auto& z : pts) {
    std::complex<double> v = rho * mob(z);
    if (std::fabs(v.imag()) > 1e-9 * (1.0 + std::fabs(v.real())))
      throw std::runtime_error("halfplane_marks: image not real");
    out.push_back(v.real());
  }
  return out;
}

}  // namespace

namespace {

// Swallow-first indices for a marked-point configuration, run to decision.
//
// First-swallow times of chordal SLE_6 boundary points have a power-law
// tail (the relative distance is a Bessel flow of dimension 5/3), so a
// single fixed horizon leaves a biased undecided fraction. Scale invariance
// and the domain Markov property give an exact remedy: when a round ends
// undecided, recentre at the driving value, rescale the surviving images
// to unit size and continue with fresh driving. Each round decides an O(1)
// fraction, so the tail vanishes geometrically.
struct DecisionResult {
  std::vector<int> first_indices;  // marked points swallowed in the first event
  bool decided = false;
};

DecisionResult run_to_decision(const loewner::ChordalConfig& cfg,
                               std::vector<double> marks,
                               rng::RandomStream& stream, int max_rounds) {
  DecisionResult out;
  for (int round = 0; round < max_rounds; ++round) {
    double mx = 0.0;
    for (double v : marks) mx = std::max(mx, std::fabs(v));
    double horizon = 12.5 * mx * mx;
    auto run = loewner::simulate_chordal(cfg, horizon, marks, stream,
                                         loewner::ChordalStopRule::AnySwallowed);
    int first_step = -1;
    for (const auto& p : run.points)
      if (!p.alive)
        first_step = first_step < 0 ? p.swallow_step
                                    : std::min(first_step, p.swallow_step);
    if (first_step >= 0) {
      for (std::size_t i = 0; i < run.points.size(); ++i)
        if (!run.points[i].alive && run.points[i].swallow_step == first_step)
          out.first_indices.push_back(static_cast<int>(i));
      out.decided = true;
      return out;
    }
    // Rescale the surviving configuration to unit size and continue.
    double w = run.driving.values.back();
    double scale = 0.0;
    for (const auto& p : run.points) scale += std::fabs(p.y - w);
    scale /= 2.0 * static_cast<double>(run.points.size());
    for (std::size_t i = 0; i < marks.size(); ++i)
      marks[i] = (run.points[i].y - w) / scale;
  }
  return out;
}

}  // namespace

CardyMcResult cardy_mc(double theta, double alpha, std::size_t runs, double dt,
                       const McOptions& opts, bool with_joint) {
  cardy::Quadrilateral q(theta, alpha);
  CardyMcResult out;
  out.theta = theta;
  out.alpha = alpha;
  out.runs = runs;
  out.dt = dt;
  out.with_joint = with_joint;
  cardy::CrossRatios cr = cardy::cross_ratios(q);
  out.g_cprime = cardy::cardy_G(cr.c_prime);
  out.target_joint = out.g_cprime - cardy::cardy_G(cr.c_dprime);

  out.g_cdprime = cardy::cardy_G(cr.c_dprime);

  // E': view the hull as growing toward w4; the two far arcs reduce to the
  // swallow ordering of the images of w2 and w1. E'' likewise toward w3.
  // Each race is tie-free in its own parametrization, which is how the
  // difference identity P[E] = G(c') - G(c'') is assembled.
  std::vector<double> m1 = halfplane_marks(q, q.w4(), {q.w2(), q.w1()});
  if (m1[0] * m1[1] >= 0.0)
    throw std::runtime_error("cardy_mc: marks on one side of the start");
  std::vector<double> m2, m4;
  if (with_joint) {
    m2 = halfplane_marks(q, q.w3(), {q.w2(), q.w1()});
    m4 = halfplane_marks(q, {1.0, 0.0}, {q.w2(), q.w1(), q.w3(), q.w4()});
  }

  ChunkPlan plan{runs, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  struct Part {
    mc::Accumulator first, dprime, direct;
    std::size_t undecided = 0;
  };
  std::vector<Part> parts(C);

  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    loewner::ChordalConfig cfg;
    cfg.kappa = 6.0;
    cfg.dt = dt;
    auto race = [&](const std::vector<double>& marks, mc::Accumulator& acc,
                    auto&& win) {
      auto dec = run_to_decision(cfg, marks, stream, 60);
      if (!dec.decided) {
        ++parts[c].undecided;
        return;
      }
      acc.add(win(dec.first_indices) ? 1.0 : 0.0);
    };
    auto w2_first = [](const std::vector<int>& idx) {
      for (int i : idx)
        if (i == 0) return true;
      return false;
    };
    auto target_first = [](const std::vector<int>& idx) {
      for (int i : idx)
        if (i == 2 || i == 3) return true;
      return false;
    };
    for (std::size_t i = 0; i < plan.items(c); ++i) {
      race(m1, parts[c].first, w2_first);
      if (with_joint) {
        race(m2, parts[c].dprime, w2_first);
        race(m4, parts[c].direct, target_first);
      }
    }
  });

  mc::Accumulator first, dprime, direct;
  for (std::size_t c = 0; c < C; ++c) {
    first = mc::merge(first, parts[c].first);
    dprime = mc::merge(dprime, parts[c].dprime);
    direct = mc::merge(direct, parts[c].direct);
    out.undecided += parts[c].undecided;
  }
  out.p_first = first.mean();
  out.se_first = first.stderr_mean();
  if (with_joint) {
    out.p_dprime = dprime.mean();
    out.se_dprime = dprime.stderr_mean();
    out.p_joint = out.p_first - out.p_dprime;
    out.se_joint = std::sqrt(out.se_first * out.se_first +
                             out.se_dprime * out.se_dprime);
    out.p_direct = direct.mean();
    out.se_direct = direct.stderr_mean();
  }
  return out;
}

RectangleSlopeResult rectangle_slope(const std::vector<double>& Ls,
                                     std::size_t per_L, double s, double dt,
                                     const McOptions& opts) {
  RectangleSlopeResult out;
  out.L_grid = Ls;
  out.s = s;
  out.dt = dt;
  out.mass.assign(Ls.size(), {});

  ChunkPlan plan{per_L, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  for (std::size_t li = 0; li < Ls.size(); ++li) {
    std::vector<mc::Accumulator> parts(C);
    mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
      rng::RandomStream stream(opts.seed, opts.stream_base + li * C + c);
      parts[c] = excursion::rectangle_crossing_mass_point(Ls[li], s,
                                                          plan.items(c), dt,
                                                          stream);
    });
    for (std::size_t c = 0; c < C; ++c)
      out.mass[li] = mc::merge(out.mass[li], parts[c]);
  }
  out.fit = fit_series_semilog(Ls, out.mass);
  return out;
}

WalkTimeResult walk_time(int n, int m, const std::vector<std::size_t>& k_grid,
                         std::size_t trials, const McOptions& opts) {
  WalkTimeResult out;
  out.n = n;
  out.m = m;
  out.k_grid = k_grid;
  out.prob.assign(k_grid.size(), {});

  ChunkPlan plan{trials, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  std::vector<std::vector<mc::Accumulator>> parts(C);
  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    parts[c] = walk::nonintersection_time_probability(n, m, k_grid,
                                                      plan.items(c), stream)
                   .prob;
  });
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t i = 0; i < k_grid.size(); ++i)
      out.prob[i] = mc::merge(out.prob[i], parts[c][i]);

  std::vector<double> scales(k_grid.begin(), k_grid.end());
  out.fit = fit_series_loglog(scales, out.prob);
  return out;
}

WalkRadialResult walk_radial(int n, int m, const std::vector<double>& radii,
                             std::size_t trials, const McOptions& opts) {
  WalkRadialResult out;
  out.n = n;
  out.m = m;
  out.radii = radii;
  out.prob.assign(radii.size(), {});

  ChunkPlan plan{trials, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  std::vector<std::vector<mc::Accumulator>> parts(C);
  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    parts[c] =
        walk::nonintersection_radial_probability(n, m, radii, plan.items(c),
                                                 stream)
            .prob;
  });
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t i = 0; i < radii.size(); ++i)
      out.prob[i] = mc::merge(out.prob[i], parts[c][i]);
  out.fit = fit_series_loglog(radii, out.prob);
  return out;
}

WalkDimensionsResult walk_dimensions(std::size_t steps, std::size_t walks,
                                     const std::vector<int>& scales,
                                     const McOptions& opts) {
  WalkDimensionsResult out;
  out.steps = steps;
  out.walks = walks;
  out.scales = scales;
  out.cut_counts.assign(scales.size(), {});
  out.frontier_counts.assign(scales.size(), {});

  std::vector<std::vector<mc::Accumulator>> pc(walks), pf(walks);
  mc::parallel_chunks(walks, resolve_workers(opts), [&](std::size_t w) {
    rng::RandomStream stream(opts.seed, opts.stream_base + w);
    walk::LatticePath path = walk::simulate_walk(steps, {0, 0}, stream);
    auto cuts = walk::cut_sites(path);
    auto frontier = walk::frontier_sites(path);
    pc[w].resize(scales.size());
    pf[w].resize(scales.size());
    if (!cuts.empty()) {
      auto cc = walk::box_counts(cuts, scales);
      for (std::size_t i = 0; i < scales.size(); ++i)
        pc[w][i].add(static_cast<double>(cc[i]));
    }
    auto fc = walk::box_counts(frontier, scales);
    for (std::size_t i = 0; i < scales.size(); ++i)
      pf[w][i].add(static_cast<double>(fc[i]));
  });
  for (std::size_t w = 0; w < walks; ++w)
    for (std::size_t i = 0; i < scales.size(); ++i) {
      out.cut_counts[i] = mc::merge(out.cut_counts[i], pc[w][i]);
      out.frontier_counts[i] = mc::merge(out.frontier_counts[i], pf[w][i]);
    }

  auto fit_counts = [&](const std::vector<mc::Accumulator>& acc) {
    // Drop the smallest scale (lattice-artifact regime).
    std::vector<mc::ScalePoint> pts;
    for (std::size_t i = 1; i < scales.size(); ++i)
      if (acc[i].mean() > 0.0)
        pts.push_back({1.0 / static_cast<double>(scales[i]), acc[i].mean(),
                       acc[i].stderr_mean()});
    if (pts.size() < 3) return mc::FitResult{};
    return mc::fit_exponent(pts);
  };
  out.cut_fit = fit_counts(out.cut_counts);
  out.frontier_fit = fit_counts(out.frontier_counts);
  return out;
}

UniversalityResult universality(const std::vector<double>& radii,
                                std::size_t paths, std::size_t grid_x,
                                double dt_sle,
                                const std::vector<double>& rect_Ls,
                                std::size_t rect_per_L, double rect_s,
                                double rect_dt, const McOptions& opts) {
  if (radii.size() < 3)
    throw std::invalid_argument("universality: need >= 3 radii for a fit");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > radii[i + 1]))
      throw std::invalid_argument("universality: radii must decrease");
  for (double r : radii)
    if (!(r > 0.0 && r < 0.125))
      throw std::invalid_argument("universality: radii must lie in (0, 1/8)");

  UniversalityResult out;
  out.radii = radii;

  // Route (ii) support: the crossing-mass law mu[E_L] ~ C e^{-L}, with C and
  // the rate taken from direct excursion sampling on the asymptotic side of
  // the L range (local corrections decay like e^{-2L}; the comparability
  // treats them as constant, so the curve enters as a pure exponential).
  McOptions rect_opts = opts;
  rect_opts.stream_base = opts.stream_base + 1000000;
  out.rect = rectangle_slope(rect_Ls, rect_per_L, rect_s, rect_dt, rect_opts);
  if (out.rect.fit.method.empty())
    throw std::runtime_error("universality: crossing-curve fit failed");
  double curve_a = out.rect.fit.intercept;
  double curve_b = out.rect.fit.slope;
  auto curve_eval = [&](double L) { return curve_a + curve_b * L; };

  std::vector<double> snap_times;
  for (double r : radii) snap_times.push_back(angular::proxy_time(r));

  ChunkPlan plan{paths, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  struct Part {
    std::vector<mc::Accumulator> route_i, route_ii;
  };
  std::vector<Part> parts(C);

  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    loewner::RadialConfig cfg;
    cfg.kappa = 6.0;
    cfg.theta0 = 0.0;
    cfg.dt = dt_sle;
    cfg.snapshot_times = snap_times;
    std::vector<double> grid(grid_x);
    for (std::size_t i = 0; i < grid_x; ++i)
      grid[i] = (static_cast<double>(i) + 0.5) * kTwoPi /
                static_cast<double>(grid_x);
    parts[c].route_i.assign(radii.size(), {});
    parts[c].route_ii.assign(radii.size(), {});
    for (std::size_t p = 0; p < plan.items(c); ++p) {
      auto run = loewner::simulate_radial(
          cfg, loewner::RadialStop::capacity(snap_times.back()), grid, stream);
      for (std::size_t j = 0; j < radii.size(); ++j) {
        double L = loewner::arc_length_from_angles(run.snapshots[j].angles,
                                                   grid_x);
        parts[c].route_i[j].add(L);
        double mass = 0.0;
        if (L > 0.0) mass = std::exp(curve_eval(-std::log(L)));
        parts[c].route_ii[j].add(mass);
      }
    }
  });

  out.route_i.assign(radii.size(), {});
  out.route_ii.assign(radii.size(), {});
  for (std::size_t c = 0; c < C; ++c)
    for (std::size_t j = 0; j < radii.size(); ++j) {
      out.route_i[j] = mc::merge(out.route_i[j], parts[c].route_i[j]);
      out.route_ii[j] = mc::merge(out.route_ii[j], parts[c].route_ii[j]);
    }

  std::vector<double> inv_r;
  for (double r : radii) inv_r.push_back(1.0 / r);
  out.fit_i = fit_series_loglog(inv_r, out.route_i);
  out.fit_ii = fit_series_loglog(inv_r, out.route_ii);
  out.slope_diff = out.fit_i.slope - out.fit_ii.slope;

  // Paired jackknife over chunks for the slope difference; the shared
  // crossing-curve slope uncertainty shifts route (ii) coherently and is
  // added in quadrature.
  double curve_term = std::fabs(out.fit_i.slope) * out.rect.fit.slope_stderr;
  double var = 0.0;
  if (C >= 3) {
    std::vector<double> diffs;
    for (std::size_t skip = 0; skip < C; ++skip) {
      std::vector<mc::Accumulator> ri(radii.size()), rii(radii.size());
      for (std::size_t c = 0; c < C; ++c) {
        if (c == skip) continue;
        for (std::size_t j = 0; j < radii.size(); ++j) {
          ri[j] = mc::merge(ri[j], parts[c].route_i[j]);
          rii[j] = mc::merge(rii[j], parts[c].route_ii[j]);
        }
      }
      mc::FitResult fi = fit_series_loglog(inv_r, ri);
      mc::FitResult fii = fit_series_loglog(inv_r, rii);
      diffs.push_back(fi.slope - fii.slope);
    }
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    for (double d : diffs) var += (d - mean) * (d - mean);
    var *= (static_cast<double>(diffs.size()) - 1.0) /
           static_cast<double>(diffs.size());
  } else {
    var = out.fit_i.slope_stderr * out.fit_i.slope_stderr +
          out.fit_ii.slope_stderr * out.fit_ii.slope_stderr;
  }
  out.slope_diff_se = std::sqrt(var + curve_term * curve_term);
  return out;
}

KoebeSuiteResult koebe_suite(double kappa, double r, std::size_t hulls,
                             double dt, const McOptions& opts) {
  KoebeSuiteResult out;
  out.hulls = hulls;
  // Sampled tips resolve the trace to O(sqrt(kappa dt)); the upper Koebe
  // bound is asserted with this allowance, the lower bound without.
  out.upper_slack = 8.0 * std::sqrt(std::max(1.0, kappa) * dt);

  ChunkPlan plan{hulls, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  std::vector<KoebeSuiteResult> parts(C);
  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    KoebeSuiteResult& p = parts[c];
    p.min_lower_ratio = 1e300;
    loewner::RadialConfig cfg;
    cfg.kappa = kappa;
    cfg.theta0 = 0.0;
    cfg.dt = dt;
    cfg.track_rho = true;
    cfg.rho_check_spacing = 0.25;
    for (std::size_t i = 0; i < plan.items(c); ++i) {
      auto run = loewner::simulate_radial(
          cfg, loewner::RadialStop::hit_radius(r), {}, stream);
      for (const auto& chk : run.state.rho_checks) {
        double lo = std::exp(-chk.t) / 4.0;
        double hi = std::exp(-chk.t) * (1.0 + out.upper_slack);
        ++p.checks;
        if (chk.rho_hat < lo || chk.rho_hat > hi) ++p.violations;
        p.min_lower_ratio = std::min(p.min_lower_ratio, chk.rho_hat / lo);
        p.max_upper_ratio =
            std::max(p.max_upper_ratio, chk.rho_hat * std::exp(chk.t));
      }
      double T = run.state.hit_time;
      if (!(T > std::log(1.0 / r) - std::log(4.0) - dt &&
            T <= std::log(1.0 / r) + dt))
        p.hit_times_bracketed = false;
    }
  });
  for (std::size_t c = 0; c < C; ++c) {
    out.checks += parts[c].checks;
    out.violations += parts[c].violations;
    out.min_lower_ratio = std::min(out.min_lower_ratio, parts[c].min_lower_ratio);
    out.max_upper_ratio = std::max(out.max_upper_ratio, parts[c].max_upper_ratio);
    out.hit_times_bracketed = out.hit_times_bracketed && parts[c].hit_times_bracketed;
  }
  return out;
}

ContractionSuiteResult contraction_suite(double kappa, std::size_t pairs,
                                         double x0, double y0, double t_max,
                                         double dt, const McOptions& opts) {
  ContractionSuiteResult out;
  out.pairs = pairs;
  ChunkPlan plan{pairs, opts.chunk_size};
  std::size_t C = plan.n_chunks();
  std::vector<ContractionSuiteResult> parts(C);
  mc::parallel_chunks(C, resolve_workers(opts), [&](std::size_t c) {
    rng::RandomStream stream(opts.seed, opts.stream_base + c);
    ContractionSuiteResult& p = parts[c];
    angular::AngularConfig cfg;
    cfg.kappa = kappa;
    cfg.dt = dt;
    std::size_t n_steps = static_cast<std::size_t>(std::llround(t_max / dt));
    for (std::size_t i = 0; i < plan.items(c); ++i) {
      angular::CoupledEnsemble ens({x0, y0}, cfg);
      double d0 = std::fabs(y0 - x0);
      for (std::size_t k = 0; k < n_steps; ++k) {
        ens.step(stream.next_gaussian());
        const auto& ms = ens.members();
        if (!ms[0].alive || !ms[1].alive) break;
        double gap = std::fabs(ms[1].y - ms[0].y);
        double bound = d0 * std::exp(-0.5 * ens.t());
        ++p.steps_checked;
        double margin = gap - bound;
        p.worst_margin = std::max(p.worst_margin, margin);
        if (margin > 1e-12 * bound) p.ok = false;
      }
    }
  });
  for (std::size_t c = 0; c < C; ++c) {
    out.steps_checked += parts[c].steps_checked;
    out.ok = out.ok && parts[c].ok;
    out.worst_margin = std::max(out.worst_margin, parts[c].worst_margin);
  }
  return out;
}

}  // namespace slelab::experiments
