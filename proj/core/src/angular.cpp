#include "slelab/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slelab::angular {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

inline double csc2_half(double y) {
  double s = std::sin(0.5 * y);
  return 1.0 / (s * s);
}

inline double cot_half(double y) { return 1.0 / std::tan(0.5 * y); }
}  // namespace

double nu(double kappa, double b) {
  if (kappa < 0.0) throw std::invalid_argument("nu: kappa must be >= 0");
  if (b < 0.0) throw std::invalid_argument("nu: b must be >= 0");
  double d = kappa - 4.0;
  return (8.0 * b + kappa - 4.0 + std::sqrt(d * d + 16.0 * b * kappa)) / 16.0;
}

double q(double kappa, double b) {
  if (!(kappa > 0.0)) throw std::invalid_argument("q: kappa must be positive");
  if (b < 0.0) throw std::invalid_argument("q: b must be >= 0");
  double d = kappa - 4.0;
  return (d + std::sqrt(d * d + 16.0 * b * kappa)) / (2.0 * kappa);
}

double h_star(double x, double t, double kappa, double b) {
  if (x < 0.0 || x > kTwoPi)
    throw std::invalid_argument("h_star: x outside [0, 2pi]");
  if (t < 0.0) throw std::invalid_argument("h_star: t must be >= 0");
  double s = std::sin(0.5 * x);
  if (s < 1e-14) return 0.0;  // boundary values, up to rounding of 2pi
  return std::exp(-t * nu(kappa, b)) * std::pow(s, q(kappa, b));
}

double generator_residual(double x, double t, double kappa, double b,
                          double h) {
  if (!(h > 0.0)) throw std::invalid_argument("generator_residual: h <= 0");
  if (x < 4.0 * h || x > kTwoPi - 4.0 * h)
    throw std::invalid_argument(
        "generator_residual: x too close to the boundary singularity");
  if (t < h) throw std::invalid_argument("generator_residual: t < h");
  auto f = [&](double xx, double tt) { return h_star(xx, tt, kappa, b); };
  double dt_h = (f(x, t + h) - f(x, t - h)) / (2.0 * h);
  double dx = (f(x + h, t) - f(x - h, t)) / (2.0 * h);
  double dxx = (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h);
  double lam = 0.5 * kappa * dxx + cot_half(x) * dx -
               0.5 * b * csc2_half(x) * f(x, t);
  return dt_h - lam;
}

double AngularSample::weight() const {
  return absorbed ? 0.0 : std::exp(b * log_phi);
}

CoupledEnsemble::CoupledEnsemble(std::vector<double> y0,
                                 const AngularConfig& cfg)
    : cfg_(cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("ensemble: dt <= 0");
  members_.reserve(y0.size());
  for (double y : y0) {
    if (!(y > 0.0 && y < kTwoPi))
      throw std::invalid_argument("ensemble: start angle outside (0, 2pi)");
    EnsembleMember m;
    m.y = y;
    members_.push_back(m);
  }
}

std::size_t CoupledEnsemble::alive_count() const {
  std::size_t n = 0;
  for (const auto& m : members_)
    if (m.alive) ++n;
  return n;
}

void CoupledEnsemble::step(double gauss) {
  double t_end = t_ + cfg_.dt;
  double jump = std::sqrt(cfg_.kappa * cfg_.dt) * gauss;

  for (auto& m : members_) {
    if (!m.alive) continue;
    m.y += jump;
    if (m.y <= cfg_.eps_abs || m.y >= kTwoPi - cfg_.eps_abs) {
      m.alive = false;
      m.tau = t_end;
    }
  }

  // Drift sub-steps, synchronized across the ensemble so that coupled
  // members consume identical schedules (the shared noise then cancels in
  // pairwise differences and the contraction estimate holds pathwise).
  double remaining = cfg_.dt;
  while (remaining > 0.0) {
    double dmin = kTwoPi;
    for (const auto& m : members_) {
      if (!m.alive) continue;
      dmin = std::min(dmin, std::min(m.y, kTwoPi - m.y));
    }
    if (dmin >= kTwoPi) break;  // all absorbed
    double h = std::min(remaining, dmin * dmin / 100.0);
    if (h < 1e-18) h = 1e-18;
    for (auto& m : members_) {
      if (!m.alive) continue;
      double f0 = csc2_half(m.y);
      double y1 = m.y + cot_half(m.y) * h;
      m.log_phi -= 0.25 * h * (f0 + csc2_half(y1));
      m.y = y1;
    }
    remaining -= h;
  }
  t_ = t_end;
}

AngularSample simulate_weighted(double x0, double t_horizon,
                                const AngularConfig& cfg,
                                rng::RandomStream& stream,
                                std::size_t path_stride) {
  if (!(x0 > 0.0 && x0 < kTwoPi))
    throw std::invalid_argument("simulate_weighted: x0 outside (0, 2pi)");
  AngularSample out;
  out.x0 = x0;
  out.kappa = cfg.kappa;
  out.b = cfg.b;

  CoupledEnsemble ens({x0}, cfg);
  std::size_t n_steps =
      static_cast<std::size_t>(std::llround(t_horizon / cfg.dt));
  if (path_stride > 0) {
    out.times.push_back(0.0);
    out.path.push_back(x0);
  }
  for (std::size_t k = 0; k < n_steps; ++k) {
    ens.step(stream.next_gaussian());
    const auto& m = ens.members()[0];
    if (path_stride > 0 && ((k + 1) % path_stride == 0 || !m.alive)) {
      out.times.push_back(ens.t());
      out.path.push_back(m.y);
    }
    if (!m.alive) break;
  }
  const auto& m = ens.members()[0];
  out.log_phi = m.log_phi;
  out.absorbed = !m.alive;
  out.tau = m.tau;
  return out;
}

std::vector<mc::Accumulator> estimate_f_times(double x0,
                                              const std::vector<double>& times,
                                              const AngularConfig& cfg,
                                              std::size_t n_paths,
                                              rng::RandomStream& stream) {
  if (times.empty()) throw std::invalid_argument("estimate_f: empty time grid");
  std::vector<std::size_t> steps;
  for (double t : times)
    steps.push_back(static_cast<std::size_t>(std::llround(t / cfg.dt)));
  std::vector<mc::Accumulator> acc(times.size());

  for (std::size_t p = 0; p < n_paths; ++p) {
    CoupledEnsemble ens({x0}, cfg);
    std::size_t next = 0;
    for (std::size_t k = 0; k < steps.back(); ++k) {
      while (next < steps.size() && steps[next] == k) {
        const auto& m = ens.members()[0];
        acc[next].add(m.alive ? std::exp(cfg.b * m.log_phi) : 0.0);
        ++next;
      }
      ens.step(stream.next_gaussian());
      if (!ens.members()[0].alive) break;
    }
    const auto& m = ens.members()[0];
    double w = m.alive ? std::exp(cfg.b * m.log_phi) : 0.0;
    while (next < steps.size()) acc[next++].add(m.alive ? w : 0.0);
  }
  return acc;
}

mc::Accumulator estimate_f(double x0, double t, const AngularConfig& cfg,
                           std::size_t n_paths, rng::RandomStream& stream) {
  return estimate_f_times(x0, {t}, cfg, n_paths, stream)[0];
}

std::vector<ArcLengthEstimate> estimate_arc_length_moments(
    double kappa, const std::vector<double>& bs,
    const std::vector<double>& t_grid, std::size_t n_paths, std::size_t grid_x,
    double dt, rng::RandomStream& stream) {
  if (grid_x < 64)
    throw std::invalid_argument("arc_length: grid_x must be >= 64");
  if (t_grid.empty() || bs.empty())
    throw std::invalid_argument("arc_length: empty grid");

  AngularConfig cfg;
  cfg.kappa = kappa;
  cfg.b = 1.0;
  cfg.dt = dt;

  std::vector<std::size_t> steps;
  for (double t : t_grid)
    steps.push_back(static_cast<std::size_t>(std::llround(t / dt)));

  std::vector<ArcLengthEstimate> out(bs.size());
  for (std::size_t j = 0; j < bs.size(); ++j) {
    out[j].t_grid = t_grid;
    out[j].moments.resize(t_grid.size());
  }

  std::vector<double> y0(grid_x);
  double width = kTwoPi / static_cast<double>(grid_x);
  for (std::size_t i = 0; i < grid_x; ++i)
    y0[i] = (static_cast<double>(i) + 0.5) * width;

  for (std::size_t p = 0; p < n_paths; ++p) {
    CoupledEnsemble ens(y0, cfg);
    std::size_t next = 0;
    bool coarse = false;
    auto record = [&](std::size_t slot) {
      double L = 0.0;
      for (const auto& m : ens.members())
        if (m.alive) L += std::exp(m.log_phi);
      L *= width;
      if (L == 0.0 && slot == 0) coarse = true;
      for (std::size_t j = 0; j < bs.size(); ++j)
        out[j].moments[slot].add(std::pow(L, bs[j]));
    };
    for (std::size_t k = 0; k <= steps.back(); ++k) {
      while (next < steps.size() && steps[next] == k) record(next++);
      if (next >= steps.size()) break;
      ens.step(stream.next_gaussian());
      if (ens.alive_count() == 0) {
        while (next < steps.size()) record(next++);
        break;
      }
    }
    if (coarse)
      for (auto& est : out) ++est.coarse_flagged;
  }

  for (auto& est : out) {
    std::vector<double> x, y, s;
    for (std::size_t i = 0; i < est.t_grid.size(); ++i) {
      double mean = est.moments[i].mean();
      if (mean > 0.0) {
        x.push_back(est.t_grid[i]);
        y.push_back(std::log(mean));
        s.push_back(est.moments[i].stderr_mean() / mean);
      }
    }
    if (x.size() >= 3) est.decay = mc::weighted_linear_fit(x, y, s);
  }
  return out;
}

ArcLengthEstimate estimate_arc_length_moment(double kappa, double b,
                                             const std::vector<double>& t_grid,
                                             std::size_t n_paths,
                                             std::size_t grid_x, double dt,
                                             rng::RandomStream& stream) {
  return estimate_arc_length_moments(kappa, {b}, t_grid, n_paths, grid_x, dt,
                                     stream)[0];
}

double proxy_time(double r) {
  if (!(r > 0.0 && r < 0.125))
    throw std::invalid_argument("proxy_time: r must be in (0, 1/8)");
  return std::log(1.0 / (8.0 * r));
}

double extremal_distance_proxy(const loewner::RadialRun& run, double r,
                               std::size_t grid_x) {
  double t_target = proxy_time(r);
  const std::vector<loewner::TrackedAngle>* angles = nullptr;
  for (const auto& snap : run.snapshots) {
    if (std::fabs(snap.t - t_target) <= 0.5 * run.driving.dt) {
      angles = &snap.angles;
      break;
    }
  }
  if (!angles && std::isfinite(run.state.hit_time)) angles = &run.state.angles;
  if (!angles)
    throw std::invalid_argument(
        "extremal_distance_proxy: run has no snapshot at t(r) and no "
        "hit-radius stop");
  double L = loewner::arc_length_from_angles(*angles, grid_x);
  if (L <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(L);
}

}  // namespace slelab::angular
