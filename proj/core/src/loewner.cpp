#include "slelab/loewner.hpp"

#include <algorithm>
#include <cmath>

namespace slelab::loewner {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double radial_flow_angle(double y, double tau) {
  double c = std::cos(0.5 * y);
  double w = std::exp(-0.5 * tau) * c;
  w = std::clamp(w, -1.0, 1.0);
  return 2.0 * std::acos(w);
}

double radial_flow_dlogphi(double y, double tau) {
  // -(1/2) int_0^tau ds / sin^2(Y_s/2) with cos(Y_s/2) = e^{-s/2} cos(y/2).
  double s = std::sin(0.5 * y);
  double s2 = s * s;
  double a = 1.0 - s2;  // cos^2(y/2)
  double num = a * (-std::expm1(-tau));
  return -0.5 * (tau + std::log1p(num / s2));
}

std::complex<double> koebe_m(std::complex<double> z) {
  std::complex<double> o = 1.0 + z;
  return z / (o * o);
}

std::complex<double> radial_step_inverse(std::complex<double> w, double tau) {
  std::complex<double> zeta = std::exp(-tau) * koebe_m(w);
  std::complex<double> s = std::sqrt(1.0 - 4.0 * zeta);
  std::complex<double> w_small = 2.0 * zeta / (1.0 - 2.0 * zeta + s);
  double mod = std::abs(w_small);
  if (std::fabs(mod - 1.0) < 1e-9) {
    // Unimodular root pair: the flow preserves the half-disk side.
    double side = w.imag();
    if (side == 0.0) return w_small;
    std::complex<double> other = 1.0 / w_small;
    return (w_small.imag() * side >= 0.0) ? w_small : other;
  }
  return mod <= 1.0 ? w_small : 1.0 / w_small;
}

namespace {

// One driving jump applied to a relative angle; returns false if swallowed.
inline bool apply_jump(double& y, double dtheta, double eps) {
  y -= dtheta;
  return y > eps && y < kTwoPi - eps;
}

struct TipChaser {
  const DrivingPath& d;
  explicit TipChaser(const DrivingPath& dp) : d(dp) {}
  std::complex<double> operator()(std::size_t k) const {
    std::complex<double> z = std::polar(1.0, d.values[k]);
    for (std::size_t j = k; j-- > 0;) {
      std::complex<double> rot = std::polar(1.0, d.values[j]);
      z = rot * radial_step_inverse(z / rot, d.dt);
    }
    return z;
  }
};

}  // namespace

std::complex<double> radial_tip(const DrivingPath& d, std::size_t k) {
  if (k >= d.values.size())
    throw std::invalid_argument("radial_tip: step index out of range");
  return TipChaser(d)(k);
}

RadialRun simulate_radial(const RadialConfig& cfg, const RadialStop& stop,
                          const std::vector<double>& tracked_angles,
                          rng::RandomStream& stream) {
  if (cfg.kappa < 0.0) throw std::invalid_argument("simulate_radial: kappa < 0");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate_radial: dt <= 0");
  if (cfg.theta0 < 0.0 || cfg.theta0 >= kTwoPi)
    throw std::invalid_argument("simulate_radial: theta0 outside [0, 2pi)");
  if (stop.kind == RadialStop::Kind::HitRadius &&
      !(stop.r > 0.0 && stop.r < 1.0))
    throw std::invalid_argument("simulate_radial: hit radius outside (0,1)");

  RadialRun run;
  run.driving.kappa = cfg.kappa;
  run.driving.dt = cfg.dt;
  run.driving.seed = stream.seed();
  run.driving.stream_id = stream.stream_id();
  run.driving.values.push_back(cfg.theta0);

  RadialHullState& st = run.state;
  st.angles.reserve(tracked_angles.size());
  for (double x : tracked_angles) {
    TrackedAngle a;
    a.x0 = x;
    a.y = std::fmod(x - cfg.theta0, kTwoPi);
    if (a.y < 0.0) a.y += kTwoPi;
    if (a.y <= cfg.eps_swallow || a.y >= kTwoPi - cfg.eps_swallow)
      throw std::invalid_argument(
          "simulate_radial: tracked angle coincides with theta0");
    st.angles.push_back(a);
  }

  std::vector<std::size_t> snap_steps;
  for (double ts : cfg.snapshot_times)
    snap_steps.push_back(static_cast<std::size_t>(std::llround(ts / cfg.dt)));

  std::size_t n_steps = 0;
  if (stop.kind == RadialStop::Kind::CapacityTime) {
    n_steps = static_cast<std::size_t>(std::llround(stop.t_max / cfg.dt));
    if (n_steps < 1) n_steps = 1;
  }
  // Koebe lower bound rho >= e^-t / 4: tips cannot reach r before t_window.
  double t_window = stop.kind == RadialStop::Kind::HitRadius
                        ? std::max(0.0, std::log(1.0 / (4.0 * stop.r)) - 2.0 * cfg.dt)
                        : std::numeric_limits<double>::infinity();

  double theta = cfg.theta0;
  double sqrt_kdt = std::sqrt(cfg.kappa * cfg.dt);
  double next_check = cfg.track_rho ? cfg.rho_check_spacing
                                    : std::numeric_limits<double>::infinity();
  TipChaser tip(run.driving);

  auto take_snapshot = [&](std::size_t step_idx) {
    for (std::size_t s = 0; s < snap_steps.size(); ++s) {
      if (snap_steps[s] == step_idx) {
        RadialSnapshot snap;
        snap.t = static_cast<double>(step_idx) * cfg.dt;
        snap.angles = st.angles;
        run.snapshots.push_back(std::move(snap));
      }
    }
  };
  take_snapshot(0);

  for (std::uint64_t k = 0;; ++k) {
    if (stop.kind == RadialStop::Kind::CapacityTime && k >= n_steps) break;
    if (k >= cfg.max_steps) {
      if (stop.kind == RadialStop::Kind::HitRadius)
        throw BudgetExhausted("simulate_radial: hit-radius stop not reached");
      st.budget_exhausted = true;
      break;
    }

    // Exact drift flow under driving frozen at values[k].
    for (auto& a : st.angles) {
      if (!a.alive) continue;
      a.log_phi += radial_flow_dlogphi(a.y, cfg.dt);
      a.y = radial_flow_angle(a.y, cfg.dt);
    }
    double t_new = static_cast<double>(k + 1) * cfg.dt;

    // Driving jump; swallow checks.
    double dtheta = sqrt_kdt * stream.next_gaussian();
    theta += dtheta;
    run.driving.values.push_back(theta);
    for (auto& a : st.angles) {
      if (!a.alive) continue;
      if (!apply_jump(a.y, dtheta, cfg.eps_swallow)) {
        a.alive = false;
        a.tau = t_new;
      }
    }
    st.t = t_new;

    bool in_window = t_new >= t_window;
    if (in_window || t_new >= next_check) {
      double rho = std::abs(tip(k + 1));
      if (rho < st.rho_hat) st.rho_hat = rho;
      if (t_new >= next_check) {
        st.rho_checks.push_back({t_new, st.rho_hat});
        next_check += cfg.rho_check_spacing;
      }
      if (stop.kind == RadialStop::Kind::HitRadius && st.rho_hat <= stop.r) {
        st.hit_time = t_new;
        take_snapshot(k + 1);
        break;
      }
    }
    take_snapshot(k + 1);
  }
  if (cfg.track_rho && run.driving.values.size() > 1 &&
      (st.rho_checks.empty() || st.rho_checks.back().t < st.t)) {
    double rho = std::abs(tip(run.driving.values.size() - 1));
    if (rho < st.rho_hat) st.rho_hat = rho;
    st.rho_checks.push_back({st.t, st.rho_hat});
  }
  return run;
}

double hull_hit_time(const RadialRun& run, double r) {
  if (!(r > 0.0 && r < 1.0))
    throw std::invalid_argument("hull_hit_time: r outside (0,1)");
  if (!std::isfinite(run.state.hit_time))
    throw std::invalid_argument(
        "hull_hit_time: run was not stopped by a hit-radius rule");
  return run.state.hit_time;
}

double arc_length_from_angles(const std::vector<TrackedAngle>& angles,
                              std::size_t grid_x) {
  if (grid_x == 0) throw std::invalid_argument("arc_length: empty grid");
  double width = kTwoPi / static_cast<double>(grid_x);
  double sum = 0.0;
  for (const auto& a : angles)
    if (a.alive) sum += std::exp(a.log_phi);
  return sum * width;
}

double capacity_identity_residual(const DrivingPath& d, std::size_t n_probes) {
  // Deterministic probe points strictly inside the disk.
  double worst = 0.0;
  double etau = std::exp(d.dt);
  for (std::size_t p = 0; p < n_probes; ++p) {
    double r = 0.15 + 0.5 * static_cast<double>(p) / std::max<std::size_t>(1, n_probes);
    std::complex<double> w = std::polar(r, 2.399963229728653 * static_cast<double>(p + 1));
    std::size_t k = (p * 7919) % std::max<std::size_t>(1, d.values.size() - 1);
    std::complex<double> rot = std::polar(1.0, d.values[k]);
    std::complex<double> z = radial_step_inverse(w / rot, d.dt);
    double res = std::abs(etau * koebe_m(z) - koebe_m(w / rot));
    worst = std::max(worst, res);
  }
  return worst;
}

ChordalRun simulate_chordal(const ChordalConfig& cfg, double t_max,
                            const std::vector<double>& tracked_points,
                            rng::RandomStream& stream, ChordalStopRule stop) {
  if (cfg.kappa < 0.0) throw std::invalid_argument("simulate_chordal: kappa < 0");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate_chordal: dt <= 0");

  ChordalRun run;
  run.driving.kappa = cfg.kappa;
  run.driving.dt = cfg.dt;
  run.driving.seed = stream.seed();
  run.driving.stream_id = stream.stream_id();
  run.driving.values.push_back(cfg.delta0);

  for (double x : tracked_points) {
    if (x == cfg.delta0)
      throw std::invalid_argument("simulate_chordal: tracked point equals delta0");
    TrackedPoint p;
    p.x0 = x;
    p.y = x;
    run.points.push_back(p);
  }

  std::size_t n_steps = static_cast<std::size_t>(std::llround(t_max / cfg.dt));
  double W = cfg.delta0;
  double sqrt_kdt = std::sqrt(cfg.kappa * cfg.dt);

  for (std::size_t k = 0; k < n_steps; ++k) {
    if (k >= cfg.max_steps) {
      run.budget_exhausted = true;
      break;
    }
    // Vertical-slit step with driving frozen at W.
    for (auto& p : run.points) {
      if (!p.alive) continue;
      double d = p.y - W;
      p.y = W + std::copysign(std::sqrt(d * d + 4.0 * cfg.dt), d);
    }
    double t_new = static_cast<double>(k + 1) * cfg.dt;
    double W_new = W + sqrt_kdt * stream.next_gaussian();
    run.driving.values.push_back(W_new);

    bool any = false;
    bool all = true;
    for (auto& p : run.points) {
      if (!p.alive) continue;
      double before = p.y - W;
      double after = p.y - W_new;
      if (before * after <= 0.0 || std::fabs(after) <= cfg.eps_swallow) {
        p.alive = false;
        p.tau = t_new;
        p.swallow_step = static_cast<int>(k + 1);
        any = true;
      } else {
        all = false;
      }
    }
    W = W_new;
    run.t = t_new;
    if (stop == ChordalStopRule::AnySwallowed && any) break;
    if (stop == ChordalStopRule::AllSwallowed && all && !run.points.empty())
      break;
  }
  return run;
}

SwallowOrdering first_swallowed(const ChordalRun& run) {
  SwallowOrdering out;
  for (const auto& p : run.points) {
    SwallowEvent ev;
    ev.x0 = p.x0;
    if (!p.alive) {
      ev.tau = p.tau;
      ev.step = p.swallow_step;
      ev.swallowed = true;
      out.decided = true;
    }
    out.events.push_back(ev);
  }
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const SwallowEvent& a, const SwallowEvent& b) {
                     return a.tau < b.tau;
                   });
  return out;
}

}  // namespace slelab::loewner
