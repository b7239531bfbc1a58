#pragma once

// Fixed-step classical RK4 with eta-crossing and steady-state detection.

#include <ngpair/errors.hpp>
#include <ngpair/link_types.hpp>
#include <ngpair/pair_ode.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

namespace ngpair {

/// An autonomous vector field together with its affine map to node fractions
/// (p = projection * x + offset) and the conserved total of x.
template <int Dim>
struct OdeSystem {
  using State = Vector<double, Dim>;
  std::function<State(const State&)> rhs;
  Matrix<double, 3, Dim> projection;
  NodeFractions offset = NodeFractions::Zero();
  double mass = 1.0;

  NodeFractions fractions(const State& x) const {
    return projection * x + offset;
  }
};

struct OdeConfig {
  double dt = 0.01;
  double t_max = 1e6;
  double steady_tol = 1e-10;
  std::optional<double> eta;  // no event detection when empty
  ConsensusTarget target = ConsensusTarget::either;
  double sample_interval = 1.0;  // 0 stores only the endpoints

  void validate() const {
    if (!(dt > 0.0)) throw ParameterError("dt must be positive");
    if (!(t_max > 0.0)) throw ParameterError("t_max must be positive");
    if (!(steady_tol > 0.0)) throw ParameterError("steady_tol must be positive");
    if (!(sample_interval >= 0.0))
      throw ParameterError("sample_interval must be nonnegative");
    if (eta && !(*eta > 0.5 && *eta <= 1.0))
      throw ParameterError("eta must lie in (1/2, 1]");
  }
};

enum class Termination { eta_crossed, steady, horizon };

template <int Dim>
struct OdeSample {
  double t;
  Vector<double, Dim> x;
  NodeFractions p;
};

template <int Dim>
struct Trajectory {
  std::vector<OdeSample<Dim>> samples;
  Termination reason = Termination::horizon;
  std::optional<double> t_eta;
  double t_end = 0.0;

  const OdeSample<Dim>& back() const { return samples.back(); }
};

struct FractionSample {
  double t;
  NodeFractions p;
};

namespace detail {

inline bool eligible(ConsensusTarget target, int slot) {
  return slot == kPA || target == ConsensusTarget::either;
}

// First s in [0, 1] where the cubic Hermite interpolant through (y0, d0) and
// (y1, d1) over a step of length h reaches eta. Requires y0 < eta <= y1.
inline double hermite_crossing(double y0, double y1, double d0, double d1,
                               double h, double eta) {
  auto value = [&](double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 +
           (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (value(mid) >= eta)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// First time p_A (or p_B, for ConsensusTarget::either) reaches eta, by
/// linear interpolation between consecutive samples.
inline std::optional<double> detect_eta_crossing(
    std::span<const FractionSample> samples, double eta,
    ConsensusTarget target = ConsensusTarget::either) {
  if (samples.empty()) return std::nullopt;
  for (int slot : {kPA, kPB})
    if (detail::eligible(target, slot) && samples.front().p[slot] >= eta)
      return samples.front().t;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    std::optional<double> best;
    for (int slot : {kPA, kPB}) {
      if (!detail::eligible(target, slot)) continue;
      const double y0 = a.p[slot], y1 = b.p[slot];
      if (y0 < eta && y1 >= eta) {
        const double t = a.t + (b.t - a.t) * (eta - y0) / (y1 - y0);
        if (!best || t < *best) best = t;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

/// Integrates until the eta crossing (if configured), ||rhs||_inf below
/// steady_tol, or t_max, whichever comes first. Every step is checked for the
/// crossing; its time is refined on the cubic Hermite interpolant of the step.
template <int Dim>
Trajectory<Dim> integrate(const OdeSystem<Dim>& sys,
                          const Vector<double, Dim>& x0,
                          const OdeConfig& cfg) {
  using State = Vector<double, Dim>;
  cfg.validate();

  State x = x0;
  if (!apply_domain_guard<Dim>(x, sys.mass)) {
    std::ostringstream os;
    os << "initial state outside the simplex: " << x0.transpose();
    throw ParameterError(os.str());
  }

  Trajectory<Dim> traj;
  const double dt = cfg.dt;
  const auto n_max = static_cast<std::int64_t>(std::ceil(cfg.t_max / dt - 1e-9));
  const std::int64_t stride =
      cfg.sample_interval > 0.0
          ? std::max<std::int64_t>(1, std::llround(cfg.sample_interval / dt))
          : 0;

  State f = sys.rhs(x);
  NodeFractions p = sys.fractions(x);
  traj.samples.push_back({0.0, x, p});

  auto finish = [&](Termination why, double t) {
    traj.reason = why;
    traj.t_end = t;
    if (traj.samples.back().t != t) traj.samples.push_back({t, x, p});
    return traj;
  };

  if (cfg.eta) {
    for (int slot : {kPA, kPB})
      if (detail::eligible(cfg.target, slot) && p[slot] >= *cfg.eta) {
        traj.t_eta = 0.0;
        return finish(Termination::eta_crossed, 0.0);
      }
  }

  for (std::int64_t n = 1;; ++n) {
    const double t0 = static_cast<double>(n - 1) * dt;
    const double t = static_cast<double>(n) * dt;

    const State k1 = f;
    const State k2 = sys.rhs(x + 0.5 * dt * k1);
    const State k3 = sys.rhs(x + 0.5 * dt * k2);
    const State k4 = sys.rhs(x + dt * k3);
    State next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!apply_domain_guard<Dim>(next, sys.mass)) {
      std::ostringstream os;
      os << "state left the simplex at t=" << t << ": " << next.transpose();
      throw IntegrationError(os.str(), t);
    }
    const State f_next = sys.rhs(next);
    const NodeFractions p_next = sys.fractions(next);

    if (cfg.eta) {
      const NodeFractions dp0 = sys.projection * f;
      const NodeFractions dp1 = sys.projection * f_next;
      std::optional<double> best;
      for (int slot : {kPA, kPB}) {
        if (!detail::eligible(cfg.target, slot)) continue;
        if (p[slot] < *cfg.eta && p_next[slot] >= *cfg.eta) {
          const double s = detail::hermite_crossing(
              p[slot], p_next[slot], dp0[slot], dp1[slot], dt, *cfg.eta);
          const double tc = t0 + s * dt;
          if (!best || tc < *best) best = tc;
        }
      }
      x = next, f = f_next, p = p_next;
      if (best) {
        traj.t_eta = best;
        return finish(Termination::eta_crossed, t);
      }
    } else {
      x = next, f = f_next, p = p_next;
    }

    if (stride > 0 && n % stride == 0) traj.samples.push_back({t, x, p});
    if (f.template lpNorm<Eigen::Infinity>() < cfg.steady_tol)
      return finish(Termination::steady, t);
    if (n >= n_max) return finish(Termination::horizon, t);
  }
}

template <int Dim>
struct SteadyState {
  Vector<double, Dim> x;
  bool converged = false;
  double t_end = 0.0;
};

/// Runs to ||rhs||_inf < steady_tol; on reaching the horizon returns the last
/// state with converged = false. The eta setting of cfg is ignored.
template <int Dim>
SteadyState<Dim> steady_state(const OdeSystem<Dim>& sys,
                              const Vector<double, Dim>& x0, OdeConfig cfg) {
  cfg.eta.reset();
  cfg.sample_interval = 0.0;
  const auto traj = integrate(sys, x0, cfg);
  return {traj.back().x, traj.reason == Termination::steady, traj.t_end};
}

// Factories for the three vector fields (defined in systems.cpp).
OdeSystem<6> pair_system6(double k_avg);
OdeSystem<9> pair_system9(double k_avg, double cc);
OdeSystem<3> meanfield_system(double committed);

}  // namespace ngpair
