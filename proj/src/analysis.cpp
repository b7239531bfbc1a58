#include <ngpair/analysis.hpp>
#include <ngpair/errors.hpp>
#include <ngpair/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ngpair {

void TippingConfig::validate() const {
  if (!(p_tol > 0.0)) throw ParameterError("p tolerance must be positive");
  if (!(pb_threshold > 0.0 && pb_threshold < 1.0))
    throw ParameterError("p_B threshold must lie in (0, 1)");
  if (!(p_max > 0.0 && p_max < 1.0))
    throw ParameterError("p_max must lie in (0, 1)");
  ode.validate();
}

CommittedLinkState all_b_start(double p) {
  if (!(p >= 0.0 && p < 1.0))
    throw ParameterError("committed fraction must lie in [0, 1)");
  return embed_committed(NodeFractions(p, 1.0 - p, 0.0), p);
}

SweepRow stable_pB(double k_avg, double p, const OdeConfig& ode) {
  const CommittedLinkState start = all_b_start(p);
  const auto sys = pair_system9(k_avg, start.cc);
  const auto st = steady_state(sys, start.l, ode);
  const double pb = std::clamp(sys.fractions(st.x)[kPB], 0.0, 1.0);
  return {k_avg, p, pb, st.converged, st.t_end};
}

TippingResult find_tipping(double k_avg, const TippingConfig& cfg) {
  cfg.validate();
  TippingResult res;
  res.k_avg = k_avg;
  auto above = [&](double p) {
    res.probes.push_back(stable_pB(k_avg, p, cfg.ode));
    ++res.evaluations;
    return res.probes.back().p_b_star < cfg.pb_threshold;
  };

  double lo = 0.0, hi = cfg.p_max;
  const bool lo_above = above(lo);
  const bool hi_above = above(hi);
  if (lo_above || !hi_above)
    throw NotFoundError("no tipping point in [0, " + std::to_string(cfg.p_max) +
                        "] at k=" + std::to_string(k_avg));
  while (hi - lo > cfg.p_tol) {
    const double mid = 0.5 * (lo + hi);
    if (above(mid))
      hi = mid;
    else
      lo = mid;
  }
  res.p_low = lo;
  res.p_high = hi;
  res.p_c = 0.5 * (lo + hi);
  return res;
}

std::vector<TippingRow> pc_vs_k(std::vector<double> k_list,
                                const TippingConfig& cfg) {
  cfg.validate();
  std::sort(k_list.begin(), k_list.end());
  std::vector<TippingRow> rows(k_list.size());
  parallel_for(k_list.size(), [&](std::size_t i) {
    rows[i].k_avg = k_list[i];
    try {
      rows[i].result = find_tipping(k_list[i], cfg);
    } catch (const NotFoundError& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

std::vector<SweepRow> sweep_pB(double k_avg, const std::vector<double>& p_grid,
                               const OdeConfig& ode) {
  std::vector<SweepRow> rows(p_grid.size());
  parallel_for(p_grid.size(), [&](std::size_t i) {
    rows[i] = stable_pB(k_avg, p_grid[i], ode);
  });
  return rows;
}

// ---------------------------------------------------------------------------

std::optional<double> ode_committed_consensus_time(double k_avg, double p,
                                                   double eta, OdeConfig ode) {
  const CommittedLinkState start = all_b_start(p);
  ode.eta = eta;
  ode.target = ConsensusTarget::a_only;
  ode.sample_interval = 0.0;
  return integrate(pair_system9(k_avg, start.cc), start.l, ode).t_eta;
}

NodeFractions seeded_symmetric_start(std::size_t n) {
  if (n < 1) throw ParameterError("n must be positive");
  const double a = 0.5 + 0.5 / std::sqrt(static_cast<double>(n));
  return {a, 1.0 - a, 0.0};
}

std::optional<double> ode_symmetric_consensus_time(double k_avg, std::size_t n,
                                                   double eta, OdeConfig ode) {
  ode.eta = eta;
  ode.target = ConsensusTarget::either;
  ode.sample_interval = 0.0;
  return integrate(pair_system6(k_avg),
                   embed_product6<double>(seeded_symmetric_start(n)), ode)
      .t_eta;
}

std::optional<double> meanfield_symmetric_consensus_time(std::size_t n,
                                                         double eta,
                                                         OdeConfig ode) {
  ode.eta = eta;
  ode.target = ConsensusTarget::either;
  ode.sample_interval = 0.0;
  return integrate(meanfield_system(0.0), seeded_symmetric_start(n), ode).t_eta;
}

std::vector<CurveRow> consensus_time_curve(double k_avg,
                                           const std::vector<double>& p_grid,
                                           SimConfig base) {
  for (double p : p_grid)
    if (!(p > 0.0 && p <= 0.2))
      throw ParameterError(
          "consensus-time grid needs committed fractions in (0, 0.2]");
  base.k_avg = k_avg;
  base.sample_interval = 0.0;
  std::vector<CurveRow> rows;
  for (double p : p_grid) {
    SimConfig cfg = base;
    cfg.committed_fraction = p;
    const EnsembleStats stats = ensemble(cfg);
    CurveRow row;
    row.p = p;
    row.mc_mean = stats.mean_t;
    row.mc_rel_std = stats.rel_std_t;
    row.censored_fraction = 1.0 - stats.fraction_reached;
    row.ode_time = ode_committed_consensus_time(k_avg, p, cfg.eta);
    rows.push_back(row);
  }
  return rows;
}

std::vector<SizeRow> consensus_time_vs_n(double k_avg,
                                         const std::vector<std::size_t>& n_list,
                                         SimConfig base) {
  base.k_avg = k_avg;
  base.committed_fraction = 0.0;
  base.sample_interval = 0.0;
  std::vector<SizeRow> rows;
  for (std::size_t n : n_list) {
    SimConfig cfg = base;
    cfg.n = n;
    const EnsembleStats stats = ensemble(cfg);
    SizeRow row;
    row.k_avg = k_avg;
    row.n = n;
    row.mc_mean = stats.mean_t;
    row.mc_rel_std = stats.rel_std_t;
    row.fraction_reached = stats.fraction_reached;
    row.pair_time = ode_symmetric_consensus_time(k_avg, n, cfg.eta);
    row.meanfield_time = meanfield_symmetric_consensus_time(n, cfg.eta);
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------

namespace {

// Node fractions on the grid t = j * interval; a trajectory that stopped at
// a fixed point keeps its last value.
template <int Dim>
std::vector<NodeFractions> on_grid(const Trajectory<Dim>& traj,
                                   std::size_t length) {
  std::vector<NodeFractions> out;
  out.reserve(length);
  for (std::size_t j = 0; j < length; ++j)
    out.push_back(j < traj.samples.size() ? traj.samples[j].p
                                          : traj.samples.back().p);
  return out;
}

NodeFractions mirrored(const NodeFractions& p) {
  const double single = 0.5 * (p[kPA] + p[kPB]);
  return {single, single, p[kPAB]};
}

}  // namespace

Overlay trajectory_compare(double k_avg, SimConfig base) {
  base.k_avg = k_avg;
  base.committed_fraction = 0.0;
  if (!(base.sample_interval > 0.0))
    throw ParameterError("trajectory comparison needs a sample interval");
  const EnsembleStats stats = ensemble(base);

  Overlay out;
  out.initial = stats.mean_trajectory.front().mean;
  out.window_end = std::numeric_limits<double>::infinity();
  for (const auto& r : stats.runs)
    if (r.reached) out.window_end = std::min(out.window_end, r.t_eta);
  if (!std::isfinite(out.window_end))
    out.window_end = stats.mean_trajectory.back().t;

  const std::size_t length = stats.mean_trajectory.size();
  OdeConfig ode;
  ode.sample_interval = base.sample_interval;
  ode.t_max = base.sample_interval * static_cast<double>(length);
  ode.steady_tol = 1e-14;

  // Each run's measured initial fractions seed its own ODE solutions; the
  // overlay compares ensemble means.
  const std::size_t runs = stats.results.size();
  std::vector<std::vector<NodeFractions>> pair_runs(runs), mf_runs(runs);
  parallel_for(runs, [&](std::size_t r) {
    const NodeFractions p0 = stats.results[r].trajectory.front().p;
    pair_runs[r] = on_grid(
        integrate(pair_system6(k_avg), embed_product6<double>(p0), ode), length);
    mf_runs[r] = on_grid(integrate(meanfield_system(0.0), p0, ode), length);
  });
  std::vector<NodeFractions> pair(length, NodeFractions::Zero()),
      mf(length, NodeFractions::Zero());
  for (std::size_t r = 0; r < runs; ++r)
    for (std::size_t j = 0; j < length; ++j) {
      pair[j] += pair_runs[r][j] / static_cast<double>(runs);
      mf[j] += mf_runs[r][j] / static_cast<double>(runs);
    }

  auto gap = [](const NodeFractions& a, const NodeFractions& b) {
    return (a - b).lpNorm<Eigen::Infinity>();
  };
  for (std::size_t j = 0; j < length; ++j) {
    const auto& m = stats.mean_trajectory[j];
    out.rows.push_back({m.t, m.mean, pair[j], mf[j]});
    if (m.t <= out.window_end) {
      out.pair_discrepancy = std::max(out.pair_discrepancy, gap(m.mean, pair[j]));
      out.meanfield_discrepancy =
          std::max(out.meanfield_discrepancy, gap(m.mean, mf[j]));
      const NodeFractions mc = mirrored(m.mean);
      out.pair_discrepancy_mirrored =
          std::max(out.pair_discrepancy_mirrored, gap(mc, mirrored(pair[j])));
      out.meanfield_discrepancy_mirrored =
          std::max(out.meanfield_discrepancy_mirrored, gap(mc, mirrored(mf[j])));
    }
  }
  return out;
}

}  // namespace ngpair
