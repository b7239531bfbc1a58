#pragma once

#include <ngpair/integrator.hpp>
#include <ngpair/simulation.hpp>

#include <optional>
#include <string>
#include <vector>

namespace ngpair {

struct SweepRow {
  double k_avg = 0.0;
  double p = 0.0;
  double p_b_star = 0.0;
  bool converged = false;
  double t_end = 0.0;
};

struct TippingConfig {
  double p_tol = 1e-4;
  double pb_threshold = 0.01;  // "above tipping" when p_B* falls below this
  double p_max = 0.2;
  OdeConfig ode;

  void validate() const;
};

struct TippingResult {
  double k_avg = 0.0;
  double p_c = 0.0;
  double p_low = 0.0;
  double p_high = 0.0;
  int evaluations = 0;
  std::vector<SweepRow> probes;  // in evaluation order
};

/// Committed system started from all susceptible agents holding B (product
/// measure), run to its steady state.
CommittedLinkState all_b_start(double p);
SweepRow stable_pB(double k_avg, double p, const OdeConfig& ode = {});

/// Bisection on p over [0, p_max] for the change from p_B* >= threshold to
/// p_B* < threshold. Throws NotFoundError when both ends classify alike.
TippingResult find_tipping(double k_avg, const TippingConfig& cfg = {});

struct TippingRow {
  double k_avg = 0.0;
  std::optional<TippingResult> result;
  std::string error;  // set when result is empty
};

/// One find_tipping per degree, sorted by degree.
std::vector<TippingRow> pc_vs_k(std::vector<double> k_list,
                                const TippingConfig& cfg = {});

/// p_B* over a grid of committed fractions.
std::vector<SweepRow> sweep_pB(double k_avg, const std::vector<double>& p_grid,
                               const OdeConfig& ode = {});

// ---------------------------------------------------------------------------

/// A-consensus time of the committed pair ODE from the all-B start; empty if
/// the run settles (or hits the horizon) without crossing.
std::optional<double> ode_committed_consensus_time(double k_avg, double p,
                                                   double eta = 0.95,
                                                   OdeConfig ode = {});

/// Symmetric-case predictions seeded with the binomial fluctuation:
/// p_A(0) = 1/2 + 1/(2 sqrt(n)), p_B(0) = 1 - p_A(0).
NodeFractions seeded_symmetric_start(std::size_t n);
std::optional<double> ode_symmetric_consensus_time(double k_avg, std::size_t n,
                                                   double eta = 0.95,
                                                   OdeConfig ode = {});
std::optional<double> meanfield_symmetric_consensus_time(std::size_t n,
                                                         double eta = 0.95,
                                                         OdeConfig ode = {});

struct CurveRow {
  double p = 0.0;
  std::optional<double> mc_mean;     // over runs that reached consensus
  std::optional<double> mc_rel_std;
  double censored_fraction = 0.0;
  std::optional<double> ode_time;
};

/// Consensus time around the tipping point: simulation ensemble per p (time
/// cap cfg.max_time_per_node) next to the committed ODE prediction.
std::vector<CurveRow> consensus_time_curve(double k_avg,
                                           const std::vector<double>& p_grid,
                                           SimConfig base);

struct SizeRow {
  double k_avg = 0.0;
  std::size_t n = 0;
  std::optional<double> mc_mean;
  std::optional<double> mc_rel_std;
  double fraction_reached = 0.0;
  std::optional<double> pair_time;
  std::optional<double> meanfield_time;
};

/// Symmetric consensus times versus system size.
std::vector<SizeRow> consensus_time_vs_n(double k_avg,
                                         const std::vector<std::size_t>& n_list,
                                         SimConfig base);

// ---------------------------------------------------------------------------

struct OverlayRow {
  double t = 0.0;
  NodeFractions mc;
  NodeFractions pair;
  NodeFractions meanfield;
};

struct Overlay {
  std::vector<OverlayRow> rows;
  double window_end = 0.0;        // comparison window is [0, window_end]
  double pair_discrepancy = 0.0;  // sup-norm over the window
  double meanfield_discrepancy = 0.0;
  // Same norms after replacing p_A and p_B by their average on both sides.
  // At p = 0 the dynamics are A/B symmetric, so this removes the sampling
  // noise of which opinion each run drifts toward.
  double pair_discrepancy_mirrored = 0.0;
  double meanfield_discrepancy_mirrored = 0.0;
  NodeFractions initial = NodeFractions::Zero();
};

/// Simulation ensemble mean next to the pair and mean-field ODE solutions.
/// Every run's measured initial node fractions seed one ODE solution of each
/// kind and the solutions are averaged like the runs. The window ends at the
/// earliest eta-consensus time of any run.
Overlay trajectory_compare(double k_avg, SimConfig base);

}  // namespace ngpair
