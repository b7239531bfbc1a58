#pragma once

// Agent-based Original/Direct binary Naming Game on a fixed network.

#include <ngpair/link_types.hpp>
#include <ngpair/network.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace ngpair {

using Rng = std::mt19937_64;

enum class Word : std::uint8_t { A, B };

struct SimConfig {
  std::size_t n = 500;
  double k_avg = 5.0;
  double committed_fraction = 0.0;
  double eta = 0.95;
  std::size_t runs = 1;
  std::uint64_t seed = 0;
  double max_time_per_node = 1e4;
  double sample_interval = 1.0;  // 0 disables trajectory sampling
  // Inverts the coin of mixed (AB) speakers. Running a relabeled initial
  // state with this set reproduces the mirrored trajectory.
  bool swap_word_choice = false;

  void validate() const;
  ConsensusTarget target() const {
    return committed_fraction > 0.0 ? ConsensusTarget::a_only
                                    : ConsensusTarget::either;
  }
};

/// Node counts by opinion; committed nodes are also counted in `a`.
struct OpinionCounts {
  std::size_t a = 0, b = 0, mixed = 0, committed = 0;

  static OpinionCounts of(const OpinionState& st);
  std::size_t total() const { return a + b + mixed; }
  NodeFractions fractions() const;
};

/// Applies the outcome of `speaker` uttering `word` to `listener`. The caller
/// guarantees the speaker holds the word. Returns true if any opinion changed.
bool interact(OpinionState& st, NodeId speaker, NodeId listener, Word word,
              OpinionCounts* counts = nullptr);

/// Word uttered by an opinion; mixed speakers use `coin`.
Word utter(Opinion speaker, bool coin);

/// One speaker-listener interaction with random speaker, listener and word.
/// Speakers without neighbors are redrawn.
void step(const Network& net, OpinionState& st, Rng& rng);

struct TrajectoryPoint {
  double t;
  NodeFractions p;
};

struct SimResult {
  bool reached = false;
  double t_eta = 0.0;  // max_time_per_node when not reached
  NodeFractions final_fractions = NodeFractions::Zero();
  std::vector<TrajectoryPoint> trajectory;
};

/// Iterates interactions until the eta-consensus or the time cap.
SimResult run(const Network& net, const OpinionState& init,
              const SimConfig& cfg, Rng& rng);

// ---------------------------------------------------------------------------

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool reached = false;
  double t_eta = 0.0;
};

struct MeanPoint {
  double t;
  NodeFractions mean;
  NodeFractions std;
};

struct EnsembleStats {
  std::vector<RunRecord> runs;
  std::vector<SimResult> results;
  double fraction_reached = 0.0;
  std::optional<double> mean_t;     // over reached runs
  std::optional<double> rel_std_t;  // sample std / mean over reached runs
  std::vector<MeanPoint> mean_trajectory;
};

struct Instance {
  Network net;
  OpinionState init;
};

/// Builds the network and initial state of run `run` from its stream seed.
using InstanceFactory =
    std::function<Instance(std::size_t run, std::uint64_t run_seed)>;

/// Fresh ER network and initial state per run: symmetric A/B when the
/// committed fraction is 0, committed-A plus all-B otherwise.
Instance default_instance(const SimConfig& cfg, std::uint64_t run_seed);

/// Independent runs with stream seeds derive_seed(cfg.seed, run). Results
/// are independent of the worker count.
EnsembleStats ensemble(const SimConfig& cfg);
EnsembleStats ensemble(const SimConfig& cfg, const InstanceFactory& factory);

/// Pointwise mean over runs on the grid t = j * interval; finished runs
/// contribute their final state.
std::vector<MeanPoint> mean_trajectory(const std::vector<SimResult>& results,
                                       double interval);

}  // namespace ngpair
