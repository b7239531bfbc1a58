#include <ngpair/errors.hpp>
#include <ngpair/parallel.hpp>
#include <ngpair/simulation.hpp>

#include <algorithm>
#include <cmath>

namespace ngpair {

void SimConfig::validate() const {
  if (n < 2) throw ParameterError("n must be at least 2");
  if (!(k_avg > 0.0)) throw ParameterError("k must be positive");
  if (!(committed_fraction >= 0.0 && committed_fraction < 1.0))
    throw ParameterError("committed fraction must lie in [0, 1)");
  if (!(eta > 0.5 && eta <= 1.0)) throw ParameterError("eta must lie in (1/2, 1]");
  if (runs < 1) throw ParameterError("runs must be at least 1");
  if (!(max_time_per_node > 0.0))
    throw ParameterError("time cap must be positive");
  if (!(sample_interval >= 0.0))
    throw ParameterError("sample interval must be nonnegative");
}

OpinionCounts OpinionCounts::of(const OpinionState& st) {
  OpinionCounts c;
  for (Opinion o : st.opinions) {
    switch (o) {
      case Opinion::A: ++c.a; break;
      case Opinion::B: ++c.b; break;
      case Opinion::AB: ++c.mixed; break;
      case Opinion::Committed:
        ++c.a;
        ++c.committed;
        break;
    }
  }
  return c;
}

NodeFractions OpinionCounts::fractions() const {
  const double n = static_cast<double>(total());
  return {static_cast<double>(a) / n, static_cast<double>(b) / n,
          static_cast<double>(mixed) / n};
}

namespace {

void set_opinion(OpinionState& st, NodeId v, Opinion to, OpinionCounts* c) {
  const Opinion from = st.opinions[v];
  if (from == to) return;
  if (c) {
    auto bucket = [c](Opinion o) -> std::size_t& {
      switch (o) {
        case Opinion::A: return c->a;
        case Opinion::B: return c->b;
        default: return c->mixed;
      }
    };
    --bucket(from);
    ++bucket(to);
  }
  st.opinions[v] = to;
}

bool holds(Opinion o, Word w) {
  switch (o) {
    case Opinion::A:
    case Opinion::Committed: return w == Word::A;
    case Opinion::B: return w == Word::B;
    case Opinion::AB: return true;
  }
  return false;
}

Opinion single(Word w) { return w == Word::A ? Opinion::A : Opinion::B; }

}  // namespace

Word utter(Opinion speaker, bool coin) {
  switch (speaker) {
    case Opinion::A:
    case Opinion::Committed: return Word::A;
    case Opinion::B: return Word::B;
    case Opinion::AB: return coin ? Word::B : Word::A;
  }
  return Word::A;
}

bool interact(OpinionState& st, NodeId speaker, NodeId listener, Word word,
              OpinionCounts* counts) {
  const Opinion s = st.opinions[speaker];
  const Opinion l = st.opinions[listener];
  if (l == Opinion::Committed && word == Word::B) return false;
  if (!holds(l, word)) {
    set_opinion(st, listener, Opinion::AB, counts);
    return true;
  }
  bool changed = false;
  if (s != Opinion::Committed && s != single(word)) {
    set_opinion(st, speaker, single(word), counts);
    changed = true;
  }
  if (l != Opinion::Committed && l != single(word)) {
    set_opinion(st, listener, single(word), counts);
    changed = true;
  }
  return changed;
}

namespace {

// Interaction drawing shared by the free step() and run().
struct Drawer {
  const Network& net;
  std::uniform_int_distribution<NodeId> pick_node;
  bool swap_coin;

  Drawer(const Network& g, bool swap)
      : net(g),
        pick_node(0, static_cast<NodeId>(g.node_count() - 1)),
        swap_coin(swap) {
    if (g.edge_count() == 0)
      throw DegenerateNetworkError("dynamics on a network without edges");
  }

  void operator()(OpinionState& st, Rng& rng, OpinionCounts* counts) {
    NodeId speaker = pick_node(rng);
    while (net.degree(speaker) == 0) speaker = pick_node(rng);
    const auto& nbrs = net.neighbors(speaker);
    std::uniform_int_distribution<std::size_t> pick(0, nbrs.size() - 1);
    const NodeId listener = nbrs[pick(rng)];
    const Opinion so = st.opinions[speaker];
    bool coin = false;
    if (so == Opinion::AB) coin = ((rng() >> 63) != 0) != swap_coin;
    interact(st, speaker, listener, utter(so, coin), counts);
  }
};

std::size_t threshold_count(double eta, std::size_t n) {
  return static_cast<std::size_t>(
      std::ceil(eta * static_cast<double>(n) - 1e-9));
}

}  // namespace

void step(const Network& net, OpinionState& st, Rng& rng) {
  Drawer draw(net, false);
  draw(st, rng, nullptr);
}

SimResult run(const Network& net, const OpinionState& init,
              const SimConfig& cfg, Rng& rng) {
  if (init.opinions.size() != net.node_count())
    throw ParameterError("opinion state size does not match the network");
  if (!(cfg.eta > 0.5 && cfg.eta <= 1.0))
    throw ParameterError("eta must lie in (1/2, 1]");
  if (!(cfg.max_time_per_node > 0.0))
    throw ParameterError("time cap must be positive");

  const std::size_t n = net.node_count();
  const double nd = static_cast<double>(n);
  const std::size_t need = threshold_count(cfg.eta, n);
  const bool either = init.committed_count == 0;

  OpinionState st = init;
  OpinionCounts counts = OpinionCounts::of(st);
  auto at_consensus = [&] {
    return counts.a >= need || (either && counts.b >= need);
  };

  SimResult res;
  const bool sampling = cfg.sample_interval > 0.0;
  const double stride = cfg.sample_interval * nd;
  std::size_t next_index = 1;
  if (sampling) res.trajectory.push_back({0.0, counts.fractions()});

  if (at_consensus()) {
    res.reached = true;
    res.t_eta = 0.0;
    res.final_fractions = counts.fractions();
    return res;
  }

  Drawer draw(net, cfg.swap_word_choice);
  const double cap = cfg.max_time_per_node * nd;
  for (std::int64_t it = 1;; ++it) {
    draw(st, rng, &counts);
    const double done = static_cast<double>(it);
    if (sampling && done >= stride * static_cast<double>(next_index)) {
      res.trajectory.push_back(
          {cfg.sample_interval * static_cast<double>(next_index),
           counts.fractions()});
      ++next_index;
    }
    if (at_consensus()) {
      res.reached = true;
      res.t_eta = done / nd;
      break;
    }
    if (done > cap) {
      res.reached = false;
      res.t_eta = cfg.max_time_per_node;
      break;
    }
  }
  res.final_fractions = counts.fractions();
  return res;
}

// ---------------------------------------------------------------------------

Instance default_instance(const SimConfig& cfg, std::uint64_t run_seed) {
  Instance inst;
  inst.net = generate_er(cfg.n, cfg.k_avg, derive_seed(run_seed, 0));
  const InitMode mode = cfg.committed_fraction > 0.0 ? InitMode::committed
                                                     : InitMode::symmetric;
  inst.init = assign_opinions(inst.net, cfg.committed_fraction, mode,
                              derive_seed(run_seed, 1));
  return inst;
}

EnsembleStats ensemble(const SimConfig& cfg) {
  return ensemble(cfg, [&cfg](std::size_t, std::uint64_t run_seed) {
    return default_instance(cfg, run_seed);
  });
}

EnsembleStats ensemble(const SimConfig& cfg, const InstanceFactory& factory) {
  cfg.validate();
  EnsembleStats out;
  out.runs.resize(cfg.runs);
  out.results.resize(cfg.runs);

  parallel_for(cfg.runs, [&](std::size_t r) {
    const std::uint64_t run_seed = derive_seed(cfg.seed, r);
    const Instance inst = factory(r, run_seed);
    Rng rng(derive_seed(run_seed, 2));
    out.results[r] = run(inst.net, inst.init, cfg, rng);
    out.runs[r] = {r, run_seed, out.results[r].reached, out.results[r].t_eta};
  });

  std::vector<double> times;
  for (const auto& rec : out.runs)
    if (rec.reached) times.push_back(rec.t_eta);
  out.fraction_reached =
      static_cast<double>(times.size()) / static_cast<double>(cfg.runs);
  if (!times.empty()) {
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    double var = 0.0;
    if (times.size() > 1) {
      for (double t : times) var += (t - mean) * (t - mean);
      var /= static_cast<double>(times.size() - 1);
    }
    out.mean_t = mean;
    out.rel_std_t = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
  }
  if (cfg.sample_interval > 0.0)
    out.mean_trajectory = mean_trajectory(out.results, cfg.sample_interval);
  return out;
}

std::vector<MeanPoint> mean_trajectory(const std::vector<SimResult>& results,
                                       double interval) {
  std::size_t length = 0;
  for (const auto& r : results) length = std::max(length, r.trajectory.size());
  std::vector<MeanPoint> out;
  out.reserve(length);
  const double count = static_cast<double>(results.size());
  for (std::size_t j = 0; j < length; ++j) {
    NodeFractions sum = NodeFractions::Zero(), sq = NodeFractions::Zero();
    for (const auto& r : results) {
      const NodeFractions& p =
          j < r.trajectory.size() ? r.trajectory[j].p : r.final_fractions;
      sum += p;
      sq += p.cwiseProduct(p);
    }
    const NodeFractions mean = sum / count;
    NodeFractions var = (sq / count - mean.cwiseProduct(mean)).cwiseMax(0.0);
    out.push_back({interval * static_cast<double>(j), mean, var.cwiseSqrt()});
  }
  return out;
}

}  // namespace ngpair
