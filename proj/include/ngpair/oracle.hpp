#pragma once

// Independent checkers for the pair-approximation vector field and for the
// simulator. Nothing here reads the transcribed matrices of pair_ode.hpp:
// the expected link change is rebuilt from the interaction rules alone.

#include <ngpair/errors.hpp>
#include <ngpair/link_types.hpp>
#include <ngpair/network.hpp>

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace ngpair::oracle {

enum class Mode { symmetric, committed };

// Agent memories. C is a committed A agent.
enum class Memory : int { A = 0, B, AB, C };

namespace detail {

inline std::vector<Memory> memories(Mode mode) {
  if (mode == Mode::symmetric) return {Memory::A, Memory::B, Memory::AB};
  return {Memory::C, Memory::A, Memory::B, Memory::AB};
}

inline int dimension(Mode mode) { return mode == Mode::symmetric ? 6 : 9; }

// Slot of an unordered memory pair in the macrostate ordering; -1 for the
// untracked C-C pair.
inline int slot(Mode mode, Memory x, Memory y) {
  if (static_cast<int>(x) > static_cast<int>(y)) std::swap(x, y);
  const int base = mode == Mode::symmetric ? 0 : 3;
  if (y == Memory::C) {
    if (mode == Mode::symmetric)
      throw ParameterError("committed memory in the symmetric model");
    switch (x) {
      case Memory::A: return 0;
      case Memory::B: return 1;
      case Memory::AB: return 2;
      case Memory::C: return -1;
    }
  }
  // Pairs among {A, B, AB} in the order AA, AB, A-AB, BB, B-AB, AB-AB.
  static constexpr int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return base + table[static_cast<int>(x)][static_cast<int>(y)];
}

inline std::vector<Memory> words(Memory m) {
  switch (m) {
    case Memory::A:
    case Memory::C: return {Memory::A};
    case Memory::B: return {Memory::B};
    case Memory::AB: return {Memory::A, Memory::B};
  }
  return {};
}

inline bool knows(Memory m, Memory word) {
  for (Memory w : words(m))
    if (w == word) return true;
  return false;
}

}  // namespace detail

/// Outcome of one utterance: new speaker and listener memories. A listener
/// that lacks the word adds it; otherwise both collapse to the word. Committed
/// agents never change.
struct Outcome {
  Memory speaker, listener;
};

inline Outcome communicate(Memory speaker, Memory listener, Memory word) {
  auto collapse = [word](Memory m) { return m == Memory::C ? m : word; };
  if (listener == Memory::C) {
    // A committed listener only "knows" A.
    if (word == Memory::A) return {collapse(speaker), listener};
    return {speaker, listener};
  }
  if (!detail::knows(listener, word)) return {speaker, Memory::AB};
  return {collapse(speaker), collapse(listener)};
}

/// One weighted communication type: who speaks to whom and which word.
template <typename Scalar>
struct CommunicationEvent {
  Memory speaker, listener, word;
  Scalar probability;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> direct;
  std::optional<std::pair<Memory, Memory>> speaker_change;
  std::optional<std::pair<Memory, Memory>> listener_change;
};

/// Link correspondence when a node switches `from` -> `to`: each neighbor
/// column moves one unit of mass from link (from, Z) to link (to, Z).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> correspondence(
    Mode mode, Memory from, Memory to) {
  const auto mems = detail::memories(mode);
  const int dim = detail::dimension(mode);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          dim, static_cast<Eigen::Index>(mems.size()));
  for (std::size_t z = 0; z < mems.size(); ++z) {
    const int before = detail::slot(mode, from, mems[z]);
    const int after = detail::slot(mode, to, mems[z]);
    if (before >= 0) q(before, static_cast<Eigen::Index>(z)) -= Scalar(1);
    if (after >= 0) q(after, static_cast<Eigen::Index>(z)) += Scalar(1);
  }
  return q;
}

/// Conditional neighbor distribution of memory x under the pair closure:
/// P(Z|x) proportional to the number of (x, Z) link endpoints at x. Empty
/// when x has no links.
template <typename Scalar>
std::optional<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> neighbor_field(
    Mode mode, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& l,
    const Scalar& cc, Memory x) {
  const auto mems = detail::memories(mode);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(
      static_cast<Eigen::Index>(mems.size()));
  for (std::size_t z = 0; z < mems.size(); ++z) {
    const int s = detail::slot(mode, x, mems[z]);
    const Scalar mass = s >= 0 ? l[s] : cc;
    w[static_cast<Eigen::Index>(z)] = x == mems[z] ? Scalar(2) * mass : mass;
  }
  const Scalar total = w.sum();
  if (!(total > Scalar(0))) return std::nullopt;
  return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>(w / total);
}

/// Every (speaker, listener, word) event with its probability per
/// interaction and its direct link change. The speaker is a uniform node and
/// the listener a uniform neighbor, so P(x speaks to y) = p_x P(y|x) with
/// p_x = (endpoint mass of x) / 2.
template <typename Scalar>
std::vector<CommunicationEvent<Scalar>> enumerate_events(
    Mode mode, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& l,
    const Scalar& cc = Scalar(0)) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const auto mems = detail::memories(mode);
  const int dim = detail::dimension(mode);
  std::vector<CommunicationEvent<Scalar>> events;
  for (Memory x : mems) {
    Scalar endpoints(0);
    for (Memory z : mems) {
      const int s = detail::slot(mode, x, z);
      const Scalar mass = s >= 0 ? l[s] : cc;
      endpoints += x == z ? Scalar(2) * mass : mass;
    }
    const Scalar p_node = endpoints / Scalar(2);
    const auto field = neighbor_field<Scalar>(mode, l, cc, x);
    if (!field) continue;
    const auto spoken = detail::words(x);
    for (std::size_t yi = 0; yi < mems.size(); ++yi) {
      const Memory y = mems[yi];
      const Scalar p_pair = p_node * (*field)[static_cast<Eigen::Index>(yi)];
      for (Memory word : spoken) {
        CommunicationEvent<Scalar> ev{x, y, word,
                                      p_pair / Scalar(static_cast<int>(spoken.size())),
                                      Vec::Zero(dim), std::nullopt, std::nullopt};
        const Outcome out = communicate(x, y, word);
        const int before = detail::slot(mode, x, y);
        const int after = detail::slot(mode, out.speaker, out.listener);
        if (before >= 0) ev.direct[before] -= Scalar(1);
        if (after >= 0) ev.direct[after] += Scalar(1);
        if (out.speaker != x) ev.speaker_change = {{x, out.speaker}};
        if (out.listener != y) ev.listener_change = {{y, out.listener}};
        events.push_back(std::move(ev));
      }
    }
  }
  return events;
}

/// Expected link-fraction drift per unit time, N/M * E[dL | L] = (2 / k)
/// sum_w P(w) [ D(w) + (k - 1) R(w) ], where R(w) relinks the other links of
/// every switching node according to its pre-switch neighbor field.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> enumerate_rhs(
    Mode mode, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& l,
    const Scalar& k, const Scalar& cc = Scalar(0)) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (!(k >= Scalar(1))) throw ParameterError("average degree must be >= 1");
  const int dim = detail::dimension(mode);
  if (l.size() != dim) throw ParameterError("link state has wrong dimension");
  Vec drift = Vec::Zero(dim);
  for (const auto& ev : enumerate_events<Scalar>(mode, l, cc)) {
    if (ev.probability == Scalar(0)) continue;
    Vec change = ev.direct;
    for (const auto& sw : {ev.speaker_change, ev.listener_change}) {
      if (!sw) continue;
      const auto field = neighbor_field<Scalar>(mode, l, cc, sw->first);
      if (!field) continue;
      change += (k - Scalar(1)) *
                (correspondence<Scalar>(mode, sw->first, sw->second) * *field);
    }
    drift += ev.probability * change;
  }
  return (Scalar(2) / k) * drift;
}

/// Direct-change matrix: column j is the expected direct change per unit of
/// link mass of type j.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> direct_change_matrix(
    Mode mode) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int dim = detail::dimension(mode);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> d(dim, dim);
  for (int j = 0; j < dim; ++j) {
    const Vec unit = Vec::Unit(dim, j);
    // At k = 1 the related change vanishes and the drift is 2 D e_j.
    d.col(j) = enumerate_rhs<Scalar>(mode, unit, Scalar(1)) / Scalar(2);
  }
  return d;
}

// ---------------------------------------------------------------------------

/// Largest complete graph accepted by exact_expected_consensus_time.
inline constexpr std::size_t kMaxExactNodes = 8;

/// Expected eta-consensus time (unit times of n interactions) of the Naming
/// Game on the complete graph over init.size() nodes, by solving the
/// first-passage equations of the exact interaction chain. With committed
/// agents only A-consensus is absorbing.
double exact_expected_consensus_time(std::span<const Opinion> init,
                                     double eta);

}  // namespace ngpair::oracle
