#include <ngpair/errors.hpp>
#include <ngpair/network.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace ngpair {

Network Network::from_edges(std::size_t n, const std::vector<Edge>& edges) {
  Network net;
  net.adjacency_.assign(n, {});
  for (auto [i, j] : edges) {
    if (i == j) throw ParameterError("self-loop at node " + std::to_string(i));
    if (i >= n || j >= n)
      throw ParameterError("edge endpoint out of range");
    net.adjacency_[i].push_back(j);
    net.adjacency_[j].push_back(i);
  }
  for (auto& adj : net.adjacency_) {
    std::sort(adj.begin(), adj.end());
    if (std::adjacent_find(adj.begin(), adj.end()) != adj.end())
      throw ParameterError("duplicate edge");
  }
  net.edge_count_ = edges.size();
  return net;
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId i = 0; i < adjacency_.size(); ++i)
    for (NodeId j : adjacency_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

Network generate_er(std::size_t n, double k_avg, std::uint64_t seed) {
  if (n < 2) throw ParameterError("ER network needs n >= 2");
  const double max_degree = static_cast<double>(n - 1);
  if (!(k_avg > 0.0) || k_avg > max_degree)
    throw ParameterError("ER mean degree must lie in (0, n-1]");
  const double q = k_avg / max_degree;

  std::mt19937_64 rng(seed);
  std::geometric_distribution<std::int64_t> skip(q);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(0.5 * k_avg * n * 1.1) + 16);

  // Walk the pairs (v, w), w < v, in row-major order.
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t v = 1, w = -1;
  while (v < nn) {
    w += 1 + skip(rng);
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn)
      edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Network::from_edges(n, edges);
}

Network complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Network::from_edges(n, edges);
}

void write_edge_list(std::ostream& os, const Network& net) {
  for (auto [i, j] : net.edges()) os << i << ' ' << j << '\n';
}

Network read_edge_list(std::istream& is, std::optional<std::size_t> n) {
  std::vector<Edge> edges;
  std::size_t max_index = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long i = -1, j = -1;
    if (!(ls >> i >> j) || i < 0 || j < 0)
      throw ParameterError("bad edge on line " + std::to_string(lineno));
    if (i > j) std::swap(i, j);
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    max_index = std::max<std::size_t>(max_index, static_cast<std::size_t>(j));
  }
  const std::size_t nodes = n.value_or(edges.empty() ? 0 : max_index + 1);
  return Network::from_edges(nodes, edges);
}

// ---------------------------------------------------------------------------

OpinionState OpinionState::from_opinions(std::vector<Opinion> opinions) {
  OpinionState st;
  st.committed_count = static_cast<std::size_t>(
      std::count(opinions.begin(), opinions.end(), Opinion::Committed));
  st.opinions = std::move(opinions);
  return st;
}

std::size_t committed_count_for(double p, std::size_t n) {
  return static_cast<std::size_t>(
      std::floor(p * static_cast<double>(n) + 0.5));
}

OpinionState assign_opinions(const Network& net, double committed_fraction,
                             InitMode mode, std::uint64_t seed) {
  if (!(committed_fraction >= 0.0 && committed_fraction < 1.0))
    throw ParameterError("committed fraction must lie in [0, 1)");
  if (mode == InitMode::symmetric && committed_fraction != 0.0)
    throw ParameterError("symmetric initialization takes no committed agents");

  const std::size_t n = net.node_count();
  std::mt19937_64 rng(seed);
  OpinionState st;
  if (mode == InitMode::symmetric) {
    st.opinions.resize(n);
    std::bernoulli_distribution coin(0.5);
    for (auto& o : st.opinions) o = coin(rng) ? Opinion::A : Opinion::B;
    return st;
  }

  st.opinions.assign(n, Opinion::B);
  st.committed_count = committed_count_for(committed_fraction, n);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < st.committed_count; ++i)
    st.opinions[order[i]] = Opinion::Committed;
  return st;
}

// ---------------------------------------------------------------------------

std::int64_t LinkCounts::total() const {
  return std::accumulate(tracked.begin(), tracked.end(), cc);
}

std::optional<int> committed_link_slot(Opinion x, Opinion y) {
  using O = Opinion;
  if (static_cast<int>(x) > static_cast<int>(y)) std::swap(x, y);
  // x <= y in the order A < B < AB < Committed.
  if (y == O::Committed) {
    switch (x) {
      case O::A: return com::AC;
      case O::B: return com::BC;
      case O::AB: return com::ABC;
      case O::Committed: return std::nullopt;
    }
  }
  if (x == O::A && y == O::A) return com::AA;
  if (x == O::A && y == O::B) return com::AB;
  if (x == O::A && y == O::AB) return com::A_AB;
  if (x == O::B && y == O::B) return com::BB;
  if (x == O::B && y == O::AB) return com::B_AB;
  return com::AB_AB;
}

int symmetric_link_slot(Opinion x, Opinion y) {
  const auto slot = committed_link_slot(x, y);
  if (!slot || *slot < com::AA)
    throw ParameterError("committed opinion in a symmetric census");
  return *slot - com::AA;
}

LinkCounts link_counts(const Network& net, const OpinionState& st) {
  if (st.opinions.size() != net.node_count())
    throw ParameterError("opinion state size does not match the network");
  LinkCounts counts;
  for (auto [i, j] : net.edges()) {
    const auto slot = committed_link_slot(st.opinions[i], st.opinions[j]);
    if (slot)
      ++counts.tracked[*slot];
    else
      ++counts.cc;
  }
  return counts;
}

namespace {

void require_edges(const Network& net) {
  if (net.edge_count() == 0)
    throw DegenerateNetworkError("link census of a network without edges");
}

}  // namespace

LinkState6 link_census6(const Network& net, const OpinionState& st) {
  require_edges(net);
  const auto counts = link_counts(net, st);
  if (counts.cc != 0 || counts.tracked[com::AC] != 0 ||
      counts.tracked[com::BC] != 0 || counts.tracked[com::ABC] != 0 ||
      st.committed_count != 0)
    throw ParameterError("symmetric census of a state with committed nodes");
  const double m = static_cast<double>(net.edge_count());
  LinkState6 l;
  for (int i = 0; i < sym::kLinks; ++i)
    l[i] = static_cast<double>(counts.tracked[com::AA + i]) / m;
  return l;
}

CommittedLinkState link_census9(const Network& net, const OpinionState& st) {
  require_edges(net);
  const auto counts = link_counts(net, st);
  const double m = static_cast<double>(net.edge_count());
  CommittedLinkState out;
  for (int i = 0; i < com::kLinks; ++i)
    out.l[i] = static_cast<double>(counts.tracked[i]) / m;
  out.cc = static_cast<double>(counts.cc) / m;
  return out;
}

}  // namespace ngpair
