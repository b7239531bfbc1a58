#pragma once

#include <ngpair/link_types.hpp>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace ngpair {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph stored as sorted adjacency lists.
class Network {
 public:
  Network() = default;

  /// Builds from an edge list. Rejects self-loops, duplicates and
  /// out-of-range endpoints.
  static Network from_edges(std::size_t n, const std::vector<Edge>& edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<NodeId>& neighbors(NodeId v) const {
    return adjacency_[v];
  }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  double mean_degree() const {
    return adjacency_.empty() ? 0.0
                              : 2.0 * static_cast<double>(edge_count_) /
                                    static_cast<double>(adjacency_.size());
  }

  /// Edges as (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// G(n, q) with q = k_avg / (n - 1), sampled by geometric skipping over the
/// lower-triangular pair index. Requires n >= 2 and 0 < k_avg <= n - 1.
Network generate_er(std::size_t n, double k_avg, std::uint64_t seed);

Network complete_graph(std::size_t n);

/// Edge-list text: one "i j" line per edge, 0-indexed, i < j, sorted.
void write_edge_list(std::ostream& os, const Network& net);
/// Node count defaults to the largest index + 1.
Network read_edge_list(std::istream& is,
                       std::optional<std::size_t> n = std::nullopt);

// ---------------------------------------------------------------------------

enum class Opinion : std::uint8_t { A, B, AB, Committed };

enum class InitMode { symmetric, committed };

struct OpinionState {
  std::vector<Opinion> opinions;
  std::size_t committed_count = 0;

  static OpinionState from_opinions(std::vector<Opinion> opinions);
};

/// Symmetric: every node A or B with probability 1/2. Committed: floor(p n +
/// 1/2) uniformly chosen nodes committed, all others B.
OpinionState assign_opinions(const Network& net, double committed_fraction,
                             InitMode mode, std::uint64_t seed);

/// Number of committed nodes for fraction p on n nodes (round half up).
std::size_t committed_count_for(double p, std::size_t n);

// ---------------------------------------------------------------------------

/// Raw link counts in com::Link order plus the C-C count.
struct LinkCounts {
  std::array<std::int64_t, com::kLinks> tracked{};
  std::int64_t cc = 0;
  std::int64_t total() const;
};

/// Link-type slot of an unordered opinion pair in com::Link order; empty for
/// a C-C pair.
std::optional<int> committed_link_slot(Opinion x, Opinion y);
/// Link-type slot in sym::Link order. Committed opinions are not allowed.
int symmetric_link_slot(Opinion x, Opinion y);

LinkCounts link_counts(const Network& net, const OpinionState& st);
/// Link fractions of a state without committed nodes.
LinkState6 link_census6(const Network& net, const OpinionState& st);
/// Link fractions normalized by the total edge count; cc holds the C-C share.
CommittedLinkState link_census9(const Network& net, const OpinionState& st);

}  // namespace ngpair
