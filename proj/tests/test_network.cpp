#include <doctest.h>

#include <ngpair/errors.hpp>
#include <ngpair/network.hpp>

#include <cmath>
#include <set>
#include <sstream>

using namespace ngpair;

TEST_CASE("er: two nodes at k = 1 always share the edge") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Network g = generate_er(2, 1.0, seed);
    REQUIRE(g.edge_count() == 1);
    CHECK(g.neighbors(0) == std::vector<NodeId>{1});
  }
}

TEST_CASE("er: mean degree concentrates") {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Network g = generate_er(500, 5.0, 42 + seed);
    sum += g.mean_degree();
  }
  CHECK(sum / 100.0 == doctest::Approx(5.0).epsilon(0.05));
}

TEST_CASE("er: adjacency is symmetric and simple") {
  const Network g = generate_er(300, 8.0, 7);
  std::size_t ends = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& nb = g.neighbors(v);
    ends += nb.size();
    std::set<NodeId> seen(nb.begin(), nb.end());
    CHECK(seen.size() == nb.size());
    CHECK(seen.count(v) == 0);
    for (NodeId u : nb) {
      const auto& back = g.neighbors(u);
      CHECK(std::find(back.begin(), back.end(), v) != back.end());
    }
  }
  CHECK(ends == 2 * g.edge_count());
}

TEST_CASE("er: same seed, same graph") {
  CHECK(generate_er(200, 4.0, 11).edges() == generate_er(200, 4.0, 11).edges());
  CHECK(generate_er(200, 4.0, 11).edges() != generate_er(200, 4.0, 12).edges());
}

TEST_CASE("er: parameter errors") {
  CHECK_THROWS_AS(generate_er(500, 500.0, 0), ParameterError);
  CHECK_THROWS_AS(generate_er(1, 0.5, 0), ParameterError);
  CHECK_THROWS_AS(generate_er(10, 0.0, 0), ParameterError);
  CHECK_NOTHROW(generate_er(10, 9.0, 0));
  CHECK(generate_er(10, 9.0, 0).edge_count() == 45);
}

TEST_CASE("from_edges rejects bad input") {
  CHECK_THROWS_AS(Network::from_edges(3, {{0, 0}}), ParameterError);
  CHECK_THROWS_AS(Network::from_edges(3, {{0, 3}}), ParameterError);
  CHECK_THROWS_AS(Network::from_edges(3, {{0, 1}, {1, 0}}), ParameterError);
}

TEST_CASE("edge list round trip") {
  const Network g = generate_er(50, 3.0, 5);
  std::stringstream ss;
  write_edge_list(ss, g);
  const Network h = read_edge_list(ss, g.node_count());
  CHECK(h.node_count() == g.node_count());
  CHECK(h.edges() == g.edges());
}

TEST_CASE("assign_opinions: committed rounding") {
  const Network g = complete_graph(100);
  auto count = [](const OpinionState& st, Opinion o) {
    return std::count(st.opinions.begin(), st.opinions.end(), o);
  };
  const auto ten = assign_opinions(g, 0.10, InitMode::committed, 3);
  CHECK(ten.committed_count == 10);
  CHECK(count(ten, Opinion::Committed) == 10);
  CHECK(count(ten, Opinion::B) == 90);
  const auto one = assign_opinions(g, 0.005, InitMode::committed, 3);
  CHECK(one.committed_count == 1);
  CHECK(committed_count_for(0.005, 100) == 1);
  CHECK(committed_count_for(0.004, 100) == 0);
}

TEST_CASE("assign_opinions: symmetric split") {
  const std::size_t n = 400;
  const Network g = generate_er(n, 5.0, 1);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto st = assign_opinions(g, 0.0, InitMode::symmetric, seed);
    CHECK(st.committed_count == 0);
    const double a = static_cast<double>(
                         std::count(st.opinions.begin(), st.opinions.end(),
                                    Opinion::A)) /
                     static_cast<double>(n);
    if (std::abs(a - 0.5) <= 3.0 / (2.0 * std::sqrt(double(n)))) ++inside;
  }
  CHECK(inside >= 196);
  CHECK_THROWS_AS(assign_opinions(g, 0.1, InitMode::symmetric, 0),
                  ParameterError);
}

TEST_CASE("census: triangle and path") {
  using O = Opinion;
  const Network tri = Network::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto l = link_census6(tri, OpinionState::from_opinions({O::A, O::A, O::B}));
  CHECK(l[sym::AA] == doctest::Approx(1.0 / 3));
  CHECK(l[sym::AB] == doctest::Approx(2.0 / 3));
  CHECK(l.sum() == doctest::Approx(1.0));

  const Network path = Network::from_edges(3, {{0, 1}, {1, 2}});
  const auto m = link_census6(path, OpinionState::from_opinions({O::A, O::AB, O::B}));
  CHECK(m[sym::A_AB] == 0.5);
  CHECK(m[sym::B_AB] == 0.5);
  CHECK(m.sum() == 1.0);
}

TEST_CASE("census: committed links and the C-C share") {
  using O = Opinion;
  const Network g = complete_graph(4);
  const auto st = OpinionState::from_opinions(
      {O::Committed, O::Committed, O::B, O::AB});
  const auto c = link_census9(g, st);
  CHECK(c.cc == doctest::Approx(1.0 / 6));
  CHECK(c.l[com::BC] == doctest::Approx(2.0 / 6));
  CHECK(c.l[com::ABC] == doctest::Approx(2.0 / 6));
  CHECK(c.l[com::B_AB] == doctest::Approx(1.0 / 6));
  CHECK(c.l.sum() + c.cc == doctest::Approx(1.0));
  CHECK_THROWS(link_census6(g, st));
  const auto counts = link_counts(g, st);
  CHECK(counts.total() == 6);
}

TEST_CASE("census: symmetric init is close to the product measure") {
  const Network g = generate_er(500, 5.0, 9);
  LinkState6 mean = LinkState6::Zero();
  const int reps = 200;
  for (int s = 0; s < reps; ++s)
    mean += link_census6(g, assign_opinions(g, 0.0, InitMode::symmetric, s)) / reps;
  LinkState6 want;
  want << 0.25, 0.5, 0, 0.25, 0, 0;
  CHECK((mean - want).lpNorm<Eigen::Infinity>() < 0.01);
}

TEST_CASE("census needs edges") {
  const Network empty = Network::from_edges(3, {});
  CHECK_THROWS_AS(
      link_census6(empty, OpinionState::from_opinions(
                              {Opinion::A, Opinion::A, Opinion::B})),
      DegenerateNetworkError);
}
