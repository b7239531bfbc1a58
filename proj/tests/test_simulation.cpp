#include <doctest.h>

#include <ngpair/errors.hpp>
#include <ngpair/parallel.hpp>
#include <ngpair/simulation.hpp>

#include <cstdlib>

using namespace ngpair;
using O = Opinion;

TEST_CASE("interaction rules") {
  SUBCASE("unknown word is added") {
    auto st = OpinionState::from_opinions({O::A, O::B});
    CHECK(interact(st, 0, 1, Word::A));
    CHECK(st.opinions == std::vector<O>{O::A, O::AB});
  }
  SUBCASE("agreement collapses both") {
    auto st = OpinionState::from_opinions({O::AB, O::A});
    CHECK(interact(st, 0, 1, Word::A));
    CHECK(st.opinions == std::vector<O>{O::A, O::A});
    auto mixed = OpinionState::from_opinions({O::AB, O::AB});
    CHECK(interact(mixed, 0, 1, Word::B));
    CHECK(mixed.opinions == std::vector<O>{O::B, O::B});
  }
  SUBCASE("committed listener ignores B") {
    auto st = OpinionState::from_opinions({O::AB, O::Committed});
    CHECK_FALSE(interact(st, 0, 1, Word::B));
    CHECK(st.opinions == std::vector<O>{O::AB, O::Committed});
  }
  SUBCASE("committed listener agrees on A") {
    auto st = OpinionState::from_opinions({O::AB, O::Committed});
    CHECK(interact(st, 0, 1, Word::A));
    CHECK(st.opinions == std::vector<O>{O::A, O::Committed});
  }
  SUBCASE("committed speaker never changes") {
    auto st = OpinionState::from_opinions({O::Committed, O::AB});
    interact(st, 0, 1, Word::A);
    CHECK(st.opinions == std::vector<O>{O::Committed, O::A});
  }
  SUBCASE("counts follow the state") {
    auto st = OpinionState::from_opinions({O::B, O::A, O::AB});
    auto c = OpinionCounts::of(st);
    interact(st, 0, 1, Word::B, &c);
    const auto fresh = OpinionCounts::of(st);
    CHECK(c.a == fresh.a);
    CHECK(c.b == fresh.b);
    CHECK(c.mixed == fresh.mixed);
  }
  CHECK(utter(O::AB, false) == Word::A);
  CHECK(utter(O::AB, true) == Word::B);
  CHECK(utter(O::Committed, true) == Word::A);
}

TEST_CASE("run: already at consensus") {
  const Network g = generate_er(50, 4.0, 1);
  const auto st = OpinionState::from_opinions(std::vector<O>(50, O::A));
  SimConfig cfg;
  Rng rng(0);
  const auto r = run(g, st, cfg, rng);
  CHECK(r.reached);
  CHECK(r.t_eta == 0.0);
}

TEST_CASE("run: consensus states absorb and committed nodes stay put") {
  const Network g = generate_er(200, 6.0, 2);
  const auto init = assign_opinions(g, 0.2, InitMode::committed, 5);
  auto st = init;
  Rng rng(1);
  for (int i = 0; i < 50000; ++i) step(g, st, rng);
  for (std::size_t v = 0; v < st.opinions.size(); ++v)
    CHECK((init.opinions[v] == O::Committed) == (st.opinions[v] == O::Committed));

  auto all_a = OpinionState::from_opinions(std::vector<O>(200, O::A));
  for (int i = 0; i < 5000; ++i) step(g, all_a, rng);
  CHECK(OpinionCounts::of(all_a).a == 200);
}

TEST_CASE("run: trajectory sampling and node conservation") {
  const Network g = generate_er(300, 5.0, 3);
  const auto init = assign_opinions(g, 0.0, InitMode::symmetric, 4);
  SimConfig cfg;
  cfg.sample_interval = 0.5;
  Rng rng(9);
  const auto r = run(g, init, cfg, rng);
  REQUIRE(r.reached);
  REQUIRE(r.trajectory.size() >= 2);
  for (std::size_t j = 0; j < r.trajectory.size(); ++j) {
    CHECK(r.trajectory[j].t == doctest::Approx(0.5 * double(j)));
    CHECK(r.trajectory[j].p.sum() == doctest::Approx(1.0));
  }
  CHECK(std::max(r.final_fractions[kPA], r.final_fractions[kPB]) >= 0.95);
}

TEST_CASE("run: the time cap censors") {
  const Network g = generate_er(200, 6.0, 5);
  const auto init = assign_opinions(g, 0.01, InitMode::committed, 6);
  SimConfig cfg;
  cfg.committed_fraction = 0.01;
  cfg.max_time_per_node = 20.0;
  Rng rng(2);
  const auto r = run(g, init, cfg, rng);
  CHECK_FALSE(r.reached);
  CHECK(r.t_eta == 20.0);
}

TEST_CASE("mirrored start with swapped coin gives the mirrored run") {
  const Network g = generate_er(150, 4.0, 7);
  auto init = assign_opinions(g, 0.0, InitMode::symmetric, 8);
  auto mirror = init;
  for (auto& o : mirror.opinions) o = o == O::A ? O::B : O::A;
  SimConfig cfg;
  Rng r1(77), r2(77);
  const auto a = run(g, init, cfg, r1);
  cfg.swap_word_choice = true;
  const auto b = run(g, mirror, cfg, r2);
  CHECK(a.t_eta == b.t_eta);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t j = 0; j < a.trajectory.size(); ++j) {
    CHECK(a.trajectory[j].p[kPA] == b.trajectory[j].p[kPB]);
    CHECK(a.trajectory[j].p[kPAB] == b.trajectory[j].p[kPAB]);
  }
}

TEST_CASE("ensemble: single run, determinism, worker independence") {
  SimConfig cfg;
  cfg.n = 200;
  cfg.runs = 1;
  cfg.seed = 5;
  const auto one = ensemble(cfg);
  REQUIRE(one.mean_t);
  CHECK(*one.mean_t == one.runs[0].t_eta);
  CHECK(*one.rel_std_t == 0.0);
  CHECK(one.fraction_reached == 1.0);

  cfg.runs = 6;
  setenv("NG_THREADS", "1", 1);
  const auto serial = ensemble(cfg);
  setenv("NG_THREADS", "4", 1);
  const auto threaded = ensemble(cfg);
  unsetenv("NG_THREADS");
  for (std::size_t r = 0; r < cfg.runs; ++r) {
    CHECK(serial.runs[r].seed == derive_seed(5, r));
    CHECK(serial.runs[r].t_eta == threaded.runs[r].t_eta);
  }
  REQUIRE(serial.mean_trajectory.size() == threaded.mean_trajectory.size());
  for (std::size_t j = 0; j < serial.mean_trajectory.size(); ++j)
    CHECK(serial.mean_trajectory[j].mean == threaded.mean_trajectory[j].mean);
}

TEST_CASE("ensemble: no reached runs leaves the statistics empty") {
  SimConfig cfg;
  cfg.n = 100;
  cfg.k_avg = 6.0;
  cfg.committed_fraction = 0.01;
  cfg.max_time_per_node = 5.0;
  cfg.runs = 3;
  const auto s = ensemble(cfg);
  CHECK(s.fraction_reached == 0.0);
  CHECK_FALSE(s.mean_t);
  CHECK_FALSE(s.rel_std_t);
}

TEST_CASE("parameter errors") {
  SimConfig cfg;
  cfg.runs = 0;
  CHECK_THROWS_AS(ensemble(cfg), ParameterError);
  cfg = SimConfig{};
  cfg.eta = 0.4;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);
  cfg = SimConfig{};
  cfg.committed_fraction = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ParameterError);

  const Network empty = Network::from_edges(4, {});
  Rng rng(0);
  auto st = OpinionState::from_opinions({O::A, O::B, O::A, O::B});
  CHECK_THROWS_AS(step(empty, st, rng), DegenerateNetworkError);
}

TEST_CASE("derive_seed spreads indices") {
  CHECK(derive_seed(0, 0) != derive_seed(0, 1));
  CHECK(derive_seed(1, 0) != derive_seed(0, 1));
  CHECK(derive_seed(42, 3) == derive_seed(42, 3));
}
