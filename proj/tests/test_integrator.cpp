#include <doctest.h>

#include <ngpair/analysis.hpp>
#include <ngpair/integrator.hpp>

#include <cmath>

using namespace ngpair;

namespace {

double t95(double dt) {
  OdeConfig cfg;
  cfg.dt = dt;
  cfg.eta = 0.95;
  cfg.sample_interval = 0.0;
  const auto traj = integrate(pair_system6(5.0),
                              embed_product6(NodeFractions(0.6, 0.4, 0)), cfg);
  REQUIRE(traj.t_eta);
  return *traj.t_eta;
}

}  // namespace

TEST_CASE("consensus is steady after one step") {
  const LinkState6 l = LinkState6::Unit(sym::AA);
  const auto traj = integrate(pair_system6(5.0), l, OdeConfig{});
  CHECK(traj.reason == Termination::steady);
  CHECK(traj.t_end == doctest::Approx(0.01));
  CHECK(traj.back().x == l);

  const auto st = steady_state(pair_system6(5.0), l, OdeConfig{});
  CHECK(st.converged);
  CHECK(st.t_end == doctest::Approx(0.01));
}

TEST_CASE("asymmetric start reaches A consensus") {
  OdeConfig cfg;
  cfg.eta = 0.95;
  const auto traj = integrate(pair_system6(5.0),
                              embed_product6(NodeFractions(0.6, 0.4, 0)), cfg);
  CHECK(traj.reason == Termination::eta_crossed);
  REQUIRE(traj.t_eta);
  CHECK(traj.back().p[kPA] >= 0.95);
  CHECK(traj.back().p[kPB] < 0.05);
  CHECK(*traj.t_eta <= traj.t_end);
  CHECK(*traj.t_eta > traj.t_end - cfg.dt);
  for (const auto& s : traj.samples) CHECK(s.x.sum() == doctest::Approx(1.0));
}

TEST_CASE("eta crossing time converges at fourth order") {
  const double ref = t95(0.0025);
  const double e1 = std::abs(t95(0.01) - ref);
  const double e2 = std::abs(t95(0.005) - ref);
  REQUIRE(e2 > 0.0);
  const double ratio = e1 / e2;
  MESSAGE("error ratio " << ratio);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("state at fixed time converges at fourth order") {
  auto at = [](double dt) {
    OdeConfig cfg;
    cfg.dt = dt;
    cfg.t_max = 8.0;
    cfg.sample_interval = 0.0;
    return integrate(pair_system6(3.0),
                     embed_product6(NodeFractions(0.55, 0.35, 0.1)), cfg)
        .back()
        .x;
  };
  const LinkState6 ref = at(0.0025);
  const double e1 = (at(0.02) - ref).norm();
  const double e2 = (at(0.01) - ref).norm();
  const double ratio = e1 / e2;
  MESSAGE("error ratio " << ratio);
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("linear crossing on sampled fractions") {
  std::vector<FractionSample> s{{10.00, NodeFractions(0.949, 0.0, 0.051)},
                                {10.01, NodeFractions(0.951, 0.0, 0.049)}};
  const auto t = detect_eta_crossing(s, 0.95);
  REQUIRE(t);
  CHECK(*t == doctest::Approx(10.005));

  std::vector<FractionSample> b{{0.0, NodeFractions(0.1, 0.90, 0.0)},
                                {1.0, NodeFractions(0.0, 0.96, 0.04)}};
  CHECK(detect_eta_crossing(b, 0.95, ConsensusTarget::either));
  CHECK_FALSE(detect_eta_crossing(b, 0.95, ConsensusTarget::a_only));
  CHECK_FALSE(detect_eta_crossing({}, 0.95));
}

TEST_CASE("no crossing on the symmetric manifold or at eta = 1") {
  OdeConfig cfg;
  cfg.eta = 0.95;
  cfg.t_max = 300.0;
  const auto pinned = integrate(pair_system6(5.0),
                                embed_product6(NodeFractions(0.5, 0.5, 0)), cfg);
  CHECK_FALSE(pinned.t_eta);
  CHECK(pinned.back().p[kPA] == doctest::Approx(pinned.back().p[kPB]));

  cfg.eta = 1.0;
  const auto full = integrate(pair_system6(5.0),
                              embed_product6(NodeFractions(0.6, 0.4, 0)), cfg);
  CHECK_FALSE(full.t_eta);
  CHECK(full.back().p[kPA] > 0.99);
}

TEST_CASE("committed steady states on both sides of the tipping point") {
  auto pb = [](double p) {
    const auto start = all_b_start(p);
    const auto sys = pair_system9(10.0, start.cc);
    const auto st = steady_state(sys, start.l, OdeConfig{});
    CHECK(st.converged);
    return sys.fractions(st.x)[kPB];
  };
  CHECK(pb(0.15) < 1e-3);
  CHECK(pb(0.02) > 0.5);
}

TEST_CASE("integration errors") {
  OdeSystem<6> escape = pair_system6(5.0);
  escape.rhs = [](const LinkState6&) {
    LinkState6 d = LinkState6::Zero();
    d[0] = -1.0;
    d[1] = 1.0;
    return d;
  };
  LinkState6 x0;
  x0 << 0.05, 0.95, 0, 0, 0, 0;
  try {
    integrate(escape, x0, OdeConfig{});
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.time() == doctest::Approx(0.06));
  }
  LinkState6 bad = x0;
  bad[0] = 0.5;
  CHECK_THROWS_AS(integrate(pair_system6(5.0), bad, OdeConfig{}), ParameterError);
  OdeConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(integrate(pair_system6(5.0), x0, cfg), ParameterError);
  CHECK_THROWS_AS(pair_system6(0.5), ParameterError);
}

TEST_CASE("samples land on the requested grid") {
  OdeConfig cfg;
  cfg.t_max = 5.0;
  cfg.sample_interval = 0.5;
  const auto traj = integrate(pair_system6(5.0),
                              embed_product6(NodeFractions(0.5, 0.5, 0)), cfg);
  REQUIRE(traj.samples.size() == 11);
  for (std::size_t j = 0; j < traj.samples.size(); ++j)
    CHECK(traj.samples[j].t == doctest::Approx(0.5 * double(j)));
}
