#include <doctest.h>

#include <ngpair/analysis.hpp>
#include <ngpair/csv.hpp>
#include <ngpair/errors.hpp>

#include <cmath>
#include <sstream>

using namespace ngpair;

namespace {

double peak_mixed(double k) {
  OdeConfig cfg;
  cfg.eta = 0.95;
  cfg.sample_interval = 0.1;
  const auto traj = integrate(pair_system6(k),
                              embed_product6(NodeFractions(0.52, 0.48, 0)), cfg);
  double peak = 0.0;
  for (const auto& s : traj.samples) peak = std::max(peak, s.p[kPAB]);
  return peak;
}

}  // namespace

TEST_CASE("stable p_B at the reference points") {
  CHECK(stable_pB(10.0, 0.0).p_b_star == doctest::Approx(1.0));
  CHECK(stable_pB(1e4, 0.12).p_b_star < 1e-3);
  CHECK(stable_pB(1e4, 0.08).p_b_star > 0.5);
}

TEST_CASE("tipping point at k = 10") {
  const auto r = find_tipping(10.0);
  CHECK(r.p_c > 0.05);
  CHECK(r.p_c < 0.0979);
  CHECK(r.p_high - r.p_low <= 1e-4);
  CHECK(stable_pB(10.0, r.p_high).p_b_star < 0.01);
  CHECK(stable_pB(10.0, r.p_low).p_b_star >= 0.01);
  MESSAGE("p_c(10) = " << r.p_c << " after " << r.evaluations << " probes");
}

TEST_CASE("tipping table edge cases") {
  const auto single = pc_vs_k({10.0});
  REQUIRE(single.size() == 1);
  CHECK(single[0].result);
  TippingConfig bad;
  bad.p_tol = 0.0;
  CHECK_THROWS_AS(find_tipping(10.0, bad), ParameterError);
  TippingConfig narrow;
  narrow.p_max = 0.03;
  CHECK_THROWS_AS(find_tipping(10.0, narrow), NotFoundError);
}

TEST_CASE("peak mixed fraction grows with degree") {
  const double p2 = peak_mixed(2.0), p5 = peak_mixed(5.0), p50 = peak_mixed(50.0);
  CHECK(p2 < p5);
  CHECK(p5 < p50);
}

TEST_CASE("degree 50 sits closer to mean field than degree 5") {
  OdeConfig cfg;
  cfg.t_max = 30.0;
  cfg.sample_interval = 0.5;
  const NodeFractions p0(0.52, 0.48, 0);
  const auto mf = integrate(meanfield_system(0.0), p0, cfg);
  auto gap = [&](double k) {
    const auto tr = integrate(pair_system6(k), embed_product6(p0), cfg);
    double g = 0.0;
    for (std::size_t j = 0; j < std::min(tr.samples.size(), mf.samples.size()); ++j)
      g = std::max(g, (tr.samples[j].p - mf.samples[j].p).lpNorm<Eigen::Infinity>());
    return g;
  };
  CHECK(gap(50.0) < gap(5.0));
}

TEST_CASE("consensus-time helpers") {
  const NodeFractions s = seeded_symmetric_start(400);
  CHECK(s[kPA] == doctest::Approx(0.525));
  CHECK(s.sum() == doctest::Approx(1.0));
  const auto t500 = ode_symmetric_consensus_time(5.0, 500);
  const auto t2000 = ode_symmetric_consensus_time(5.0, 2000);
  REQUIRE(t500);
  REQUIRE(t2000);
  CHECK(*t500 < *t2000);
  CHECK(meanfield_symmetric_consensus_time(500));
  CHECK(ode_committed_consensus_time(10.0, 0.15));
  CHECK_FALSE(ode_committed_consensus_time(10.0, 0.02, 0.95, [] {
    OdeConfig c;
    c.t_max = 2000.0;
    return c;
  }()));
}

TEST_CASE("curve and overlay arguments") {
  SimConfig base;
  base.n = 100;
  CHECK_THROWS_AS(consensus_time_curve(10.0, {0.0, 0.1}, base), ParameterError);
  base.sample_interval = 0.0;
  CHECK_THROWS_AS(trajectory_compare(5.0, base), ParameterError);
}

TEST_CASE("small overlay is self consistent") {
  SimConfig base;
  base.n = 200;
  base.runs = 8;
  base.seed = 3;
  const Overlay ov = trajectory_compare(5.0, base);
  REQUIRE(!ov.rows.empty());
  CHECK(ov.rows.front().t == 0.0);
  CHECK(ov.window_end > 0.0);
  CHECK(ov.pair_discrepancy_mirrored <= ov.pair_discrepancy + 1e-15);
  for (const auto& r : ov.rows) {
    CHECK(r.mc.sum() == doctest::Approx(1.0));
    CHECK(r.pair.sum() == doctest::Approx(1.0));
    CHECK(r.meanfield.sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("csv formatting") {
  CHECK(csv::number(0.5) == "0.5");
  CHECK(csv::number(std::optional<double>{}) == "nan");
  std::ostringstream os;
  csv::write_row(os, {"a", "b"});
  CHECK(os.str() == "a,b\n");
  std::ostringstream t;
  csv::write_tipping(t, pc_vs_k({10.0}));
  CHECK(t.str().rfind("k,p_c,p_low,p_high\n", 0) == 0);
}
