#include <doctest.h>

#include <ngpair/oracle.hpp>
#include <ngpair/pair_ode.hpp>
#include <ngpair/rational.hpp>

#include <random>

using namespace ngpair;
using namespace ngpair::oracle;

namespace {

using RVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

RVec random_rational_state(std::mt19937_64& rng, int dim, int cc_weight,
                           Rational* cc) {
  std::uniform_int_distribution<int> w(0, 6);
  RVec v(dim);
  long total = cc_weight;
  for (int i = 0; i < dim; ++i) {
    const int x = w(rng);
    v[i] = Rational(x);
    total += x;
  }
  for (int i = 0; i < dim; ++i) v[i] /= Rational(total);
  if (cc) *cc = Rational(cc_weight, total);
  return v;
}

template <int Dim>
Vector<double, Dim> random_simplex(std::mt19937_64& rng, double mass) {
  std::exponential_distribution<double> e(1.0);
  Vector<double, Dim> x;
  for (int i = 0; i < Dim; ++i) x[i] = e(rng);
  return x * (mass / x.sum());
}

}  // namespace

TEST_CASE("rebuilt matrices equal the transcribed ones exactly") {
  CHECK(direct_change_matrix<Rational>(Mode::symmetric) ==
        direct_matrix6<Rational>());
  CHECK(direct_change_matrix<Rational>(Mode::committed) ==
        direct_matrix9<Rational>());
  CHECK(correspondence<Rational>(Mode::symmetric, Memory::A, Memory::AB) ==
        correspondence_a6<Rational>());
  CHECK(correspondence<Rational>(Mode::symmetric, Memory::B, Memory::AB) ==
        correspondence_b6<Rational>());
  CHECK(correspondence<Rational>(Mode::committed, Memory::A, Memory::AB) ==
        correspondence_a9<Rational>());
  CHECK(correspondence<Rational>(Mode::committed, Memory::B, Memory::AB) ==
        correspondence_b9<Rational>());
}

TEST_CASE("rational drift equals rhs exactly") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    const Rational k(1 + i % 7, 1 + i % 2);
    if (k < Rational(1)) continue;
    const RVec l6 = random_rational_state(rng, 6, 0, nullptr);
    const Vector6<Rational> s6 = l6;
    CHECK(enumerate_rhs<Rational>(Mode::symmetric, l6, k) ==
          RVec(rhs6<Rational>(s6, k)));
    Rational cc;
    const RVec l9 = random_rational_state(rng, 9, 2, &cc);
    const Vector9<Rational> s9 = l9;
    CHECK(enumerate_rhs<Rational>(Mode::committed, l9, k, cc) ==
          RVec(rhs9<Rational>(s9, k)));
  }
}

TEST_CASE("floating drift agrees with rhs at random states") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    for (double k : {1.0, 2.0, 5.0, 50.0}) {
      const LinkState6 l6 = random_simplex<6>(rng, 1.0);
      const Eigen::VectorXd d6 =
          enumerate_rhs<double>(Mode::symmetric, Eigen::VectorXd(l6), k);
      CHECK((d6 - Eigen::VectorXd(rhs6(l6, k))).lpNorm<Eigen::Infinity>() <
            1e-12);
      const double cc = 0.01 * (i % 5);
      const LinkState9 l9 = random_simplex<9>(rng, 1.0 - cc);
      const Eigen::VectorXd d9 =
          enumerate_rhs<double>(Mode::committed, Eigen::VectorXd(l9), k, cc);
      CHECK((d9 - Eigen::VectorXd(rhs9(l9, k))).lpNorm<Eigen::Infinity>() <
            1e-12);
    }
  }
}

TEST_CASE("event table") {
  std::mt19937_64 rng(3);
  const Eigen::VectorXd l = random_simplex<6>(rng, 1.0);
  const auto events = enumerate_events<double>(Mode::symmetric, l);
  double total = 0.0;
  bool found = false;
  for (const auto& ev : events) {
    total += ev.probability;
    if (ev.speaker == Memory::B && ev.listener == Memory::A) {
      found = true;
      Eigen::VectorXd want = Eigen::VectorXd::Zero(6);
      want[sym::AB] = -1;
      want[sym::B_AB] = 1;
      CHECK(ev.direct == want);
      CHECK_FALSE(ev.speaker_change);
      REQUIRE(ev.listener_change);
      CHECK(ev.listener_change->second == Memory::AB);
    }
  }
  CHECK(found);
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("exact chain: small cases by hand") {
  using O = Opinion;
  CHECK(exact_expected_consensus_time(std::vector<O>{O::A, O::A}, 1.0) == 0.0);
  // Two nodes A, B: one step to (A, AB); from there absorbed with
  // probability 3/4, else one more step via (AB, AB). 9/4 interactions.
  CHECK(exact_expected_consensus_time(std::vector<O>{O::A, O::B}, 1.0) ==
        doctest::Approx(9.0 / 8.0));
  const double t3 =
      exact_expected_consensus_time(std::vector<O>{O::A, O::B, O::B}, 1.0);
  CHECK(t3 > 0.0);
  CHECK(std::isfinite(t3));
  const double t4 = exact_expected_consensus_time(
      std::vector<O>{O::Committed, O::B, O::B, O::B}, 1.0);
  CHECK(t4 > 0.0);
  CHECK(std::isfinite(t4));
  CHECK_THROWS_AS(exact_expected_consensus_time(std::vector<O>(9, O::A), 1.0),
                  ParameterError);
}
