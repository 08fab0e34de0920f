#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "distgame/equilibrium.hpp"
#include "distgame/json_io.hpp"
#include "distgame/support.hpp"
#include "testutil.hpp"

using distgame::GameSense;
using distgame::Network;
using distgame::Strategy;
using distgame::VerifyOptions;
using distgame::WeightScheme;

namespace {

distgame::RegularSupport checked(const Network& net,
                                 const std::vector<int>& nodes, int r) {
  return distgame::check_support_conditions(net, nodes, r);
}

bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol;
}

}  // namespace

TEST_CASE("strategy construction and support") {
  Strategy u = Strategy::uniform(4);
  for (int i = 0; i < 4; ++i) CHECK(u[i] == 0.25);
  Strategy d = Strategy::delta(3, 1);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 1.0);
  CHECK(d.support() == std::vector<int>{1});

  Strategy s = Strategy::on_support(5, {1, 3}, {1.0, 3.0});
  CHECK(close(s[1], 0.25));
  CHECK(close(s[3], 0.75));
  CHECK(s.support() == std::vector<int>{1, 3});

  CHECK_THROWS_AS(Strategy({0.5, -0.2, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(Strategy({0.0, 0.0, 0.0}), std::invalid_argument);
  // roundoff-scale negative mass is clamped, not rejected
  Strategy clamped({0.5, -1e-13, 0.5});
  CHECK(clamped[1] == 0.0);
  double total = clamped[0] + clamped[1] + clamped[2];
  CHECK(close(total, 1.0));
}

TEST_CASE("payoff matches the edge-loop oracle") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto net = testutil::random_graph(7, 0.5, 900 + seed, 0.8);
    auto x = testutil::random_interior(7, 50 + seed);
    auto y = testutil::random_interior(7, 80 + seed);
    double got = distgame::payoff(x, y, net);
    double want = testutil::payoff_oracle(net, x.values(), y.values());
    CHECK(close(got, want, 1e-14));
    auto p = distgame::site_contacts(y, net);
    for (int i = 0; i < 7; ++i) {
      double pi = 0.0;
      for (int j = 0; j < 7; ++j)
        pi += testutil::rate_oracle(net, i, j) * y[j];
      CHECK(close(p(i), pi, 1e-14));
    }
  }
}

TEST_CASE("verification on hand-solved games") {
  SUBCASE("single edge: the even split is the only interior equalizer") {
    // diag below 1 so the contact matrix is not all-ones
    Network k2(2, {{0, 1}}, 0.5);
    auto cert = distgame::verify_nash(Strategy({0.5, 0.5}), k2);
    CHECK(cert.is_nash);
    CHECK(close(cert.lambda, 0.75));  // 0.5*0.5 + 0.5*1
    CHECK(cert.eq_residual <= 1e-15);
    auto off = distgame::verify_nash(Strategy({0.25, 0.75}), k2);
    CHECK_FALSE(off.is_nash);
    CHECK(off.eq_residual > 0.1);  // p = (0.875, 0.625)
  }
  SUBCASE("delta on one endpoint of an edge is an equilibrium") {
    // p_0 = 1 on support; p_1 = 1 off support; slack 0 >= -tol
    Network k2(2, {{0, 1}});
    auto cert = distgame::verify_nash(Strategy::delta(2, 0), k2);
    CHECK(cert.is_nash);
    CHECK(close(cert.lambda, 1.0));
    CHECK(cert.ineq_slack == 0.0);
  }
  SUBCASE("non-maximal support is rejected through the residual site") {
    // a site with zero contacts undercuts lambda in the minimize sense
    Network path(3, {{0, 1}});
    auto cert = distgame::verify_nash(Strategy({0.5, 0.5, 0.0}), path);
    CHECK_FALSE(cert.is_nash);
    CHECK(cert.ineq_slack < 0.0);  // p_2 = 0 < lambda = 1
  }
  SUBCASE("maximize sense flips the inequality") {
    Network path(3, {{0, 1}});
    VerifyOptions opts;
    opts.sense = GameSense::maximize;
    auto cert = distgame::verify_nash(Strategy({0.5, 0.5, 0.0}), path, opts);
    CHECK(cert.is_nash);  // lambda=1 >= p_2=0
  }
}

TEST_CASE("uniform construction on checked supports") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  SUBCASE("an independent set gets 1/k mass and lambda 1/k") {
    auto sup = checked(town, testutil::sites({3, 5, 9}), 0);
    REQUIRE(sup.valid());
    auto eq = distgame::construct_uniform_equilibrium(sup);
    CHECK(close(eq.lambda, 1.0 / 3.0));
    for (int v : sup.nodes) CHECK(close(eq.x[v], 1.0 / 3.0));
    auto cert = distgame::verify_nash(eq.x, town);
    CHECK(cert.is_nash);
    CHECK(close(cert.lambda, eq.lambda));
  }
  SUBCASE("construction refuses an invalid support by name") {
    auto bad = checked(town, testutil::sites({3, 5}), 0);
    REQUIRE_FALSE(bad.valid());
    CHECK_THROWS_WITH_AS(distgame::construct_uniform_equilibrium(bad),
                         doctest::Contains("maximal"), std::invalid_argument);
  }
}

TEST_CASE("non-maximal independent set is not an equilibrium") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  // {3,5} misses site 9 entirely: p_9(x) = 0 beats lambda = 1/2
  auto x = Strategy::on_support(10, testutil::sites({3, 5}), {1.0, 1.0});
  auto cert = distgame::verify_nash(x, town);
  CHECK_FALSE(cert.is_nash);
  auto p = distgame::site_contacts(x, town);
  CHECK(p(8) == 0.0);
}

TEST_CASE("weighted construction reproduces worked examples") {
  Network pet = distgame::network_from_json(
      testutil::fixture_text("petersen10_additive.json"));
  SUBCASE("additive scheme, mixed-weight independent set") {
    auto sup = checked(pet, testutil::sites({4, 6, 7}), 0);
    REQUIRE(sup.valid());
    auto eq = distgame::construct_weighted_equilibrium(sup, pet);
    CHECK(close(eq.x[testutil::sites({4})[0]], 0.2));
    CHECK(close(eq.x[testutil::sites({6})[0]], 0.4));
    CHECK(close(eq.x[testutil::sites({7})[0]], 0.4));
    CHECK(close(eq.lambda, 0.4));
    CHECK(eq.sufficient_ok);
    auto cert = distgame::verify_nash(eq.x, pet);
    CHECK(cert.is_nash);
    CHECK(cert.eq_residual <= 1e-12);
  }
  SUBCASE("the heavy-site set equalizes but fails off-support") {
    auto sup = checked(pet, testutil::sites({3, 5, 9}), 0);
    REQUIRE(sup.valid());  // structural conditions hold
    auto eq = distgame::construct_weighted_equilibrium(sup, pet);
    CHECK(close(eq.lambda, 0.5));
    CHECK_FALSE(eq.sufficient_ok);
    auto cert = distgame::verify_nash(eq.x, pet);
    CHECK_FALSE(cert.is_nash);
    auto p = distgame::site_contacts(eq.x, pet);
    CHECK(close(p(testutil::sites({8})[0]), 3.0 / 8.0));
  }
  SUBCASE("four-site mixed set") {
    auto sup = checked(pet, testutil::sites({3, 5, 6, 7}), 0);
    REQUIRE(sup.valid());
    auto eq = distgame::construct_weighted_equilibrium(sup, pet);
    CHECK(close(eq.x[testutil::sites({3})[0]], 1.0 / 6.0));
    CHECK(close(eq.x[testutil::sites({5})[0]], 1.0 / 6.0));
    CHECK(close(eq.x[testutil::sites({6})[0]], 1.0 / 3.0));
    CHECK(close(eq.x[testutil::sites({7})[0]], 1.0 / 3.0));
    CHECK(close(eq.lambda, 1.0 / 3.0));
  }
  SUBCASE("multiplicative scheme squares the weights") {
    Network mul(pet.node_count(), pet.edges(), pet.diag(), pet.weights(),
                WeightScheme::multiplicative);
    auto sup = checked(mul, testutil::sites({4, 6, 7}), 0);
    auto eq = distgame::construct_weighted_equilibrium(sup, mul);
    CHECK(close(eq.x[testutil::sites({4})[0]], 1.0 / 9.0));
    CHECK(close(eq.x[testutil::sites({6})[0]], 4.0 / 9.0));
    CHECK(close(eq.x[testutil::sites({7})[0]], 4.0 / 9.0));
    CHECK(close(eq.lambda, 4.0 / 9.0));
    auto cert = distgame::verify_nash(eq.x, mul);
    CHECK(cert.is_nash);
  }
}

TEST_CASE("weighted triangle cover in the small town") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("smalltown16_additive.json"));
  auto sup = checked(
      town, testutil::sites({5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16}), 2);
  REQUIRE(sup.valid());
  auto eq = distgame::construct_weighted_equilibrium(sup, town);
  CHECK(close(eq.lambda, 1.0 / 3.0));
  for (int v : sup.nodes) {
    double w = town.weights()[v];
    CHECK(close(eq.x[v] * w, eq.x[sup.nodes[0]] * town.weights()[sup.nodes[0]]));
    CHECK((close(eq.x[v], 1.0 / 18.0) || close(eq.x[v], 2.0 / 18.0)));
  }
  auto cert = distgame::verify_nash(eq.x, town);
  CHECK(cert.is_nash);
  auto p = distgame::site_contacts(eq.x, town);
  CHECK(close(p(0), 5.0 / 12.0));  // the town hub stays above lambda
}

TEST_CASE("weighted construction refuses mixed-weight components") {
  // triangle with unequal weights on one component
  Network tri(3, {{0, 1}, {1, 2}, {0, 2}}, 1.0, {2.0, 1.0, 1.0},
              WeightScheme::additive);
  auto sup = checked(tri, {0, 1, 2}, 2);
  REQUIRE(sup.valid());
  CHECK_THROWS_WITH_AS(distgame::construct_weighted_equilibrium(sup, tri),
                       doctest::Contains("mixed"), std::invalid_argument);
}

TEST_CASE("inverse proportionality across components") {
  // two triangles with different (component-uniform) weights
  Network two(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}, 1.0,
              {1.0, 1.0, 1.0, 3.0, 3.0, 3.0}, WeightScheme::additive);
  auto sup = checked(two, {0, 1, 2, 3, 4, 5}, 2);
  REQUIRE(sup.regular);
  auto eq = distgame::construct_weighted_equilibrium(sup, two);
  // x_i * w_i constant across all support sites
  double ref = eq.x[0] * 1.0;
  for (int v : {3, 4, 5}) CHECK(close(eq.x[v] * 3.0, ref));
  // 1/wbar = 3/1 + 3/3 = 4 -> lambda = 3 * (1/4)
  CHECK(close(eq.lambda, 0.75));
  auto cert = distgame::verify_nash(eq.x, two);
  CHECK(cert.is_nash);
}

TEST_CASE("enumeration on hand-solved games") {
  SUBCASE("single edge has three equilibria") {
    Network k2(2, {{0, 1}});
    auto res = distgame::enumerate_nash(k2);
    REQUIRE(res.certificates.size() == 3);
    CHECK(res.supports_scanned == 3);
    // sorted by support size: the two deltas first, then the interior split
    CHECK(res.certificates[0].support == std::vector<int>{0});
    CHECK(res.certificates[1].support == std::vector<int>{1});
    CHECK(res.certificates[2].support == std::vector<int>{0, 1});
    // the full-support system is rank-deficient; min-norm picks the split
    CHECK(close(res.certificates[2].x[0], 0.5));
    CHECK(close(res.certificates[2].lambda, 1.0));
  }
  SUBCASE("edgeless network has only the uniform equilibrium") {
    Network empty(3, {});
    auto res = distgame::enumerate_nash(empty);
    REQUIRE(res.certificates.size() == 1);
    CHECK(res.certificates[0].support == std::vector<int>{0, 1, 2});
    for (int i = 0; i < 3; ++i)
      CHECK(close(res.certificates[0].x[i], 1.0 / 3.0));
    CHECK(close(res.certificates[0].lambda, 1.0 / 3.0));
  }
  SUBCASE("complete triangle: every subset equalizes") {
    Network k3(3, {{0, 1}, {1, 2}, {0, 2}});
    auto res = distgame::enumerate_nash(k3);
    CHECK(res.certificates.size() == 7);
    for (const auto& cert : res.certificates) CHECK(close(cert.lambda, 1.0));
  }
  SUBCASE("star: the center singleton and leaf-set equilibria") {
    Network star(4, {{0, 1}, {0, 2}, {0, 3}});
    auto res = distgame::enumerate_nash(star);
    bool center = false;
    for (const auto& cert : res.certificates) {
      if (cert.support == std::vector<int>{0}) {
        center = true;
        CHECK(close(cert.lambda, 1.0));
      }
      // every equilibrium support is either {0} or leaf-only
      if (cert.support != std::vector<int>{0})
        CHECK(std::find(cert.support.begin(), cert.support.end(), 0) ==
              cert.support.end());
    }
    CHECK(center);
  }
}

TEST_CASE("enumeration bookkeeping is consistent") {
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  auto res = distgame::enumerate_nash(town);
  CHECK(res.supports_scanned == 1023);
  CHECK(res.certificates.size() == 7);
  int accounted = static_cast<int>(res.certificates.size()) + res.infeasible +
                  res.rejected + res.duplicates;
  CHECK(accounted == res.supports_scanned);
  // independence from iteration order: certificates sorted by support size
  for (std::size_t i = 1; i < res.certificates.size(); ++i)
    CHECK(res.certificates[i - 1].support.size() <=
          res.certificates[i].support.size());
  CHECK_THROWS_AS(distgame::enumerate_nash(testutil::random_graph(15, 0.5, 1)),
                  std::invalid_argument);
}

TEST_CASE("every constructed equilibrium appears in the enumeration") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    int n = 4 + static_cast<int>(seed % 7);  // 4..10
    auto net = testutil::random_graph(n, 0.4, 2000 + seed);
    auto mis = distgame::enumerate_maximal_independent_sets(net);
    auto all = distgame::enumerate_nash(net);
    for (const auto& set : mis.sets) {
      auto sup = checked(net, set, 0);
      REQUIRE(sup.valid());  // covering is exactly the r = 0 link bound
      auto eq = distgame::construct_uniform_equilibrium(sup);
      bool present = false;
      for (const auto& cert : all.certificates) {
        double dist = (cert.x.values() - eq.x.values()).lpNorm<Eigen::Infinity>();
        if (dist <= 1e-8) present = true;
      }
      CHECK(present);
    }
  }
}

TEST_CASE("distancing and networking games are dual") {
  // flip edges and self-contact: mu* = 1 - lambda*, contacts complement
  Network town = distgame::network_from_json(
      testutil::fixture_text("town10.json"));
  auto sup = checked(town, testutil::sites({3, 5, 9}), 0);
  auto eq = distgame::construct_uniform_equilibrium(sup);

  Network dual = distgame::complement(town);
  Network dual0(dual.node_count(), dual.edges(), 0.0);
  VerifyOptions opts;
  opts.sense = GameSense::maximize;
  auto cert = distgame::verify_nash(eq.x, dual0, opts);
  CHECK(cert.is_nash);
  CHECK(close(cert.lambda, 1.0 - eq.lambda));
  // pointwise: contacts in one game mirror the other
  auto p = distgame::site_contacts(eq.x, town);
  auto q = distgame::site_contacts(eq.x, dual0);
  for (int i = 0; i < town.node_count(); ++i) CHECK(close(p(i) + q(i), 1.0));
}
