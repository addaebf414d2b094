#include <doctest.h>

#include <cmath>
#include <vector>

#include "aoi/errors.h"
#include "aoi/eus.h"
#include "aoi/policy.h"
#include "support.h"

using namespace aoi;

TEST_SUITE("policy") {
  TEST_CASE("virtual queue") {
    CHECK(virtual_queue_update(0.0, 0.3, 1) == doctest::Approx(0.7));
    CHECK(virtual_queue_update(0.2, 0.3, 0) == 0.0);
    CHECK(virtual_queue_update(1.0, 0.3, 0) == doctest::Approx(0.7));
    CHECK(virtual_queue_update(0.0, 1.0, 1) == 0.0);
  }

  TEST_CASE("threshold rule") {
    const std::vector<double> alpha = {0.5, 0.5}, eta = {0.25, 0.25};
    const std::vector<double> hhat = {5.0, 3.0};
    const std::vector<Slot> w = {1, 0};
    // Indices: 0.5*4/0.25 = 8 and 0.5*3/0.25 = 6.
    CHECK(dpp_decide(1.0, 0.0, alpha, eta, hhat, w) == Decision{0});
    CHECK(dpp_decide(1.0, 8.0, alpha, eta, hhat, w) == Decision{0});
    CHECK(dpp_decide(1.0, 8.0001, alpha, eta, hhat, w).idle());
    CHECK(dpp_decide(2.0, 4.0, alpha, eta, hhat, w) == Decision{0});
    CHECK(dpp_decide(2.0, 4.5, alpha, eta, hhat, w).idle());
  }

  TEST_CASE("zero trade-off transmits every slot") {
    const std::vector<double> alpha = {0.2, 0.8}, eta = {0.3, 0.6};
    const std::vector<double> hhat = {2.0, 1.0};
    const std::vector<Slot> w = {0, 0};
    for (double Q : {0.0, 5.0, 1e9}) CHECK(dpp_decide(0.0, Q, alpha, eta, hhat, w) == Decision{0});
  }

  TEST_CASE("ties go to the lowest index") {
    const std::vector<double> alpha = {0.25, 0.25, 0.25, 0.25}, eta = {0.1, 0.1, 0.1, 0.1};
    const std::vector<double> hhat = {2.0, 4.0, 4.0, 3.0};
    const std::vector<Slot> w = {0, 0, 0, 0};
    CHECK(dpp_decide(1.0, 0.0, alpha, eta, hhat, w) == Decision{1});
    const std::vector<double> flat = {3.0, 3.0, 3.0, 3.0};
    CHECK(dpp_decide(1.0, 0.0, alpha, eta, flat, w) == Decision{0});
  }

  TEST_CASE("decision is invariant to weight scale when the queue is empty") {
    const std::vector<double> eta = {0.2, 0.3, 0.1};
    const std::vector<double> hhat = {4.0, 7.0, 2.5};
    const std::vector<Slot> w = {1, 3, 0};
    const std::vector<double> alpha = {0.3, 0.5, 0.2};
    const auto base = dpp_decide(1.0, 0.0, alpha, eta, hhat, w);
    for (double c : {0.01, 3.0, 1000.0}) {
      std::vector<double> scaled = alpha;
      for (auto& a : scaled) a *= c;
      CHECK(dpp_decide(1.0, 0.0, scaled, eta, hhat, w) == base);
    }
  }

  TEST_CASE("policy object matches the free function") {
    auto in = testing_support::table_inputs(0.3);
    in.V = 2.5;
    const DppPolicy p(in);
    CHECK(p.V() == 2.5);
    CHECK(p.eta() == eta_star(in));
    for (std::size_t n = 0; n < in.size(); ++n)
      CHECK(p.theta()[n] == theta(in.alphas[n], in.epsilons[n], p.eta()[n]));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(1.0, 30.0);
    for (int i = 0; i < 2000; ++i) {
      std::vector<double> hhat(4);
      std::vector<Slot> w(4, 0);
      for (auto& h : hhat) h = U(rng);
      const double Q = U(rng) - 1.0;
      CHECK(p.decide(Q, hhat, w) == dpp_decide(in.V, Q, in.alphas, p.eta(), hhat, w));
    }
  }

  TEST_CASE("randomized frequencies") {
    const std::vector<double> eta = {0.1, 0.25, 0.4};
    Rng rng = make_stream(1, 0, Stream::Policy);
    std::vector<int> count(4, 0);
    const int draws = 1'000'000;
    for (int i = 0; i < draws; ++i) {
      const auto d = randomized_decide(eta, rng);
      ++count[d.scheduled.value_or(3)];
    }
    const double expected[] = {0.1, 0.25, 0.4, 0.25};
    for (std::size_t n = 0; n < 4; ++n) {
      const double p = expected[n];
      CHECK(std::abs(count[n] / static_cast<double>(draws) - p) <=
            4 * std::sqrt(p * (1 - p) / draws));
    }
  }

  TEST_CASE("schedule lookup") {
    const auto s = make_schedule({0, 1}, {4, 6});
    CHECK(eus_decide(s, 0) == Decision{0});
    CHECK(eus_decide(s, 1) == Decision{1});
    CHECK(eus_decide(s, 2).idle());
    CHECK(eus_decide(s, 4) == Decision{0});
    CHECK(eus_decide(s, 7) == Decision{1});
  }

  TEST_CASE("round robin") {
    CHECK(round_robin_decide(2, 1.0, 0) == Decision{0});
    CHECK(round_robin_decide(2, 1.0, 1) == Decision{1});
    CHECK(round_robin_decide(2, 1.0, 2) == Decision{0});
    CHECK(round_robin_decide(3, 0.5, 0).idle());
    CHECK(round_robin_decide(3, 0.5, 1) == Decision{0});
    CHECK(round_robin_decide(3, 0.5, 3) == Decision{1});
    CHECK(round_robin_decide(0, 0.5, 1).idle());

    const Slot T = 100'000;
    std::vector<int> count(3, 0);
    int tx = 0;
    for (Slot t = 0; t < T; ++t) {
      const auto d = round_robin_decide(3, 0.3, t);
      if (d.idle()) continue;
      ++tx;
      ++count[*d.scheduled];
    }
    CHECK(std::abs(tx / static_cast<double>(T) - 0.3) <= 1e-4);
    for (int c : count) CHECK(std::abs(c / static_cast<double>(T) - 0.1) <= 0.001);
  }

  TEST_CASE("policy names") {
    for (auto k : {PolicyKind::Dpp, PolicyKind::Randomized, PolicyKind::Eus, PolicyKind::RoundRobin})
      CHECK(policy_from_string(to_string(k)) == k);
    CHECK(to_string(PolicyKind::RoundRobin) == "round_robin");
    CHECK_THROWS_AS(policy_from_string("greedy"), ParameterError);
  }
}
