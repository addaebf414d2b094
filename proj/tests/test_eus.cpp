#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "aoi/bounds.h"
#include "aoi/errors.h"
#include "aoi/eus.h"
#include "oracle.h"
#include "support.h"

using namespace aoi;
using namespace testing_support;

namespace {

std::vector<Rational> reciprocals(const std::vector<std::int64_t>& periods) {
  std::vector<Rational> r;
  for (auto p : periods) r.emplace_back(1, p);
  return r;
}

}  // namespace

TEST_SUITE("eus") {
  TEST_CASE("modular admissibility examples") {
    const std::vector<std::int64_t> p46 = {4, 6};
    CHECK(check_eus_condition(std::vector<std::int64_t>{0, 1}, p46));
    CHECK_FALSE(collides_by_enumeration({0, 1}, p46));
    CHECK_FALSE(check_eus_condition(std::vector<std::int64_t>{0, 0}, p46));
    const std::vector<std::int64_t> x = {0, 1, 2, 6, 10, 3, 9};
    const std::vector<std::int64_t> p = {4, 6, 20, 20, 20, 12, 12};
    CHECK(check_eus_condition(x, p));
    CHECK_FALSE(collides_by_enumeration(x, p));
  }

  TEST_CASE("admissibility matches enumeration on random small schedules") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 2000; ++trial) {
      const std::size_t N = 2 + rng() % 3;
      std::vector<std::int64_t> x(N), p(N);
      for (std::size_t n = 0; n < N; ++n) {
        p[n] = 1 + static_cast<std::int64_t>(rng() % 12);
        x[n] = static_cast<std::int64_t>(rng() % 15);
      }
      CHECK(check_eus_condition(x, p) == !collides_by_enumeration(x, p));
    }
  }

  TEST_CASE("real-valued periods must be integers") {
    const std::vector<std::int64_t> x = {0, 1};
    CHECK(check_eus_condition(x, std::vector<double>{4.0, 6.0}));
    CHECK_THROWS_AS(check_eus_condition(x, std::vector<double>{4.5, 6.0}), ParameterError);
    CHECK_THROWS_AS(check_eus_condition(x, std::vector<double>{0.0, 6.0}), ParameterError);
  }

  TEST_CASE("two halves") {
    const auto rates = reciprocals({2, 2});
    const auto tree = build_splitting_tree(rates);
    REQUIRE(tree);
    CHECK(tree->nodes[0].prime == 2);
    CHECK(tree->nodes[0].modulus == 1);
    REQUIRE(tree->nodes[0].children.size() == 2);
    CHECK(tree->leaves().size() == 2);
    const auto offsets = offsets_from_tree(*tree, assign_leaves(*tree, rates));
    CHECK(offsets == std::vector<std::int64_t>{0, 1});
  }

  TEST_CASE("worked seven-source example") {
    const std::vector<std::int64_t> periods = {4, 6, 20, 20, 20, 12, 12};
    const auto rates = reciprocals(periods);
    const auto tree = build_splitting_tree(rates);
    REQUIRE(tree);
    for (const auto& node : tree->nodes) {
      if (node.prime == 0) continue;
      CHECK(node.children.size() == static_cast<std::size_t>(node.prime));
      for (std::size_t k = 0; k < node.children.size(); ++k) {
        const auto& c = tree->nodes[node.children[k]];
        CHECK(c.modulus == node.modulus * node.prime);
        CHECK(c.offset == node.offset + static_cast<std::int64_t>(k) * node.modulus);
      }
    }
    CHECK(tree->leaves().size() == 10);
    const auto offsets = offsets_from_tree(*tree, assign_leaves(*tree, rates));
    CHECK(offsets == std::vector<std::int64_t>{0, 1, 2, 6, 10, 3, 9});

    const auto s = make_schedule(offsets, periods);
    CHECK(s.hyperperiod == 60);
    const auto scan = scan_hyperperiod(s);
    CHECK(scan.collisions == 0);
    CHECK(std::accumulate(scan.transmissions.begin(), scan.transmissions.end(),
                          std::uint64_t{0}) == 44);
    CHECK(scan.transmissions ==
          std::vector<std::uint64_t>{15, 10, 3, 3, 3, 5, 5});
  }

  TEST_CASE("no tree when periods are coprime") {
    CHECK_FALSE(build_splitting_tree(reciprocals({2, 3})));
    CHECK_FALSE(some_offsets_exist({2, 3}));
    CHECK_FALSE(build_splitting_tree(reciprocals({2, 2, 2})));
  }

  TEST_CASE("tree search is sufficient, not necessary") {
    // Pairwise gcds 2, 3, 5 admit offsets (0, 1, 2) but no common split.
    CHECK_FALSE(build_splitting_tree(reciprocals({6, 10, 15})));
    CHECK(some_offsets_exist({6, 10, 15}));
    CHECK(check_eus_condition(std::vector<std::int64_t>{0, 1, 2},
                              std::vector<std::int64_t>{6, 10, 15}));
  }

  TEST_CASE("rates must be unit fractions") {
    const std::vector<Rational> bad = {Rational(2, 5)};
    CHECK_THROWS_AS(build_splitting_tree(bad), ParameterError);
    const std::vector<Rational> zero = {Rational(0)};
    CHECK_THROWS_AS(build_splitting_tree(zero), ParameterError);
  }

  TEST_CASE("single full-rate source") {
    const auto s = construct_eus_periods(std::vector<std::int64_t>{1});
    REQUIRE(s);
    CHECK(s->offsets == std::vector<std::int64_t>{0});
  }

  TEST_CASE("schedule generation") {
    const auto alt = make_schedule({0, 1}, {2, 2});
    CHECK(generate_schedule(alt, 6) == std::vector<int>{0, 1, 0, 1, 0, 1});
    CHECK(scheduled_source(alt, 4) == 0);
    const auto late = make_schedule({3, 4}, {2, 2});
    CHECK(scheduled_source(late, 2) == -1);
    CHECK_THROWS_AS(generate_schedule(make_schedule({0, 2}, {2, 4}), 10), ValidationError);

    const auto split = rate_split(testing_support::table_inputs(0.1));
    const auto s = construct_eus(split);
    REQUIRE(s);
    CHECK(s->periods == std::vector<std::int64_t>{120, 60, 40, 20});
    CHECK(s->hyperperiod == 120);
    const auto slots = generate_schedule(*s, 120);
    std::vector<int> count(4, 0);
    for (int v : slots)
      if (v >= 0) ++count[static_cast<std::size_t>(v)];
    CHECK(count == std::vector<int>{1, 2, 3, 6});
  }

  TEST_CASE("table splits with and without a tree") {
    for (double rho : {0.1, 1.0 / 6, 0.2, 0.25, 0.5})
      CHECK(construct_eus(rate_split(testing_support::table_inputs(rho))));
    for (double rho : {0.3, 0.8, 1.0})
      CHECK_FALSE(construct_eus(rate_split(testing_support::table_inputs(rho))));
    // Integer periods exist at full rate, but the split cannot be realized.
    CHECK(periods_from_split(rate_split(testing_support::table_inputs(1.0))));
    CHECK_FALSE(periods_from_split(rate_split(testing_support::table_inputs(0.3))));
  }

  TEST_CASE("fuzz: trees from random admissible multisets") {
    std::mt19937_64 rng(2024);
    int built = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      auto leaves = random_tree_leaves(rng, 64);
      std::shuffle(leaves.begin(), leaves.end(), rng);
      leaves.resize(1 + rng() % leaves.size());
      const auto rates = reciprocals(leaves);
      const auto tree = build_splitting_tree(rates);
      REQUIRE(tree);
      const auto offsets = offsets_from_tree(*tree, assign_leaves(*tree, rates));
      std::set<std::int64_t> distinct(offsets.begin(), offsets.end());
      CHECK(distinct.size() == offsets.size());
      for (std::size_t n = 0; n < offsets.size(); ++n) CHECK(offsets[n] < leaves[n]);
      const auto s = make_schedule(offsets, leaves);
      CHECK(check_eus_condition(s.offsets, s.periods));
      if (s.hyperperiod <= 2'000'000) {
        const auto scan = scan_hyperperiod(s);
        CHECK(scan.collisions == 0);
        for (std::size_t n = 0; n < leaves.size(); ++n)
          CHECK(scan.transmissions[n] ==
                static_cast<std::uint64_t>(s.hyperperiod / leaves[n]));
      } else {
        CHECK(scan_pairs(s) == 0);
      }
      ++built;
    }
    CHECK(built == 1000);
  }

  TEST_CASE("divisible periods always admit a tree") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 300; ++trial) {
      // Chain P_1 | P_2 | ... with total load at most one.
      std::vector<std::int64_t> periods;
      std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 3);
      Rational load{0};
      while (periods.size() < 8) {
        if (load + Rational(1, p) > 1) {
          p *= 2 + static_cast<std::int64_t>(rng() % 2);
          if (p > 4096) break;
          continue;
        }
        periods.push_back(p);
        load += Rational(1, p);
        if (rng() % 2) p *= 2 + static_cast<std::int64_t>(rng() % 2);
      }
      const auto s = construct_eus_periods(periods);
      REQUIRE(s);
      CHECK(scan_hyperperiod(*s).collisions == 0);
    }
  }

  TEST_CASE("found trees imply offsets exist") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t N = 1 + rng() % 4;
      std::vector<std::int64_t> periods(N);
      for (auto& p : periods) p = 1 + static_cast<std::int64_t>(rng() % 12);
      if (construct_eus_periods(periods)) CHECK(some_offsets_exist(periods));
    }
  }

  TEST_CASE("parallel and serial scans agree") {
    const auto s = construct_eus_periods(std::vector<std::int64_t>{2, 6, 30, 210, 2310});
    REQUIRE(s);
    const auto a = scan_hyperperiod(*s);
    const auto b = scan_hyperperiod_serial(*s);
    CHECK(a.collisions == b.collisions);
    CHECK(a.transmissions == b.transmissions);
    const auto bad = make_schedule({0, 0, 1}, {4, 6, 3});
    CHECK(scan_hyperperiod(bad).collisions == scan_hyperperiod_serial(bad).collisions);
    CHECK(scan_hyperperiod(bad).collisions > 0);
    CHECK(scan_pairs(bad) > 0);
  }

  TEST_CASE("schedule csv") {
    std::ostringstream os;
    write_schedule_csv(os, make_schedule({0, 1}, {2, 4}), 4);
    CHECK(os.str() == "slot,source\n0,1\n1,2\n2,1\n");
  }

  TEST_CASE("schedule construction errors") {
    CHECK_THROWS_AS(make_schedule({0}, {0}), ParameterError);
    CHECK_THROWS_AS(make_schedule({-1}, {3}), ParameterError);
    CHECK_THROWS_AS(make_schedule({0, 1}, {3}), ParameterError);
  }
}
