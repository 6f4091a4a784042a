#include <doctest.h>

#include <random>

#include "revpref/abstract.hpp"
#include "revpref/engine.hpp"
#include "support.hpp"

using namespace revpref;
using namespace revpref::testing;

namespace {

std::vector<Bundle> bundles(std::vector<std::vector<std::string>> qs) {
  std::vector<Bundle> out;
  for (auto& q : qs) out.push_back(bundle(q));
  return out;
}

std::vector<Rational> probs(std::vector<std::string> ps) {
  std::vector<Rational> out;
  for (const auto& p : ps) out.push_back(parse_rational(p));
  return out;
}

// Single observation: (1,0) chosen while (0,2) was affordable.
ChoiceDataset state_lottery_dataset() {
  return ChoiceDataset({"risky", "safe"},
                       {bundle({"1", "0"}), bundle({"0", "2"})},
                       {{{0}, {0, 1}}});
}

}  // namespace

TEST_CASE("preorder validation") {
  CHECK_FALSE(validate_preorder(identity_preorder(3)));
  SUBCASE("missing transitivity is located") {
    Preorder p = identity_preorder(3);
    p.relation.set(0, 1);
    p.relation.set(1, 2);
    const auto failure = validate_preorder(p);
    REQUIRE(failure.has_value());
    CHECK(failure->kind == PreorderFailure::Kind::not_transitive);
    CHECK(failure->a == 0);
    CHECK(failure->b == 1);
    CHECK(failure->c == 2);
  }
  SUBCASE("missing reflexivity is located") {
    Preorder p{BoolMatrix(2)};
    p.relation.set(0, 0);
    const auto failure = validate_preorder(p);
    REQUIRE(failure.has_value());
    CHECK(failure->kind == PreorderFailure::Kind::not_reflexive);
    CHECK(failure->a == 1);
  }
  SUBCASE("component-wise dominance over a grid is a preorder") {
    std::vector<Bundle> grid;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        grid.push_back(bundle({std::to_string(a), std::to_string(b)}));
      }
    }
    CHECK_FALSE(validate_preorder(componentwise_geq_preorder(grid)));
  }
}

TEST_CASE("stochastic dominance") {
  const auto ground = bundles({{"0", "2"}, {"1", "0"}, {"0", "1"}});
  const auto p = fosd_preorder(ground, probs({"1/2", "1/2"}));
  SUBCASE("(0,2) strictly dominates (1,0)") {
    CHECK(p.holds(0, 1));
    CHECK(p.strictly(0, 1));
  }
  SUBCASE("(1,0) and (0,1) have identical payout distributions") {
    CHECK(p.holds(1, 2));
    CHECK(p.holds(2, 1));
    CHECK_FALSE(p.strictly(1, 2));
  }
  SUBCASE("reflexive and transitive") {
    CHECK_FALSE(validate_preorder(p));
  }
  SUBCASE("point mass collapses to one coordinate") {
    const auto ground2 = bundles({{"3", "0"}, {"2", "9"}, {"3", "7"}});
    const auto point_mass = fosd_preorder(ground2, probs({"1", "0"}));
    for (size_t a = 0; a < ground2.size(); ++a) {
      for (size_t b = 0; b < ground2.size(); ++b) {
        CHECK(point_mass.holds(a, b) ==
              (ground2[a].quantities[0] >= ground2[b].quantities[0]));
      }
    }
  }
  SUBCASE("bad probability vectors are rejected") {
    CHECK_THROWS_AS(fosd_preorder(ground, probs({"1/2", "1/4"})), std::invalid_argument);
    CHECK_THROWS_AS(fosd_preorder(ground, probs({"3/2", "-1/2"})), std::invalid_argument);
    CHECK_THROWS_AS(fosd_preorder(bundles({{"1"}}), probs({"1/2", "1/2"})), std::invalid_argument);
  }
}

TEST_CASE("impatience order") {
  const auto ground = bundles({{"2", "1"}, {"1", "2"}, {"3", "0"}, {"1", "1"}});
  const auto p = impatience_preorder(ground);
  SUBCASE("earlier consumption of the larger amount dominates") {
    CHECK(p.holds(0, 1));
    CHECK_FALSE(p.holds(1, 0));
  }
  SUBCASE("chains cannot leave the ground set") {
    CHECK_FALSE(p.holds(2, 3));
    CHECK_FALSE(p.holds(3, 2));
  }
  SUBCASE("reflexive, transitive, validated") {
    CHECK(p.holds(3, 3));
    CHECK_FALSE(validate_preorder(p));
  }
  SUBCASE("swap targets reachable through the ground set are found") {
    const auto ground2 = bundles({{"3", "0"}, {"0", "3"}, {"0", "1"}});
    const auto p2 = impatience_preorder(ground2);
    CHECK(p2.holds(0, 2));  // (3,0) over (0,3) over (0,1)
    CHECK_FALSE(validate_preorder(p2));
  }
  SUBCASE("random grounds stay reflexive and transitive") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 40; ++round) {
      std::vector<Bundle> g;
      const int n = 2 + static_cast<int>(rng() % 8);
      for (int i = 0; i < n; ++i) {
        g.push_back(bundle({std::to_string(rng() % 6), std::to_string(rng() % 6)}));
      }
      CHECK_FALSE(validate_preorder(impatience_preorder(g)));
      std::vector<Rational> pi{make_rational(1, 4), make_rational(3, 4)};
      CHECK_FALSE(validate_preorder(fosd_preorder(g, pi)));
    }
  }
  SUBCASE("only two-period streams are accepted") {
    CHECK_THROWS_AS(impatience_preorder(bundles({{"1", "2", "3"}})), std::invalid_argument);
  }
}

TEST_CASE("dominance relations over observations") {
  const auto data = state_lottery_dataset();
  SUBCASE("the dominated choice is a strict self-loop") {
    const auto p = fosd_preorder(data.coordinate_payloads(), probs({"1/2", "1/2"}));
    const auto rel = build_order_relations(data, p);
    CHECK(rel.weak.get(0, 0));
    CHECK(rel.strict.get(0, 0));
  }
  SUBCASE("the identity preorder reduces to availability") {
    const auto rel = build_order_relations(data, identity_preorder(2));
    CHECK(rel.weak.get(0, 0));
    CHECK_FALSE(rel.strict.get(0, 0));
  }
  SUBCASE("disjoint budgets under identity produce no cross edges") {
    const ChoiceDataset data2({"a", "b", "c", "d"}, {std::nullopt, std::nullopt, std::nullopt, std::nullopt},
                              {{{0}, {0, 1}}, {{2}, {2, 3}}});
    const auto rel = build_order_relations(data2, identity_preorder(4));
    CHECK_FALSE(rel.weak.get(0, 1));
    CHECK_FALSE(rel.weak.get(1, 0));
  }
  SUBCASE("multi-valued choices are rejected") {
    const ChoiceDataset multi({"a", "b"}, {std::nullopt, std::nullopt}, {{{0, 1}, {0, 1}}});
    CHECK_THROWS_AS(build_order_relations(multi, identity_preorder(2)), std::invalid_argument);
  }
  SUBCASE("preorder size must match the ground set") {
    CHECK_THROWS_AS(build_order_relations(data, identity_preorder(5)), std::invalid_argument);
  }
}

TEST_CASE("dominance acyclicity verdicts") {
  const auto data = state_lottery_dataset();
  SUBCASE("the lottery example fails with a self-loop") {
    const auto p = fosd_preorder(data.coordinate_payloads(), probs({"1/2", "1/2"}));
    const auto witness = check_order_garp(data, p);
    REQUIRE(witness.has_value());
    CHECK(witness->cycle == std::vector<int>{0});
    CHECK(witness->strict_edge == std::pair<int, int>{0, 0});
  }
  SUBCASE("the same data passes under the identity preorder") {
    CHECK_FALSE(check_order_garp(data, identity_preorder(2)));
  }
  SUBCASE("maximal choices from disjoint, cross-incomparable budgets pass") {
    const auto ground = bundles({{"2", "2"}, {"1", "1"}, {"0", "9"}, {"0", "8"}});
    const ChoiceDataset data2({"a", "b", "c", "d"},
                              {std::optional<Bundle>(ground[0]), ground[1], ground[2], ground[3]},
                              {{{0}, {0, 1}}, {{2}, {2, 3}}});
    const auto p = componentwise_geq_preorder(ground);
    const auto rel = build_order_relations(data2, p);
    for (int t = 0; t < 2; ++t) {
      for (int s = 0; s < 2; ++s) CHECK_FALSE(rel.strict.get(t, s));
    }
    CHECK_FALSE(check_order_garp(data2, p));
  }
  SUBCASE("strict dominance can cross disjoint budgets and close a cycle") {
    const auto ground = bundles({{"3", "0"}, {"0", "9"}, {"0", "8"}, {"4", "0"}});
    const ChoiceDataset data2({"x1", "z1", "x2", "z2"},
                              {std::optional<Bundle>(ground[0]), ground[1], ground[2], ground[3]},
                              {{{0}, {0, 1}}, {{2}, {2, 3}}});
    const auto witness = check_order_garp(data2, componentwise_geq_preorder(ground));
    REQUIRE(witness.has_value());
    CHECK(witness->cycle.size() == 2);
  }
}

TEST_CASE("order rationalization") {
  SUBCASE("a two-element strict chain gets levels one and zero") {
    Preorder p = identity_preorder(2);
    p.relation.set(0, 1);  // a above b
    const ChoiceDataset data({"a", "b"}, {std::nullopt, std::nullopt}, {{{0}, {0, 1}}});
    const auto utility = order_rationalize(data, p);
    CHECK(utility == std::vector<long>{1, 0});
  }
  SUBCASE("weak-only data may sit on one level") {
    const ChoiceDataset data({"a", "b"}, {std::nullopt, std::nullopt}, {{{0}, {0, 1}}});
    const auto utility = order_rationalize(data, identity_preorder(2));
    CHECK(utility == std::vector<long>{0, 0});
  }
  SUBCASE("failing data is rejected") {
    const auto data = state_lottery_dataset();
    const auto p = fosd_preorder(data.coordinate_payloads(), probs({"1/2", "1/2"}));
    CHECK_THROWS_AS(order_rationalize(data, p), AxiomViolation);
  }
  SUBCASE("random instances satisfy all three requirements") {
    std::mt19937_64 rng(808);
    int rationalized = 0;
    for (int round = 0; round < 120; ++round) {
      const int n = 2 + static_cast<int>(rng() % 8);
      std::vector<Bundle> ground;
      std::vector<std::string> labels;
      std::vector<std::optional<Bundle>> coords;
      for (int i = 0; i < n; ++i) {
        ground.push_back(bundle({std::to_string(rng() % 5), std::to_string(rng() % 5)}));
        labels.push_back("g" + std::to_string(i));
        coords.emplace_back(ground.back());
      }
      const Preorder p = rng() % 2 ? componentwise_geq_preorder(ground)
                                   : fosd_preorder(ground, probs({"1/3", "2/3"}));
      CHECK_FALSE(validate_preorder(p));
      std::vector<ChoiceObservation> obs;
      const int t_count = 1 + static_cast<int>(rng() % 4);
      for (int t = 0; t < t_count; ++t) {
        ChoiceObservation o;
        for (int i = 0; i < n; ++i) {
          if (rng() % 2) o.budget.push_back(i);
        }
        if (o.budget.empty()) o.budget.push_back(static_cast<int>(rng() % n));
        o.chosen.push_back(o.budget[rng() % o.budget.size()]);
        obs.push_back(std::move(o));
      }
      const ChoiceDataset data(std::move(labels), std::move(coords), std::move(obs));
      if (check_order_garp(data, p)) {
        CHECK_THROWS_AS(order_rationalize(data, p), AxiomViolation);
        continue;
      }
      ++rationalized;
      const auto utility = order_rationalize(data, p);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (p.holds(a, b)) CHECK(utility[a] >= utility[b]);
          if (p.strictly(a, b)) CHECK(utility[a] > utility[b]);
        }
      }
      for (int t = 0; t < data.observations(); ++t) {
        for (int z : data.observation(t).budget) {
          CHECK(utility[data.observation(t).chosen.front()] >= utility[z]);
        }
      }
    }
    CHECK(rationalized > 10);
  }
}

TEST_CASE("congruence") {
  SUBCASE("a single choice passes") {
    const ChoiceDataset data({"a", "b"}, {std::nullopt, std::nullopt}, {{{0}, {0, 1}}});
    CHECK_FALSE(check_congruence(data));
  }
  SUBCASE("opposite singleton choices from the same budget collide") {
    const ChoiceDataset data({"a", "b"}, {std::nullopt, std::nullopt},
                             {{{0}, {0, 1}}, {{1}, {0, 1}}});
    const auto witness = check_congruence(data);
    REQUIRE(witness.has_value());
    CHECK(witness->cycle.size() == 2);
  }
  SUBCASE("jointly acceptable choices pass") {
    const ChoiceDataset data({"a", "b"}, {std::nullopt, std::nullopt},
                             {{{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}});
    CHECK_FALSE(check_congruence(data));
  }
}

TEST_CASE("dominance testing agrees with direct revealed preference") {
  // Ground set: the observed bundles plus, for every strictly affordable pair,
  // a witness point just above the cheaper bundle; budgets are the affordable
  // ground elements.  With component-wise dominance the two tests coincide.
  std::mt19937_64 rng(20202);
  for (int round = 0; round < 60; ++round) {
    const int t_count = 2 + static_cast<int>(rng() % 4);
    const auto d = random_dataset(rng, t_count, 2);
    const auto rp = build_rp(d);

    std::vector<Bundle> ground;
    for (int t = 0; t < t_count; ++t) ground.push_back(d.bundle(t));
    for (int t = 0; t < t_count; ++t) {
      for (int s = 0; s < t_count; ++s) {
        if (!rp.strict.get(t, s)) continue;
        Rational price_sum = 0;
        for (const Rational& p : d.prices(t).prices) price_sum += p;
        const Rational room = (d.cost(t, t) - d.cost(t, s)) / price_sum;
        Bundle z = d.bundle(s);
        for (Rational& q : z.quantities) q += room;
        ground.push_back(std::move(z));
      }
    }
    const int n = static_cast<int>(ground.size());
    std::vector<std::string> labels;
    std::vector<std::optional<Bundle>> coords;
    for (int i = 0; i < n; ++i) {
      labels.push_back("g" + std::to_string(i));
      coords.emplace_back(ground[i]);
    }
    std::vector<ChoiceObservation> obs;
    for (int t = 0; t < t_count; ++t) {
      ChoiceObservation o;
      o.chosen.push_back(t);
      for (int i = 0; i < n; ++i) {
        if (dot(d.prices(t).prices, ground[i].quantities) <= d.cost(t, t)) o.budget.push_back(i);
      }
      obs.push_back(std::move(o));
    }
    const ChoiceDataset data(std::move(labels), std::move(coords), std::move(obs));
    const auto p = componentwise_geq_preorder(ground);

    const bool direct_fails = check_garp_like(rp).has_value();
    const bool order_fails = check_order_garp(data, p).has_value();
    CHECK(direct_fails == order_fails);
  }
}

TEST_CASE("observed-only grounds can only drop strict edges") {
  std::mt19937_64 rng(20203);
  for (int round = 0; round < 40; ++round) {
    const int t_count = 2 + static_cast<int>(rng() % 4);
    const auto d = random_dataset(rng, t_count, 2);
    if (check_garp_like(build_rp(d))) continue;
    std::vector<Bundle> ground;
    std::vector<std::string> labels;
    std::vector<std::optional<Bundle>> coords;
    for (int t = 0; t < t_count; ++t) {
      ground.push_back(d.bundle(t));
      labels.push_back("g" + std::to_string(t));
      coords.emplace_back(ground.back());
    }
    std::vector<ChoiceObservation> obs;
    for (int t = 0; t < t_count; ++t) {
      ChoiceObservation o;
      o.chosen.push_back(t);
      for (int i = 0; i < t_count; ++i) {
        if (d.cost(t, i) <= d.cost(t, t)) o.budget.push_back(i);
      }
      obs.push_back(std::move(o));
    }
    const ChoiceDataset data(std::move(labels), std::move(coords), std::move(obs));
    CHECK_FALSE(check_order_garp(data, componentwise_geq_preorder(ground)));
  }
}
