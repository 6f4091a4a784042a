#include <doctest.h>

#include <cmath>
#include <random>

#include "revpref/afriat.hpp"
#include "support.hpp"

using namespace revpref;
using namespace revpref::testing;

namespace {

PurchaseDataset single_obs() { return make_data({{"1", "1"}}, {{"1", "1"}}); }

void check_weak_system(const AfriatNumbers& n, const PurchaseDataset& d) {
  for (int t = 0; t < d.observations(); ++t) {
    CHECK(n.lambda[t] >= 1);
    for (int s = 0; s < d.observations(); ++s) {
      CHECK(n.u[s] <= n.u[t] + n.lambda[t] * (d.cost(t, s) - d.cost(t, t)));
    }
  }
}

}  // namespace

TEST_CASE("recursion base cases") {
  SUBCASE("single observation") {
    const auto n = afriat_numbers(single_obs());
    CHECK(n.u == std::vector<Rational>{0});
    CHECK(n.lambda == std::vector<Rational>{1});
    CHECK(n.levels == std::vector<int>{0});
  }
  SUBCASE("two unrelated observations have unit slack") {
    const auto d = unrelated_pair();
    const auto n = afriat_numbers(d);
    CHECK(n.u == std::vector<Rational>{0, 0});
    CHECK(n.lambda == std::vector<Rational>{1, 1});
    for (int t = 0; t < 2; ++t) {
      const int s = 1 - t;
      CHECK(n.u[t] + n.lambda[t] * (d.cost(t, s) - d.cost(t, t)) - n.u[s] == 1);
    }
  }
  SUBCASE("cyclic data is rejected with its witness") {
    CHECK_THROWS_AS(afriat_numbers(cross_priced_pair()), AxiomViolation);
    try {
      afriat_numbers(cross_priced_pair());
    } catch (const AxiomViolation& e) {
      CHECK(e.axiom() == "GARP");
      CHECK(e.witness().cycle.size() == 2);
    }
  }
}

TEST_CASE("levels order the recursion") {
  const auto d = shrinking_sequence(4);
  const auto n = afriat_numbers(d);
  CHECK(n.levels == std::vector<int>{3, 2, 1, 0});
  check_weak_system(n, d);
}

TEST_CASE("utility evaluation") {
  const auto d = single_obs();
  const auto n = afriat_numbers(d);
  SUBCASE("observed bundles attain their levels") {
    CHECK(evaluate_utility(n, d, d.bundle(0)) == n.u[0]);
  }
  SUBCASE("a doubled bundle gains its extra cost") {
    CHECK(evaluate_utility(n, d, bundle({"2", "2"})) == 2);
  }
  SUBCASE("uniformly cheaper points fall below every level") {
    const auto big = shrinking_sequence(3);
    const auto numbers = afriat_numbers(big);
    const Rational v = evaluate_utility(numbers, big, bundle({"0", "0"}));
    for (const Rational& u : numbers.u) CHECK(v <= u);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(evaluate_utility(n, d, bundle({"1"})), std::invalid_argument);
  }
}

TEST_CASE("rationalization, concavity, monotonicity on sampled points") {
  std::mt19937_64 rng(31);
  const auto d = shrinking_sequence(6);
  const auto n = afriat_numbers(d);
  const auto sample = [&] {
    Bundle y;
    for (int l = 0; l < d.goods(); ++l)
      y.quantities.push_back(make_rational(static_cast<long>(rng() % 9), 1 + static_cast<long>(rng() % 4)));
    return y;
  };
  for (int round = 0; round < 200; ++round) {
    const Bundle y = sample();
    // Affordable points never beat the observed bundle.
    for (int t = 0; t < d.observations(); ++t) {
      if (dot(d.prices(t).prices, y.quantities) <= d.cost(t, t)) {
        CHECK(evaluate_utility(n, d, y) <= evaluate_utility(n, d, d.bundle(t)));
      }
    }
    // Midpoint concavity.
    const Bundle z = sample();
    Bundle mid;
    for (int l = 0; l < d.goods(); ++l)
      mid.quantities.push_back((y.quantities[l] + z.quantities[l]) / 2);
    CHECK(evaluate_utility(n, d, mid) * 2 >=
          evaluate_utility(n, d, y) + evaluate_utility(n, d, z));
    // Strictly increasing in every positive direction.
    Bundle up = y;
    for (Rational& q : up.quantities) q += make_rational(1, 3);
    CHECK(evaluate_utility(n, d, up) > evaluate_utility(n, d, y));
  }
}

TEST_CASE("strict-margin numbers") {
  SUBCASE("single observation") {
    const auto n = sarp_numbers(single_obs());
    CHECK(n.u == std::vector<Rational>{0});
    CHECK(n.lambda == std::vector<Rational>{1});
    CHECK(n.strict_margin);
  }
  SUBCASE("a repeated bundle gets one level, no strict constraint") {
    const auto n = sarp_numbers(repeated_bundle_pair());
    CHECK(n.u[0] == n.u[1]);
  }
  SUBCASE("unrelated pair satisfies the strict system with slack") {
    const auto d = unrelated_pair();
    const auto n = sarp_numbers(d);
    for (int t = 0; t < 2; ++t) {
      const int s = 1 - t;
      CHECK(n.u[s] < n.u[t] + n.lambda[t] * (d.cost(t, s) - d.cost(t, t)));
    }
  }
  SUBCASE("cyclic data is rejected") {
    CHECK_THROWS_AS(sarp_numbers(cross_priced_pair()), AxiomViolation);
  }
}

TEST_CASE("perturbed utility") {
  SUBCASE("the unrelated pair gets epsilon one half") {
    const auto d = unrelated_pair();
    const auto utility = strict_concave_utility(sarp_numbers(d), d);
    REQUIRE(utility.perturbation.has_value());
    CHECK(utility.perturbation->epsilon == make_rational(1, 2));
    CHECK(utility.perturbation->t_param == 2);
  }
  SUBCASE("without distinct bundles only the slope bound matters") {
    const auto d = repeated_bundle_pair();
    const auto utility = strict_concave_utility(sarp_numbers(d), d);
    REQUIRE(utility.perturbation.has_value());
    CHECK(utility.perturbation->epsilon == make_rational(1, 2));
  }
  SUBCASE("weak-margin numbers are rejected") {
    const auto d = unrelated_pair();
    CHECK_THROWS_AS(strict_concave_utility(afriat_numbers(d), d), std::invalid_argument);
  }
  SUBCASE("epsilon is positive and the perturbed value stays within its bound") {
    std::mt19937_64 rng(5150);
    int built = 0;
    for (int round = 0; round < 40 && built < 12; ++round) {
      const auto d = random_dataset(rng, 2 + static_cast<int>(rng() % 3), 2);
      AfriatNumbers n;
      try {
        n = sarp_numbers(d);
      } catch (const AxiomViolation&) {
        continue;
      }
      ++built;
      const auto utility = strict_concave_utility(n, d);
      REQUIRE(utility.perturbation.has_value());
      CHECK(utility.perturbation->epsilon > 0);
      const double eps = utility.perturbation->epsilon.get_d();
      const double tp = utility.perturbation->t_param.get_d();
      for (int round2 = 0; round2 < 10; ++round2) {
        Bundle y;
        for (int l = 0; l < d.goods(); ++l)
          y.quantities.push_back(make_rational(static_cast<long>(rng() % 7), 2));
        double max_g = 0;
        for (int t = 0; t < d.observations(); ++t) {
          Rational sq = 0;
          for (int l = 0; l < d.goods(); ++l) {
            const Rational diff = y.quantities[l] - d.bundle(t).quantities[l];
            sq += diff * diff;
          }
          max_g = std::max(max_g, std::sqrt(sq.get_d() + tp) - std::sqrt(tp));
        }
        const double gap = utility.exact(y).get_d() - utility.value(y);
        CHECK(gap >= -1e-9);
        CHECK(gap <= eps * max_g + 1e-9);
      }
    }
    CHECK(built > 0);
  }
}

TEST_CASE("expenditure-table numbers") {
  SUBCASE("a linear table reproduces the direct construction bit for bit") {
    for (const auto& d : {unrelated_pair(), shrinking_sequence(5)}) {
      const int n = d.observations();
      std::vector<std::vector<Rational>> values(n, std::vector<Rational>(n));
      for (int t = 0; t < n; ++t) {
        for (int s = 0; s < n; ++s) values[t][s] = d.cost(t, s);
      }
      const auto from_table = fm_numbers(ExpenditureTable(std::move(values)));
      const auto direct = afriat_numbers(d);
      CHECK(from_table.u == direct.u);
      CHECK(from_table.lambda == direct.lambda);
      CHECK(from_table.levels == direct.levels);
    }
  }
  SUBCASE("all ties collapse to zero") {
    const auto n = fm_numbers(ExpenditureTable({{make_rational(1), make_rational(1)},
                                                {make_rational(1), make_rational(1)}}));
    CHECK(n.u == std::vector<Rational>{0, 0});
    CHECK(n.lambda == std::vector<Rational>{1, 1});
  }
  SUBCASE("one-directional table orders the levels") {
    const ExpenditureTable table({{make_rational(3), make_rational(2)},
                                  {make_rational(3), make_rational(2)}});
    const auto n = fm_numbers(table);
    CHECK(n.levels == std::vector<int>{0, 1});
    CHECK(n.u == std::vector<Rational>{0, -1});
    CHECK(n.lambda == std::vector<Rational>{1, 1});
    CHECK(n.u[0] <= n.u[1] + n.lambda[1] * (table.at(1, 0) - table.at(1, 1)));
    CHECK(n.u[1] <= n.u[0] + n.lambda[0] * (table.at(0, 1) - table.at(0, 0)));
  }
  SUBCASE("cyclic tables are rejected") {
    CHECK_THROWS_AS(fm_numbers(ExpenditureTable({{make_rational(2), make_rational(1)},
                                                 {make_rational(1), make_rational(2)}})),
                    AxiomViolation);
  }
}

TEST_CASE("expenditure-table utility") {
  SUBCASE("single observation returns its level") {
    const ExpenditureTable table({{make_rational(4)}});
    const auto n = fm_numbers(table);
    const std::vector<Rational> evals{make_rational(4)};
    CHECK(fm_utility(n, table, evals) == n.u[0]);
  }
  SUBCASE("querying an observed column stays below its level") {
    const ExpenditureTable table({{make_rational(3), make_rational(2)},
                                  {make_rational(3), make_rational(2)}});
    const auto n = fm_numbers(table);
    for (int s = 0; s < 2; ++s) {
      std::vector<Rational> evals{table.at(0, s), table.at(1, s)};
      CHECK(fm_utility(n, table, evals) <= n.u[s]);
    }
  }
  SUBCASE("linear specialization matches the direct evaluation") {
    std::mt19937_64 rng(12);
    const auto d = shrinking_sequence(4);
    const int count = d.observations();
    std::vector<std::vector<Rational>> values(count, std::vector<Rational>(count));
    for (int t = 0; t < count; ++t) {
      for (int s = 0; s < count; ++s) values[t][s] = d.cost(t, s);
    }
    const ExpenditureTable table(std::move(values));
    const auto n = fm_numbers(table);
    const auto direct = afriat_numbers(d);
    for (int round = 0; round < 50; ++round) {
      Bundle y;
      for (int l = 0; l < d.goods(); ++l)
        y.quantities.push_back(make_rational(static_cast<long>(rng() % 6), 1 + static_cast<long>(rng() % 3)));
      std::vector<Rational> evals;
      for (int t = 0; t < count; ++t) evals.push_back(dot(d.prices(t).prices, y.quantities));
      CHECK(fm_utility(n, table, evals) == evaluate_utility(direct, d, y));
    }
  }
  SUBCASE("length mismatch is rejected") {
    const ExpenditureTable table({{make_rational(4)}});
    const auto n = fm_numbers(table);
    CHECK_THROWS_AS(fm_utility(n, table, std::vector<Rational>{}), std::invalid_argument);
  }
}

TEST_CASE("quasilinear parameters") {
  SUBCASE("single observation") {
    const auto d = make_data({{"2", "1"}}, {{"1", "3"}});  // expenditure 5
    const auto p = quasilinear_params(afriat_numbers(d), d);
    CHECK(p.m == 6);
    CHECK(p.q == std::vector<Rational>{1});
  }
  SUBCASE("unrelated pair") {
    const auto d = unrelated_pair();
    const auto p = quasilinear_params(afriat_numbers(d), d);
    CHECK(p.m == 2);
    CHECK(p.q == std::vector<Rational>{1, 1});
  }
  SUBCASE("divisible-good prices never exceed one") {
    std::mt19937_64 rng(77);
    int built = 0;
    for (int round = 0; round < 30 && built < 10; ++round) {
      const auto d = random_dataset(rng, 3, 2);
      try {
        const auto p = quasilinear_params(afriat_numbers(d), d);
        ++built;
        for (const Rational& q : p.q) CHECK(q <= 1);
      } catch (const AxiomViolation&) {
      }
    }
    CHECK(built > 0);
  }
  SUBCASE("numbers that fail the system are rejected") {
    const auto d = unrelated_pair();
    auto n = afriat_numbers(d);
    n.u[0] = 100;
    CHECK_THROWS_AS(quasilinear_params(n, d), std::invalid_argument);
  }
}

TEST_CASE("smoothness precondition") {
  SUBCASE("repeated bundle under different prices fails with the pair") {
    const auto r = check_differentiable_precondition(repeated_bundle_pair());
    CHECK(r.kind == DiffPrecondition::Kind::repeated_bundle);
    CHECK(r.offending_pair == std::pair<int, int>{0, 1});
  }
  SUBCASE("single observation passes") {
    CHECK(check_differentiable_precondition(single_obs()).passed());
  }
  SUBCASE("unrelated pair passes") {
    CHECK(check_differentiable_precondition(unrelated_pair()).passed());
  }
  SUBCASE("cyclic data reports the cycle") {
    const auto r = check_differentiable_precondition(cross_priced_pair());
    CHECK(r.kind == DiffPrecondition::Kind::acyclicity_violation);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->cycle.size() == 2);
  }
}
