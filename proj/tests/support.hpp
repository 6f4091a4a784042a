#pragma once

#include <random>
#include <string>
#include <vector>

#include "revpref/dataset.hpp"
#include "revpref/rational.hpp"

namespace revpref::testing {

inline Bundle bundle(std::vector<std::string> qs) {
  Bundle b;
  for (const auto& q : qs) b.quantities.push_back(parse_rational(q));
  return b;
}

inline PriceVector price(std::vector<std::string> ps) {
  PriceVector p;
  for (const auto& q : ps) p.prices.push_back(parse_rational(q));
  return p;
}

inline PurchaseDataset make_data(std::vector<std::vector<std::string>> prices,
                                 std::vector<std::vector<std::string>> bundles) {
  std::vector<PriceVector> ps;
  std::vector<Bundle> xs;
  for (auto& p : prices) ps.push_back(price(p));
  for (auto& x : bundles) xs.push_back(bundle(x));
  return PurchaseDataset(std::move(xs), std::move(ps));
}

// Two observations, each buying only the good that is dearer at its own
// prices; both strict revealed preferences hold at once.
inline PurchaseDataset cross_priced_pair() {
  return make_data({{"3", "2"}, {"2", "3"}}, {{"1", "0"}, {"0", "1"}});
}

// Two observations without any revealed comparison between them.
inline PurchaseDataset unrelated_pair() {
  return make_data({{"1", "2"}, {"2", "1"}}, {{"1", "0"}, {"0", "1"}});
}

// The same bundle bought twice under different prices.
inline PurchaseDataset repeated_bundle_pair() {
  return make_data({{"2", "1"}, {"1", "2"}}, {{"1", "1"}, {"1", "1"}});
}

// Prefix of the shrinking-bundle sequence: x^1 = (1,0) at prices (1,1) and
// x^t = (3/t, 1 - 2/t) at prices (1,2) for t >= 2.
inline PurchaseDataset shrinking_sequence(int t_count) {
  std::vector<Bundle> xs;
  std::vector<PriceVector> ps;
  xs.push_back(bundle({"1", "0"}));
  ps.push_back(price({"1", "1"}));
  for (int t = 2; t <= t_count; ++t) {
    Bundle x;
    x.quantities.push_back(make_rational(3, t));
    x.quantities.push_back(make_rational(t - 2, t));
    xs.push_back(std::move(x));
    ps.push_back(price({"1", "2"}));
  }
  return PurchaseDataset(std::move(xs), std::move(ps));
}

// Independent uniform prices and quantities; mixed pass/fail across axioms.
inline PurchaseDataset random_dataset(std::mt19937_64& rng, int observations, int goods) {
  const auto pick = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  std::vector<Bundle> xs;
  std::vector<PriceVector> ps;
  for (int t = 0; t < observations; ++t) {
    Bundle x;
    PriceVector p;
    for (int l = 0; l < goods; ++l) {
      p.prices.push_back(make_rational(pick(1, 8), pick(1, 3)));
      x.quantities.push_back(make_rational(pick(0, 8), pick(1, 3)));
    }
    xs.push_back(std::move(x));
    ps.push_back(std::move(p));
  }
  return PurchaseDataset(std::move(xs), std::move(ps));
}

}  // namespace revpref::testing
