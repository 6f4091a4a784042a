#include "revpref/dataset.hpp"

#include <stdexcept>
#include <string>

namespace revpref {

bool WeakStrictRelation::strict_subset_of_weak() const {
  const int n = weak.size();
  if (strict.size() != n) return false;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (strict.get(i, j) && !weak.get(i, j)) return false;
    }
  }
  return true;
}

PurchaseDataset::PurchaseDataset(std::vector<Bundle> bundles, std::vector<PriceVector> prices)
    : bundles_(std::move(bundles)), prices_(std::move(prices)) {
  if (bundles_.empty()) throw std::invalid_argument("dataset needs at least one observation");
  if (bundles_.size() != prices_.size())
    throw std::invalid_argument("bundle and price counts differ");
  const size_t goods = bundles_.front().quantities.size();
  if (goods == 0) throw std::invalid_argument("dataset needs at least one good");
  for (size_t t = 0; t < bundles_.size(); ++t) {
    if (bundles_[t].quantities.size() != goods || prices_[t].prices.size() != goods)
      throw std::invalid_argument("dimension mismatch at observation " + std::to_string(t + 1));
    for (const Rational& q : bundles_[t].quantities) {
      if (q < 0) throw std::invalid_argument("negative quantity at observation " + std::to_string(t + 1));
    }
    for (const Rational& p : prices_[t].prices) {
      if (p <= 0) throw std::invalid_argument("non-positive price at observation " + std::to_string(t + 1));
    }
  }
  const size_t n = bundles_.size();
  costs_.resize(n * n);
  for (size_t t = 0; t < n; ++t) {
    for (size_t s = 0; s < n; ++s) {
      costs_[t * n + s] = dot(prices_[t].prices, bundles_[s].quantities);
    }
  }
}

ExpenditureTable::ExpenditureTable(std::vector<std::vector<Rational>> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("expenditure table needs at least one row");
  for (const auto& row : values_) {
    if (row.size() != values_.size()) throw std::invalid_argument("expenditure table must be square");
  }
}

WeakStrictRelation build_rp(const PurchaseDataset& data) {
  const int n = data.observations();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    const Rational& own = data.cost(t, t);
    for (int s = 0; s < n; ++s) {
      const Rational& other = data.cost(t, s);
      if (own >= other) rel.weak.set(t, s);
      if (own > other) rel.strict.set(t, s);
    }
  }
  return rel;
}

WeakStrictRelation build_s(const PurchaseDataset& data) {
  const int n = data.observations();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    const Rational& own = data.cost(t, t);
    for (int s = 0; s < n; ++s) {
      if (own >= data.cost(t, s) && !(data.bundle(t) == data.bundle(s))) {
        rel.weak.set(t, s);
        rel.strict.set(t, s);
      }
    }
  }
  return rel;
}

WeakStrictRelation build_rp_at_e(const PurchaseDataset& data, const Rational& e,
                                 bool open_interval) {
  if (e <= 0 || e > 1) throw std::invalid_argument("efficiency parameter must lie in (0,1]");
  const int n = data.observations();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    const Rational threshold = e * data.cost(t, t);
    const bool own_positive = data.cost(t, t) > 0;
    for (int s = 0; s < n; ++s) {
      const Rational& other = data.cost(t, s);
      if (other <= threshold) {
        rel.weak.set(t, s);
        // On the open interval just above e every ratio <= e is strictly
        // below the parameter; rows with zero own expenditure have no ratios
        // and never gain strict edges.
        if (open_interval ? own_positive : other < threshold) rel.strict.set(t, s);
      }
    }
  }
  return rel;
}

WeakStrictRelation build_price_prefs(const PurchaseDataset& data) {
  const int n = data.observations();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      const Rational& at_s = data.cost(s, t);  // p^s . x^t
      const Rational& at_t = data.cost(t, t);
      if (at_s <= at_t) rel.weak.set(s, t);
      if (at_s < at_t) rel.strict.set(s, t);
    }
  }
  return rel;
}

WeakStrictRelation build_rp_nonlinear(const ExpenditureTable& table) {
  const int n = table.size();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    const Rational& own = table.at(t, t);
    for (int s = 0; s < n; ++s) {
      const Rational& other = table.at(t, s);
      if (own >= other) rel.weak.set(t, s);
      if (own > other) rel.strict.set(t, s);
    }
  }
  return rel;
}

}  // namespace revpref
