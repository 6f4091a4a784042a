#pragma once

#include <cstdint>
#include <vector>

#include "revpref/rational.hpp"

namespace revpref {

// Quantities of the L goods bought in one observation; entries >= 0.
struct Bundle {
  std::vector<Rational> quantities;

  bool operator==(const Bundle& other) const = default;
};

// Per-good prices prevailing in one observation; entries > 0.
struct PriceVector {
  std::vector<Rational> prices;

  bool operator==(const PriceVector& other) const = default;
};

// Square boolean matrix used for relations and reachability.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(int n) : n_(n), stride_((n + 63) / 64), words_(static_cast<size_t>(n) * stride_, 0) {}

  int size() const { return n_; }

  bool get(int i, int j) const {
    return (words_[static_cast<size_t>(i) * stride_ + j / 64] >> (j % 64)) & 1u;
  }
  void set(int i, int j, bool v = true) {
    uint64_t& w = words_[static_cast<size_t>(i) * stride_ + j / 64];
    const uint64_t bit = uint64_t{1} << (j % 64);
    if (v) w |= bit; else w &= ~bit;
  }

  std::span<uint64_t> row(int i) { return {words_.data() + static_cast<size_t>(i) * stride_, stride_}; }
  std::span<const uint64_t> row(int i) const { return {words_.data() + static_cast<size_t>(i) * stride_, stride_}; }

  bool operator==(const BoolMatrix& other) const = default;

 private:
  int n_ = 0;
  size_t stride_ = 0;
  std::vector<uint64_t> words_;
};

// A weak/strict relation pair over observation indices; every builder
// guarantees strict(t,s) implies weak(t,s).
struct WeakStrictRelation {
  BoolMatrix weak;
  BoolMatrix strict;

  int size() const { return weak.size(); }
  bool strict_subset_of_weak() const;
};

// T observations of (bundle, prices).  The constructor enforces T >= 1,
// a common dimension L >= 1, strictly positive prices and non-negative
// quantities, throwing std::invalid_argument otherwise.
class PurchaseDataset {
 public:
  PurchaseDataset(std::vector<Bundle> bundles, std::vector<PriceVector> prices);

  int observations() const { return static_cast<int>(bundles_.size()); }
  int goods() const { return static_cast<int>(bundles_.front().quantities.size()); }

  const Bundle& bundle(int t) const { return bundles_[t]; }
  const PriceVector& prices(int t) const { return prices_[t]; }

  // p^t . x^s
  const Rational& cost(int t, int s) const { return costs_[static_cast<size_t>(t) * bundles_.size() + s]; }

 private:
  std::vector<Bundle> bundles_;
  std::vector<PriceVector> prices_;
  std::vector<Rational> costs_;  // cached T*T cost table
};

// T x T table of expenditure-function evaluations: at(t, s) is the cost of
// bundle s under the price system of observation t.
class ExpenditureTable {
 public:
  explicit ExpenditureTable(std::vector<std::vector<Rational>> values);

  int size() const { return static_cast<int>(values_.size()); }
  const Rational& at(int t, int s) const { return values_[t][s]; }
  const std::vector<std::vector<Rational>>& values() const { return values_; }

 private:
  std::vector<std::vector<Rational>> values_;
};

// Direct revealed preference: weak(t,s) iff bundle s was affordable at
// observation t, strict(t,s) iff it was strictly cheaper.
WeakStrictRelation build_rp(const PurchaseDataset& data);

// Distinct-bundle affordability: weak = strict = { (t,s) : s affordable at t
// and the bundles differ }.  Feeding it to the engine makes every cycle a
// violation.
WeakStrictRelation build_s(const PurchaseDataset& data);

// Efficiency-shrunk relations: affordability thresholds scaled by e in (0,1].
// With open_interval set the matrices describe the relations valid everywhere
// on the open interval immediately above e (both use <=); rows whose own
// expenditure is zero never gain strict edges there.
WeakStrictRelation build_rp_at_e(const PurchaseDataset& data, const Rational& e,
                                 bool open_interval = false);

// Revealed preference over prices: weak(s,t) iff buying bundle t is weakly
// cheaper at prices s than at its own prices t.
WeakStrictRelation build_price_prefs(const PurchaseDataset& data);

// Revealed preference from an expenditure table (nonlinear price systems):
// weak(t,s) iff at(t,t) >= at(t,s).
WeakStrictRelation build_rp_nonlinear(const ExpenditureTable& table);

}  // namespace revpref
