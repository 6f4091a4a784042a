#pragma once

#include <optional>
#include <vector>

#include "revpref/afriat.hpp"
#include "revpref/dataset.hpp"
#include "revpref/engine.hpp"

namespace revpref {

// Exact critical cost-efficiency index.  value is the supremum of the
// efficiency parameters whose shrunk relations stay acyclic; attained tells
// whether the test still passes at value itself.  When anything above value
// fails, failing_witness_above holds the cycle from the first failing region.
struct CceiResult {
  Rational value;
  std::vector<Rational> breakpoints;
  std::optional<ViolationWitness> failing_witness_above;
  bool attained = true;
};

// Engine verdict on the e-shrunk relations (closed form).  Requires 0 < e <= 1.
std::optional<ViolationWitness> check_egarp(const PurchaseDataset& data, const Rational& e);

// Breakpoint enumeration: verdicts are evaluated at every expenditure ratio in
// (0,1] and on every open interval between consecutive ratios; the verdict
// sequence is checked to switch pass -> fail at most once.
CceiResult compute_ccei(const PurchaseDataset& data);

}  // namespace revpref
