#include "revpref/efficiency.hpp"

#include <algorithm>
#include <set>

namespace revpref {

std::optional<ViolationWitness> check_egarp(const PurchaseDataset& data, const Rational& e) {
  return check_garp_like(build_rp_at_e(data, e, /*open_interval=*/false));
}

namespace {

// Relations shared by every e below the smallest positive expenditure ratio:
// only zero-cost bundles are affordable there, and a strict edge needs a
// positive own expenditure.
WeakStrictRelation bottom_relations(const PurchaseDataset& data) {
  const int n = data.observations();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (data.cost(t, s) == 0) {
        rel.weak.set(t, s);
        if (data.cost(t, t) > 0) rel.strict.set(t, s);
      }
    }
  }
  return rel;
}

}  // namespace

CceiResult compute_ccei(const PurchaseDataset& data) {
  const int n = data.observations();

  std::set<Rational> points;
  for (int t = 0; t < n; ++t) {
    if (data.cost(t, t) <= 0) continue;
    for (int s = 0; s < n; ++s) {
      Rational ratio = data.cost(t, s) / data.cost(t, t);
      if (ratio > 0 && ratio <= 1) points.insert(std::move(ratio));
    }
  }
  CceiResult result;
  result.breakpoints.assign(points.begin(), points.end());

  if (result.breakpoints.empty()) {
    // No observation has positive expenditure; nothing is ever strictly
    // cheaper and every parameter passes.
    result.value = 1;
    result.attained = true;
    return result;
  }

  // Below the first breakpoint the verdict always passes: zero-ratio edges
  // point into zero-expenditure observations, which can never host the strict
  // edge of a cycle.
  if (check_garp_like(bottom_relations(data)))
    throw InternalCheckFailure("verdict failed below every breakpoint");

  // Regions in ascending order: each breakpoint (closed relations) followed by
  // the open interval above it.  Relation sets grow along this order, so the
  // verdict may switch pass -> fail exactly once.
  const int m = static_cast<int>(result.breakpoints.size());
  bool failed = false;
  for (int i = 0; i < m; ++i) {
    const Rational& b = result.breakpoints[i];
    auto closed = check_garp_like(build_rp_at_e(data, b, /*open_interval=*/false));
    if (closed && !failed) {
      failed = true;
      result.value = b;
      result.attained = false;
      result.failing_witness_above = std::move(closed);
    } else if (!closed && failed) {
      throw InternalCheckFailure("efficiency verdicts are not monotone");
    }
    if (b == 1) break;  // nothing of (0,1] lies above
    auto open = check_garp_like(build_rp_at_e(data, b, /*open_interval=*/true));
    if (open && !failed) {
      failed = true;
      result.value = b;
      result.attained = true;
      result.failing_witness_above = std::move(open);
    } else if (!open && failed) {
      throw InternalCheckFailure("efficiency verdicts are not monotone");
    }
  }
  if (!failed) {
    result.value = 1;
    result.attained = true;
  }
  return result;
}

}  // namespace revpref
