#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revpref/dataset.hpp"
#include "revpref/engine.hpp"

namespace revpref {

// Reflexive, transitive dominance relation over a finite ground set.
struct Preorder {
  BoolMatrix relation;

  int size() const { return relation.size(); }
  bool holds(int a, int b) const { return relation.get(a, b); }
  bool strictly(int a, int b) const { return relation.get(a, b) && !relation.get(b, a); }
};

struct PreorderFailure {
  enum class Kind { not_square, not_reflexive, not_transitive };
  Kind kind;
  int a = -1, b = -1, c = -1;  // offending element / pair / triple
};

std::optional<PreorderFailure> validate_preorder(const Preorder& p);

Preorder identity_preorder(int n);

// Component-wise >= over the given coordinate payloads.
Preorder componentwise_geq_preorder(std::span<const Bundle> bundles);

// First order stochastic dominance under state probabilities probs: a >= b
// iff at every payout threshold, a pays more than the threshold with at least
// the probability b does.  Exact rational comparisons.
Preorder fosd_preorder(std::span<const Bundle> bundles, std::span<const Rational> probs);

// Smallest preorder on the ground set extending component-wise >= together
// with (M,m) >= (m,M) for M >= m; chains may pass only through ground
// elements.  Bundles must be two-dimensional.
Preorder impatience_preorder(std::span<const Bundle> bundles);

struct ChoiceObservation {
  std::vector<int> chosen;  // non-empty, subset of budget
  std::vector<int> budget;  // non-empty ground-index set
};

// Finite ground set of opaque alternatives with optional coordinate payloads,
// plus observations of (chosen set, budget set).  Dominance tests use
// singleton chosen sets; the congruence test accepts multi-valued ones.
class ChoiceDataset {
 public:
  ChoiceDataset(std::vector<std::string> labels, std::vector<std::optional<Bundle>> coords,
                std::vector<ChoiceObservation> observations);

  int ground_size() const { return static_cast<int>(labels_.size()); }
  int observations() const { return static_cast<int>(obs_.size()); }
  const std::string& label(int i) const { return labels_[i]; }
  const std::optional<Bundle>& coords(int i) const { return coords_[i]; }
  const ChoiceObservation& observation(int t) const { return obs_[t]; }

  bool all_chosen_singleton() const;
  // Coordinate payloads of every ground element, all of dimension dim;
  // throws if any are missing or mismatched.
  std::vector<Bundle> coordinate_payloads(int dim = -1) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::optional<Bundle>> coords_;
  std::vector<ChoiceObservation> obs_;
};

// Observation-level dominance relations: weak(t,s) iff some member of budget t
// dominates the element chosen at s; strict(t,s) iff some member strictly
// dominates it.  Self-pairs included; a strict self-loop is itself a
// violation.  Requires singleton chosen sets.
WeakStrictRelation build_order_relations(const ChoiceDataset& data, const Preorder& p);

std::optional<ViolationWitness> check_order_garp(const ChoiceDataset& data, const Preorder& p);

// Integer utility over ground indices that is strictly increasing for the
// preorder and makes every chosen element weakly best in its budget.  All
// three properties are verified exhaustively before returning.  Throws
// AxiomViolation when the dominance test fails.
std::vector<long> order_rationalize(const ChoiceDataset& data, const Preorder& p);

// Congruence test over ground elements: weak(x,y) iff x was chosen while y was
// available, strict additionally requires y unchosen there.  Witness indices
// refer to ground elements.
std::optional<ViolationWitness> check_congruence(const ChoiceDataset& data);

}  // namespace revpref
