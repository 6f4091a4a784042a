#pragma once

#include <optional>
#include <vector>

#include "revpref/dataset.hpp"
#include "revpref/engine.hpp"

namespace revpref {

// Square payoff matrix: payoff(t, s) is the value type t derives from the
// outcome designed for type s.
class MechanismDataset {
 public:
  explicit MechanismDataset(std::vector<std::vector<Rational>> payoff);

  int types() const { return static_cast<int>(payoff_.size()); }
  const Rational& payoff(int t, int s) const { return payoff_[t][s]; }

 private:
  std::vector<std::vector<Rational>> payoff_;
};

// Report-contingent affine reward schedule c^t(v) = u[t] + lambda[t] * v with
// lambda in (0, 1].
struct LinearContract {
  std::vector<Rational> u;
  std::vector<Rational> lambda;
};

// weak(t,s) iff payoff(t,s) >= payoff(s,s); strict iff >.
WeakStrictRelation mech_relations(const MechanismDataset& data);

std::optional<ViolationWitness> check_implementable(const MechanismDataset& data);

// Produces a contract satisfying
//   u[t] + lambda[t] payoff(t,t) >= u[s] + lambda[s] payoff(t,s)  for all t,s
// verified exhaustively in exact arithmetic.  Throws AxiomViolation when the
// dataset is cyclic.
LinearContract synthesize_linear_contract(const MechanismDataset& data);

}  // namespace revpref
