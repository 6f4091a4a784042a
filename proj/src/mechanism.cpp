#include "revpref/mechanism.hpp"

#include <algorithm>

#include "revpref/afriat.hpp"

namespace revpref {

MechanismDataset::MechanismDataset(std::vector<std::vector<Rational>> payoff)
    : payoff_(std::move(payoff)) {
  if (payoff_.empty()) throw std::invalid_argument("payoff matrix needs at least one type");
  for (const auto& row : payoff_) {
    if (row.size() != payoff_.size()) throw std::invalid_argument("payoff matrix must be square");
  }
}

WeakStrictRelation mech_relations(const MechanismDataset& data) {
  const int n = data.types();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (data.payoff(t, s) >= data.payoff(s, s)) rel.weak.set(t, s);
      if (data.payoff(t, s) > data.payoff(s, s)) rel.strict.set(t, s);
    }
  }
  return rel;
}

std::optional<ViolationWitness> check_implementable(const MechanismDataset& data) {
  return check_garp_like(mech_relations(data));
}

LinearContract synthesize_linear_contract(const MechanismDataset& data) {
  if (auto witness = check_implementable(data))
    throw AxiomViolation("mechanism acyclicity", *witness);
  const int n = data.types();

  // Substituting w[t] = u[t] + lambda[t] payoff(t,t) turns the contract
  // inequalities into the rationalization system of the expenditure table
  // G[s][t] = -payoff(t,s); its relations are the transpose of the mechanism
  // relations, so acyclicity carries over.  The system is homogeneous in
  // (w, lambda) jointly, which lets us scale the solution into lambda <= 1.
  std::vector<std::vector<Rational>> negated(n, std::vector<Rational>(n));
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) negated[s][t] = -data.payoff(t, s);
  }
  AfriatNumbers numbers;
  try {
    numbers = fm_numbers(ExpenditureTable(std::move(negated)));
  } catch (const AxiomViolation&) {
    throw InternalCheckFailure("transposed system cyclic despite acyclic mechanism");
  }

  Rational scale = numbers.lambda[0];
  for (const Rational& l : numbers.lambda) scale = std::max(scale, l);

  LinearContract contract;
  contract.lambda.reserve(n);
  contract.u.reserve(n);
  for (int t = 0; t < n; ++t) {
    contract.lambda.push_back(numbers.lambda[t] / scale);
    const Rational w = -numbers.u[t] / scale;
    contract.u.push_back(w - contract.lambda[t] * data.payoff(t, t));
  }
  const Rational shift = -contract.u[0];
  for (Rational& u : contract.u) u += shift;

  for (int t = 0; t < n; ++t) {
    if (contract.lambda[t] <= 0 || contract.lambda[t] > 1)
      throw InternalCheckFailure("contract slope outside (0,1]");
    const Rational truthful = contract.u[t] + contract.lambda[t] * data.payoff(t, t);
    for (int s = 0; s < n; ++s) {
      if (truthful < contract.u[s] + contract.lambda[s] * data.payoff(t, s))
        throw InternalCheckFailure("contract fails an incentive inequality");
    }
  }
  return contract;
}

}  // namespace revpref
