#pragma once

#include <optional>
#include <span>
#include <vector>

#include "revpref/dataset.hpp"
#include "revpref/engine.hpp"

namespace revpref {

// Utility levels u and marginal utilities of money lambda produced by the
// level-ordered recursion.  lambda[t] >= 1 always.  With strict_margin set the
// numbers satisfy the strict inequalities used for single-valued demand.
struct AfriatNumbers {
  std::vector<Rational> u;
  std::vector<Rational> lambda;
  std::vector<int> levels;
  bool strict_margin = false;
};

// Runs the recursion and verifies u[s] <= u[t] + lambda[t] p^t.(x^s - x^t) for
// every pair before returning.  Throws AxiomViolation when the data fails the
// acyclicity test.
AfriatNumbers afriat_numbers(const PurchaseDataset& data);

// Strict-margin variant: verifies u[s] < u[t] + lambda[t] p^t.(x^s - x^t) for
// every pair with distinct bundles, and u[t] = u[s] for equal bundles.
AfriatNumbers sarp_numbers(const PurchaseDataset& data);

// Same recursion driven by an expenditure table instead of linear costs.  On a
// table of linear costs the output is bit-identical to afriat_numbers.
AfriatNumbers fm_numbers(const ExpenditureTable& table);

// min_t { u[t] + lambda[t] p^t.(x - x^t) }, exact.
Rational evaluate_utility(const AfriatNumbers& numbers, const PurchaseDataset& data,
                          const Bundle& point);

// min_t { u[t] + lambda[t] (row_evals[t] - at(t,t)) } where row_evals[t]
// supplies the t-th expenditure evaluation of the query point.
Rational fm_utility(const AfriatNumbers& numbers, const ExpenditureTable& table,
                    std::span<const Rational> row_evals);

// Pointwise minimum of affine pieces, optionally dented by a smooth strictly
// convex perturbation that makes the minimum strictly concave.
struct PiecewiseUtility {
  struct Piece {
    Rational u;
    Rational lambda;
    PriceVector prices;
    Bundle base;
  };
  struct Perturbation {
    Rational epsilon;  // > 0
    Rational t_param;  // the additive constant inside the square root
  };

  std::vector<Piece> pieces;
  std::optional<Perturbation> perturbation;

  // Affine minimum only, exact; perturbation ignored.
  Rational exact(const Bundle& point) const;

  // Full value including the perturbation term; the square roots force
  // floating point.
  double value(const Bundle& point) const;
};

PiecewiseUtility make_piecewise(const AfriatNumbers& numbers, const PurchaseDataset& data);

// Subtracts epsilon * g(x - x^t) from each piece, with
// g(z) = sqrt(|z|^2 + T) - sqrt(T) and epsilon small enough that the result
// still rationalizes the data and stays strictly increasing; both facts are
// re-verified before returning.  Requires strict-margin numbers.
PiecewiseUtility strict_concave_utility(const AfriatNumbers& numbers, const PurchaseDataset& data);

// Budget m and divisible-good prices q making the observed choices optimal in
// the quasilinear model; q[t] = 1 / lambda[t].
struct QuasilinearParams {
  Rational m;
  std::vector<Rational> q;
};

QuasilinearParams quasilinear_params(const AfriatNumbers& numbers, const PurchaseDataset& data);

// Precondition screen for smooth rationalization: single-valued-demand
// acyclicity plus "distinct prices imply distinct bundles".
struct DiffPrecondition {
  enum class Kind { pass, acyclicity_violation, repeated_bundle };

  Kind kind = Kind::pass;
  std::optional<ViolationWitness> witness;      // acyclicity_violation
  std::pair<int, int> offending_pair{-1, -1};   // repeated_bundle

  bool passed() const { return kind == Kind::pass; }
};

DiffPrecondition check_differentiable_precondition(const PurchaseDataset& data);

}  // namespace revpref
