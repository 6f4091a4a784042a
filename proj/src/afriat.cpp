#include "revpref/afriat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace revpref {

namespace {

std::vector<std::vector<Rational>> cost_matrix(const PurchaseDataset& data) {
  const int n = data.observations();
  std::vector<std::vector<Rational>> costs(n, std::vector<Rational>(n));
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) costs[t][s] = data.cost(t, s);
  }
  return costs;
}

WeakStrictRelation relation_of_costs(const std::vector<std::vector<Rational>>& costs) {
  const int n = static_cast<int>(costs.size());
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (costs[t][t] >= costs[t][s]) rel.weak.set(t, s);
      if (costs[t][t] > costs[t][s]) rel.strict.set(t, s);
    }
  }
  return rel;
}

// The level-ordered recursion: observations are processed by ascending chain
// level; each level's u is the running minimum over pairs (lower j, same-level
// k) of u[j] + lambda[j] (cost(j,k) - cost(j,j)) - margin, floored at 0, and
// each lambda is the matching maximum floored at 1.  Ties between observations
// of equal level are processed in ascending original index.
AfriatNumbers recursive_numbers(const std::vector<std::vector<Rational>>& costs,
                                const Rational& margin) {
  const int n = static_cast<int>(costs.size());
  const ClosureResult closure = transitive_closure(relation_of_costs(costs));

  std::map<int, std::vector<int>> by_level;
  for (int t = 0; t < n; ++t) by_level[closure.levels[t]].push_back(t);

  AfriatNumbers numbers;
  numbers.u.resize(n);
  numbers.lambda.resize(n);
  numbers.levels = closure.levels;
  numbers.strict_margin = margin != 0;

  std::vector<int> lower;  // indices of all previously processed levels
  for (const auto& [level, members] : by_level) {
    Rational u_level = 0;
    for (int j : lower) {
      for (int k : members) {
        Rational candidate = numbers.u[j] + numbers.lambda[j] * (costs[j][k] - costs[j][j]) - margin;
        if (candidate < u_level) u_level = candidate;
      }
    }
    for (int i : members) numbers.u[i] = u_level;
    for (int i : members) {
      Rational lam = 1;
      for (int j : lower) {
        const Rational gap = costs[i][j] - costs[i][i];
        if (gap <= 0)
          throw InternalCheckFailure("non-positive affordability gap across levels");
        Rational candidate = (numbers.u[j] - numbers.u[i] + margin) / gap;
        if (candidate > lam) lam = candidate;
      }
      numbers.lambda[i] = lam;
    }
    lower.insert(lower.end(), members.begin(), members.end());
  }
  return numbers;
}

void verify_weak_system(const std::vector<std::vector<Rational>>& costs,
                        const AfriatNumbers& numbers) {
  const int n = static_cast<int>(costs.size());
  for (int t = 0; t < n; ++t) {
    if (numbers.lambda[t] < 1) throw InternalCheckFailure("lambda below 1");
    for (int s = 0; s < n; ++s) {
      if (numbers.u[s] > numbers.u[t] + numbers.lambda[t] * (costs[t][s] - costs[t][t]))
        throw InternalCheckFailure("rationalization inequality failed");
    }
  }
}

double g_perturbation(const Bundle& a, const Bundle& b, const Rational& t_param) {
  Rational sq = 0;
  for (size_t l = 0; l < a.quantities.size(); ++l) {
    Rational d = a.quantities[l] - b.quantities[l];
    sq += d * d;
  }
  const double tp = t_param.get_d();
  return std::sqrt(sq.get_d() + tp) - std::sqrt(tp);
}

constexpr double kAssertSlack = 0x1p-40;

}  // namespace

AfriatNumbers afriat_numbers(const PurchaseDataset& data) {
  if (auto witness = check_garp_like(build_rp(data)))
    throw AxiomViolation("GARP", *witness);
  const auto costs = cost_matrix(data);
  AfriatNumbers numbers = recursive_numbers(costs, 0);
  verify_weak_system(costs, numbers);
  return numbers;
}

AfriatNumbers sarp_numbers(const PurchaseDataset& data) {
  if (auto witness = check_garp_like(build_s(data)))
    throw AxiomViolation("SARP", *witness);
  const auto costs = cost_matrix(data);
  AfriatNumbers numbers = recursive_numbers(costs, 1);
  const int n = data.observations();
  for (int t = 0; t < n; ++t) {
    if (numbers.lambda[t] < 1) throw InternalCheckFailure("lambda below 1");
    for (int s = 0; s < n; ++s) {
      if (data.bundle(t) == data.bundle(s)) {
        if (numbers.u[t] != numbers.u[s])
          throw InternalCheckFailure("equal bundles received different utility levels");
      } else if (numbers.u[s] >= numbers.u[t] + numbers.lambda[t] * (costs[t][s] - costs[t][t])) {
        throw InternalCheckFailure("strict rationalization inequality failed");
      }
    }
  }
  return numbers;
}

AfriatNumbers fm_numbers(const ExpenditureTable& table) {
  if (auto witness = check_garp_like(build_rp_nonlinear(table)))
    throw AxiomViolation("GARP", *witness);
  AfriatNumbers numbers = recursive_numbers(table.values(), 0);
  verify_weak_system(table.values(), numbers);
  return numbers;
}

Rational evaluate_utility(const AfriatNumbers& numbers, const PurchaseDataset& data,
                          const Bundle& point) {
  const int n = data.observations();
  if (static_cast<int>(point.quantities.size()) != data.goods())
    throw std::invalid_argument("query point has wrong dimension");
  Rational best;
  for (int t = 0; t < n; ++t) {
    const Rational value = numbers.u[t] +
        numbers.lambda[t] * (dot(data.prices(t).prices, point.quantities) - data.cost(t, t));
    if (t == 0 || value < best) best = value;
  }
  return best;
}

Rational fm_utility(const AfriatNumbers& numbers, const ExpenditureTable& table,
                    std::span<const Rational> row_evals) {
  const int n = table.size();
  if (static_cast<int>(row_evals.size()) != n || static_cast<int>(numbers.u.size()) != n)
    throw std::invalid_argument("row evaluation count does not match the table");
  Rational best;
  for (int t = 0; t < n; ++t) {
    const Rational value = numbers.u[t] + numbers.lambda[t] * (row_evals[t] - table.at(t, t));
    if (t == 0 || value < best) best = value;
  }
  return best;
}

PiecewiseUtility make_piecewise(const AfriatNumbers& numbers, const PurchaseDataset& data) {
  PiecewiseUtility utility;
  const int n = data.observations();
  if (static_cast<int>(numbers.u.size()) != n)
    throw std::invalid_argument("numbers do not match the dataset");
  utility.pieces.reserve(n);
  for (int t = 0; t < n; ++t) {
    utility.pieces.push_back({numbers.u[t], numbers.lambda[t], data.prices(t), data.bundle(t)});
  }
  return utility;
}

Rational PiecewiseUtility::exact(const Bundle& point) const {
  if (pieces.empty()) throw std::invalid_argument("empty utility");
  Rational best;
  bool first = true;
  for (const Piece& piece : pieces) {
    if (piece.base.quantities.size() != point.quantities.size())
      throw std::invalid_argument("query point has wrong dimension");
    const Rational value = piece.u +
        piece.lambda * (dot(piece.prices.prices, point.quantities) -
                        dot(piece.prices.prices, piece.base.quantities));
    if (first || value < best) {
      best = value;
      first = false;
    }
  }
  return best;
}

double PiecewiseUtility::value(const Bundle& point) const {
  if (pieces.empty()) throw std::invalid_argument("empty utility");
  double best = std::numeric_limits<double>::infinity();
  for (const Piece& piece : pieces) {
    if (piece.base.quantities.size() != point.quantities.size())
      throw std::invalid_argument("query point has wrong dimension");
    double v = piece.u.get_d() +
        piece.lambda.get_d() * (dot(piece.prices.prices, point.quantities).get_d() -
                                dot(piece.prices.prices, piece.base.quantities).get_d());
    if (perturbation)
      v -= perturbation->epsilon.get_d() * g_perturbation(point, piece.base, perturbation->t_param);
    best = std::min(best, v);
  }
  return best;
}

PiecewiseUtility strict_concave_utility(const AfriatNumbers& numbers, const PurchaseDataset& data) {
  if (!numbers.strict_margin)
    throw std::invalid_argument("perturbed utility needs strict-margin numbers");
  const int n = data.observations();
  const Rational t_param(n);

  // First bound keeps every piece strictly increasing (the perturbation's
  // slope is below 1 in every coordinate); second keeps each piece's value at
  // every other observed bundle above that bundle's utility level.
  Rational slope_bound;
  bool first = true;
  for (int t = 0; t < n; ++t) {
    Rational min_price = data.prices(t).prices[0];
    for (const Rational& p : data.prices(t).prices) min_price = std::min(min_price, p);
    const Rational candidate = numbers.lambda[t] * min_price;
    if (first || candidate < slope_bound) {
      slope_bound = candidate;
      first = false;
    }
  }
  double bound = slope_bound.get_d();
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (data.bundle(s) == data.bundle(t)) continue;
      const Rational slack =
          numbers.u[s] + numbers.lambda[s] * (data.cost(s, t) - data.cost(s, s)) - numbers.u[t];
      if (slack <= 0) throw InternalCheckFailure("strict slack not positive");
      const Rational capped = std::min(Rational(1), slack);
      const double g = g_perturbation(data.bundle(t), data.bundle(s), t_param);
      bound = std::min(bound, capped.get_d() / g);
    }
  }

  PiecewiseUtility utility = make_piecewise(numbers, data);
  utility.perturbation = PiecewiseUtility::Perturbation{Rational(bound / 2), t_param};
  if (utility.perturbation->epsilon <= 0)
    throw InternalCheckFailure("perturbation size not positive");

  // Rationalization retained: every piece stays at or above u[t] at x^t, so
  // the observed bundle still attains its own level.
  for (int t = 0; t < n; ++t) {
    const double level = numbers.u[t].get_d();
    for (int s = 0; s < n; ++s) {
      const double piece_value = numbers.u[s].get_d() +
          numbers.lambda[s].get_d() * (data.cost(s, t).get_d() - data.cost(s, s).get_d()) -
          utility.perturbation->epsilon.get_d() *
              g_perturbation(data.bundle(t), data.bundle(s), t_param);
      if (piece_value < level - kAssertSlack)
        throw InternalCheckFailure("perturbed utility lost rationalization");
    }
  }

  // Strictly increasing on a sampled grid around the observed bundles.
  const Rational step = make_rational(1, 2);
  for (int t = 0; t < n; ++t) {
    for (int dir = 0; dir <= data.goods(); ++dir) {
      Bundle shifted = data.bundle(t);
      if (dir == data.goods()) {
        for (Rational& q : shifted.quantities) q += step;
      } else {
        shifted.quantities[dir] += step;
      }
      if (utility.value(shifted) <= utility.value(data.bundle(t)) + kAssertSlack)
        throw InternalCheckFailure("perturbed utility not strictly increasing");
    }
  }
  return utility;
}

QuasilinearParams quasilinear_params(const AfriatNumbers& numbers, const PurchaseDataset& data) {
  const int n = data.observations();
  if (static_cast<int>(numbers.u.size()) != n)
    throw std::invalid_argument("numbers do not match the dataset");
  const auto costs = cost_matrix(data);
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (numbers.u[s] > numbers.u[t] + numbers.lambda[t] * (costs[t][s] - costs[t][t]))
        throw std::invalid_argument("numbers do not satisfy the rationalization inequalities");
    }
  }

  QuasilinearParams params;
  Rational max_cost = costs[0][0];
  for (int t = 0; t < n; ++t) max_cost = std::max(max_cost, costs[t][t]);
  params.m = 1 + max_cost;
  params.q.reserve(n);
  for (int t = 0; t < n; ++t) params.q.push_back(1 / numbers.lambda[t]);

  // Optimality chain at every observed bundle pair: switching the report while
  // topping up with the divisible good never beats the observed choice.
  for (int t = 0; t < n; ++t) {
    const Rational value_t = evaluate_utility(numbers, data, data.bundle(t));
    if (value_t != numbers.u[t])
      throw InternalCheckFailure("observed bundle does not attain its own level");
    for (int s = 0; s < n; ++s) {
      if (costs[t][s] > params.m) continue;
      const Rational lhs = numbers.u[s] + (params.m - costs[t][s]) / params.q[t];
      const Rational rhs = numbers.u[t] + (params.m - costs[t][t]) / params.q[t];
      if (lhs > rhs) throw InternalCheckFailure("quasilinear optimality chain failed");
    }
  }
  return params;
}

DiffPrecondition check_differentiable_precondition(const PurchaseDataset& data) {
  DiffPrecondition result;
  if (auto witness = check_garp_like(build_s(data))) {
    result.kind = DiffPrecondition::Kind::acyclicity_violation;
    result.witness = std::move(witness);
    return result;
  }
  const int n = data.observations();
  for (int t = 0; t < n; ++t) {
    for (int s = t + 1; s < n; ++s) {
      if (!(data.prices(t) == data.prices(s)) && data.bundle(t) == data.bundle(s)) {
        result.kind = DiffPrecondition::Kind::repeated_bundle;
        result.offending_pair = {t, s};
        return result;
      }
    }
  }
  return result;
}

}  // namespace revpref
