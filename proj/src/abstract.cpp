#include "revpref/abstract.hpp"

#include <algorithm>
#include <set>

namespace revpref {

std::optional<PreorderFailure> validate_preorder(const Preorder& p) {
  const int n = p.size();
  for (int a = 0; a < n; ++a) {
    if (!p.holds(a, a)) return PreorderFailure{PreorderFailure::Kind::not_reflexive, a};
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!p.holds(a, b)) continue;
      for (int c = 0; c < n; ++c) {
        if (p.holds(b, c) && !p.holds(a, c))
          return PreorderFailure{PreorderFailure::Kind::not_transitive, a, b, c};
      }
    }
  }
  return std::nullopt;
}

Preorder identity_preorder(int n) {
  Preorder p{BoolMatrix(n)};
  for (int i = 0; i < n; ++i) p.relation.set(i, i);
  return p;
}

namespace {

void require_common_dimension(std::span<const Bundle> bundles, size_t dim) {
  for (const Bundle& b : bundles) {
    if (b.quantities.size() != dim)
      throw std::invalid_argument("ground elements must share one coordinate dimension");
  }
}

}  // namespace

Preorder componentwise_geq_preorder(std::span<const Bundle> bundles) {
  const int n = static_cast<int>(bundles.size());
  if (n == 0) throw std::invalid_argument("empty ground set");
  require_common_dimension(bundles, bundles[0].quantities.size());
  Preorder p{BoolMatrix(n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      bool geq = true;
      for (size_t l = 0; l < bundles[a].quantities.size() && geq; ++l) {
        geq = bundles[a].quantities[l] >= bundles[b].quantities[l];
      }
      if (geq) p.relation.set(a, b);
    }
  }
  return p;
}

Preorder fosd_preorder(std::span<const Bundle> bundles, std::span<const Rational> probs) {
  const int n = static_cast<int>(bundles.size());
  if (n == 0) throw std::invalid_argument("empty ground set");
  const size_t states = probs.size();
  if (states == 0) throw std::invalid_argument("empty probability vector");
  Rational total = 0;
  for (const Rational& pi : probs) {
    if (pi < 0) throw std::invalid_argument("negative state probability");
    total += pi;
  }
  if (total != 1) throw std::invalid_argument("state probabilities must sum to 1");
  require_common_dimension(bundles, states);

  // P(x pays more than alpha); the survival function only changes at payout
  // values, so comparing at every coordinate value of the pair is exhaustive.
  const auto survival = [&](const Bundle& x, const Rational& alpha) {
    Rational mass = 0;
    for (size_t l = 0; l < states; ++l) {
      if (x.quantities[l] > alpha) mass += probs[l];
    }
    return mass;
  };

  Preorder p{BoolMatrix(n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      std::set<Rational> thresholds(bundles[a].quantities.begin(), bundles[a].quantities.end());
      thresholds.insert(bundles[b].quantities.begin(), bundles[b].quantities.end());
      bool dominates = true;
      for (const Rational& alpha : thresholds) {
        if (survival(bundles[a], alpha) < survival(bundles[b], alpha)) {
          dominates = false;
          break;
        }
      }
      if (dominates) p.relation.set(a, b);
    }
  }
  return p;
}

Preorder impatience_preorder(std::span<const Bundle> bundles) {
  const int n = static_cast<int>(bundles.size());
  if (n == 0) throw std::invalid_argument("empty ground set");
  require_common_dimension(bundles, 2);
  Preorder p{BoolMatrix(n)};
  for (int a = 0; a < n; ++a) {
    const Rational& a0 = bundles[a].quantities[0];
    const Rational& a1 = bundles[a].quantities[1];
    for (int b = 0; b < n; ++b) {
      const Rational& b0 = bundles[b].quantities[0];
      const Rational& b1 = bundles[b].quantities[1];
      const bool geq = a0 >= b0 && a1 >= b1;
      const bool swap = a0 >= a1 && a0 == b1 && a1 == b0;  // (M,m) over (m,M)
      if (geq || swap) p.relation.set(a, b);
    }
  }
  // Chains may only pass through ground elements.
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!p.relation.get(i, k)) continue;
      for (int j = 0; j < n; ++j) {
        if (p.relation.get(k, j)) p.relation.set(i, j);
      }
    }
  }
  return p;
}

ChoiceDataset::ChoiceDataset(std::vector<std::string> labels,
                             std::vector<std::optional<Bundle>> coords,
                             std::vector<ChoiceObservation> observations)
    : labels_(std::move(labels)), coords_(std::move(coords)), obs_(std::move(observations)) {
  const int n = static_cast<int>(labels_.size());
  if (n == 0) throw std::invalid_argument("empty ground set");
  if (coords_.size() != labels_.size())
    throw std::invalid_argument("coordinate payload count does not match ground set");
  if (obs_.empty()) throw std::invalid_argument("dataset needs at least one observation");
  for (size_t t = 0; t < obs_.size(); ++t) {
    const auto& obs = obs_[t];
    if (obs.budget.empty()) throw std::invalid_argument("empty budget at observation " + std::to_string(t + 1));
    if (obs.chosen.empty()) throw std::invalid_argument("empty choice at observation " + std::to_string(t + 1));
    for (int i : obs.budget) {
      if (i < 0 || i >= n) throw std::invalid_argument("budget index out of range");
    }
    for (int i : obs.chosen) {
      if (i < 0 || i >= n) throw std::invalid_argument("chosen index out of range");
      if (std::find(obs.budget.begin(), obs.budget.end(), i) == obs.budget.end())
        throw std::invalid_argument("chosen element outside its budget at observation " +
                                    std::to_string(t + 1));
    }
  }
}

bool ChoiceDataset::all_chosen_singleton() const {
  return std::all_of(obs_.begin(), obs_.end(),
                     [](const ChoiceObservation& o) { return o.chosen.size() == 1; });
}

std::vector<Bundle> ChoiceDataset::coordinate_payloads(int dim) const {
  std::vector<Bundle> out;
  out.reserve(labels_.size());
  for (size_t i = 0; i < labels_.size(); ++i) {
    if (!coords_[i])
      throw std::invalid_argument("ground element '" + labels_[i] + "' has no coordinates");
    if (dim >= 0 && coords_[i]->quantities.size() != static_cast<size_t>(dim))
      throw std::invalid_argument("ground element '" + labels_[i] + "' has wrong dimension");
    out.push_back(*coords_[i]);
  }
  if (dim < 0) {
    for (const Bundle& b : out) {
      if (b.quantities.size() != out.front().quantities.size())
        throw std::invalid_argument("ground elements must share one coordinate dimension");
    }
  }
  return out;
}

WeakStrictRelation build_order_relations(const ChoiceDataset& data, const Preorder& p) {
  if (!data.all_chosen_singleton())
    throw std::invalid_argument("dominance relations need single-valued choices");
  if (p.size() != data.ground_size())
    throw std::invalid_argument("preorder size does not match ground set");
  const int t_count = data.observations();
  WeakStrictRelation rel{BoolMatrix(t_count), BoolMatrix(t_count)};
  for (int t = 0; t < t_count; ++t) {
    for (int s = 0; s < t_count; ++s) {
      const int target = data.observation(s).chosen.front();
      for (int z : data.observation(t).budget) {
        if (p.holds(z, target)) {
          rel.weak.set(t, s);
          if (p.strictly(z, target)) {
            rel.strict.set(t, s);
            break;
          }
        }
      }
    }
  }
  return rel;
}

std::optional<ViolationWitness> check_order_garp(const ChoiceDataset& data, const Preorder& p) {
  return check_garp_like(build_order_relations(data, p));
}

std::vector<long> order_rationalize(const ChoiceDataset& data, const Preorder& p) {
  if (auto witness = check_order_garp(data, p))
    throw AxiomViolation("dominance acyclicity", *witness);
  const int n = data.ground_size();

  // Ground-level weak graph: the preorder itself plus "chosen over something
  // dominating y"; strict edges likewise.
  WeakStrictRelation ground{BoolMatrix(n), BoolMatrix(n)};
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.holds(a, b)) ground.weak.set(a, b);
      if (p.strictly(a, b)) ground.strict.set(a, b);
    }
  }
  for (int t = 0; t < data.observations(); ++t) {
    const int chosen = data.observation(t).chosen.front();
    for (int y = 0; y < n; ++y) {
      for (int z : data.observation(t).budget) {
        if (p.holds(z, y)) {
          ground.weak.set(chosen, y);
          if (p.strictly(z, y)) {
            ground.strict.set(chosen, y);
            break;
          }
        }
      }
    }
  }

  const ClosureResult closure = transitive_closure(ground);
  const auto mutually = [&](int a, int b) {
    return a == b || (closure.reachability.get(a, b) && closure.reachability.get(b, a));
  };

  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> members;
  for (int a = 0; a < n; ++a) {
    if (comp[a] != -1) continue;
    const int id = static_cast<int>(members.size());
    members.push_back({});
    for (int b = 0; b < n; ++b) {
      if (comp[b] == -1 && mutually(a, b)) {
        comp[b] = id;
        members[id].push_back(b);
      }
    }
  }

  const int k = static_cast<int>(members.size());
  std::vector<std::vector<int>> weight(k, std::vector<int>(k, -1));  // -1 = no edge
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (!ground.weak.get(a, b)) continue;
      if (comp[a] == comp[b]) {
        if (ground.strict.get(a, b))
          throw InternalCheckFailure("strict edge inside a mutually reachable class");
        continue;
      }
      int& w = weight[comp[a]][comp[b]];
      w = std::max(w, ground.strict.get(a, b) ? 1 : 0);
    }
  }

  // Longest strict-edge-counting path downward from each class.
  std::vector<long> value(k, -1);
  const auto dp = [&](auto&& self, int c) -> long {
    if (value[c] >= 0) return value[c];
    long best = 0;
    for (int d = 0; d < k; ++d) {
      if (weight[c][d] >= 0) best = std::max(best, weight[c][d] + self(self, d));
    }
    return value[c] = best;
  };
  for (int c = 0; c < k; ++c) dp(dp, c);

  std::vector<long> utility(n);
  for (int a = 0; a < n; ++a) utility[a] = value[comp[a]];

  // Exhaustive postcondition sweep.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (p.holds(a, b) && utility[a] < utility[b])
        throw InternalCheckFailure("utility not weakly increasing for the preorder");
      if (p.strictly(a, b) && utility[a] <= utility[b])
        throw InternalCheckFailure("utility not strictly increasing for the preorder");
    }
  }
  for (int t = 0; t < data.observations(); ++t) {
    const int chosen = data.observation(t).chosen.front();
    for (int z : data.observation(t).budget) {
      if (utility[chosen] < utility[z])
        throw InternalCheckFailure("chosen element not weakly best in its budget");
    }
  }
  return utility;
}

std::optional<ViolationWitness> check_congruence(const ChoiceDataset& data) {
  const int n = data.ground_size();
  WeakStrictRelation rel{BoolMatrix(n), BoolMatrix(n)};
  for (int t = 0; t < data.observations(); ++t) {
    const auto& obs = data.observation(t);
    for (int x : obs.chosen) {
      for (int y : obs.budget) {
        rel.weak.set(x, y);
        if (std::find(obs.chosen.begin(), obs.chosen.end(), y) == obs.chosen.end())
          rel.strict.set(x, y);
      }
    }
  }
  return check_garp_like(rel);
}

}  // namespace revpref
