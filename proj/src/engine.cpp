#include "revpref/engine.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace revpref {

AxiomViolation::AxiomViolation(std::string axiom, ViolationWitness witness)
    : std::runtime_error(axiom + " violated"), axiom_(std::move(axiom)), witness_(std::move(witness)) {}

namespace {

void require_well_formed(const WeakStrictRelation& rel) {
  if (rel.weak.size() != rel.strict.size())
    throw std::invalid_argument("weak and strict matrices differ in size");
  if (!rel.strict_subset_of_weak())
    throw std::invalid_argument("strict relation not contained in weak relation");
}

// Shortest weak path from -> to (edges >= 1), or empty if unreachable.
std::vector<int> shortest_weak_path(const BoolMatrix& weak, int from, int to) {
  const int n = weak.size();
  std::vector<int> parent(n, -1);
  std::deque<int> queue;
  for (int j = 0; j < n; ++j) {
    if (weak.get(from, j) && parent[j] == -1) {
      parent[j] = from;
      if (j == to) break;
      queue.push_back(j);
    }
  }
  while (parent[to] == -1 && !queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      if (weak.get(v, j) && parent[j] == -1 && j != from) {
        parent[j] = v;
        if (j == to) break;
        queue.push_back(j);
      }
    }
  }
  if (parent[to] == -1) return {};
  std::vector<int> path{to};
  for (int v = to; v != from;) {
    v = parent[v];
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;  // from ... to
}

}  // namespace

ClosureResult transitive_closure(const WeakStrictRelation& rel) {
  const int n = rel.size();
  BoolMatrix reach = rel.weak;
  for (int k = 0; k < n; ++k) {
    const auto row_k = reach.row(k);
    for (int i = 0; i < n; ++i) {
      if (!reach.get(i, k)) continue;
      auto row_i = reach.row(i);
      for (size_t w = 0; w < row_i.size(); ++w) row_i[w] |= row_k[w];
    }
  }

  // Strict part of the closure is a transitive DAG; levels are longest chains.
  std::vector<int> remaining(n, 0);  // strict predecessors not yet processed
  std::vector<std::vector<int>> below(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && reach.get(i, j) && !reach.get(j, i)) {
        below[i].push_back(j);
        ++remaining[j];
      }
    }
  }
  std::vector<int> levels(n, 0);
  std::deque<int> ready;
  for (int i = 0; i < n; ++i) {
    if (remaining[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    for (int j : below[v]) {
      levels[j] = std::max(levels[j], levels[v] + 1);
      if (--remaining[j] == 0) ready.push_back(j);
    }
  }
  return ClosureResult{std::move(reach), std::move(levels)};
}

std::optional<ViolationWitness> check_garp_like(const WeakStrictRelation& rel) {
  require_well_formed(rel);
  const int n = rel.size();

  // Strict self-loops are one-element violations.
  for (int t = 0; t < n; ++t) {
    if (rel.strict.get(t, t)) return ViolationWitness{{t}, {t, t}};
  }

  const ClosureResult closure = transitive_closure(rel);
  std::optional<ViolationWitness> best;
  size_t best_len = std::numeric_limits<size_t>::max();
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t || !rel.strict.get(s, t)) continue;
      if (!closure.reachability.get(t, s)) continue;
      std::vector<int> path = shortest_weak_path(rel.weak, t, s);
      if (path.size() < best_len) {
        best_len = path.size();
        best = ViolationWitness{std::move(path), {s, t}};
        if (best_len == 2) return best;  // a 2-cycle is as short as it gets
      }
    }
  }
  return best;
}

std::optional<ViolationWitness> check_warp(const WeakStrictRelation& rel) {
  require_well_formed(rel);
  const int n = rel.size();
  for (int t = 0; t < n; ++t) {
    if (rel.strict.get(t, t)) return ViolationWitness{{t}, {t, t}};
  }
  for (int t = 0; t < n; ++t) {
    for (int s = 0; s < n; ++s) {
      if (s != t && rel.weak.get(t, s) && rel.strict.get(s, t))
        return ViolationWitness{{t, s}, {s, t}};
    }
  }
  return std::nullopt;
}

bool witness_is_valid(const WeakStrictRelation& rel, const ViolationWitness& witness) {
  const int n = rel.size();
  const auto& cycle = witness.cycle;
  if (cycle.empty()) return false;
  for (int v : cycle) {
    if (v < 0 || v >= n) return false;
  }
  for (size_t i = 0; i + 1 < cycle.size(); ++i) {
    if (!rel.weak.get(cycle[i], cycle[i + 1])) return false;
  }
  if (witness.strict_edge.first != cycle.back() || witness.strict_edge.second != cycle.front())
    return false;
  return rel.strict.get(witness.strict_edge.first, witness.strict_edge.second);
}

}  // namespace revpref
