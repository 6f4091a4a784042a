#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "revpref/dataset.hpp"

namespace revpref {

// A cycle t_1 ... t_K with weak edges along consecutive members and a strict
// edge (t_K, t_1) closing it.  K = 1 encodes a strict self-loop.
struct ViolationWitness {
  std::vector<int> cycle;
  std::pair<int, int> strict_edge;
};

struct ClosureResult {
  BoolMatrix reachability;   // weak paths of length >= 1
  std::vector<int> levels;   // longest chain in the strict part ending at t
};

// Warshall closure of the weak matrix plus chain levels over its strict part
// (reach(t,s) and not reach(s,t)).  Level 0 means no strict predecessor.
ClosureResult transitive_closure(const WeakStrictRelation& rel);

// Pass iff there is no pair with reachability(t,s) (or t = s) and strict(s,t).
// On failure returns a shortest witness cycle.  Throws std::invalid_argument
// if strict is not contained in weak.
std::optional<ViolationWitness> check_garp_like(const WeakStrictRelation& rel);

// Two-observation restriction: pass iff no pair with weak(t,s) and strict(s,t).
std::optional<ViolationWitness> check_warp(const WeakStrictRelation& rel);

// Replays a witness against the matrices; used to validate engine output.
bool witness_is_valid(const WeakStrictRelation& rel, const ViolationWitness& witness);

// Raised by construction operations whose precondition axiom fails; carries
// the offending cycle.
class AxiomViolation : public std::runtime_error {
 public:
  AxiomViolation(std::string axiom, ViolationWitness witness);

  const std::string& axiom() const { return axiom_; }
  const ViolationWitness& witness() const { return witness_; }

 private:
  std::string axiom_;
  ViolationWitness witness_;
};

// Raised when an exhaustive post-construction verification fails.  Every such
// failure indicates a defect, not bad input.
class InternalCheckFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace revpref
