#pragma once

#include <set>
#include <string>
#include <vector>

#include "prisyn/encoder.hpp"

namespace prisyn {

class Unsynthesizable : public ModelError {
 public:
  Unsynthesizable() : ModelError("unsynthesizable from initial state: the initial configuration lies in the risk attractor") {}
};

// Seed of the attractor for a safety mode: deadlocks, risk states, or both.
bdd::Predicate bad_states(const EncodedSystem& es, SafetyMode mode);

struct Attractor {
  bdd::Predicate states;
  std::vector<bdd::Predicate> frontiers;  // cumulative, frontiers.back() == states
  std::size_t iterations() const { return frontiers.size() - 1; }
};

// Stage-0 and stage-1 additions in alternation.
Attractor attractor(const EncodedSystem& es, const bdd::Predicate& bad);
// Both additions computed from the same iterate; kept as a reference.
Attractor attractor_naive(const EncodedSystem& es, const bdd::Predicate& bad);

struct Reach {
  bdd::Predicate states;
  std::vector<bdd::Predicate> rings;  // cumulative, rings[0] == p_ini
};

Reach reachable(const EncodedSystem& es);

struct FaultSet {
  bdd::Predicate edges;  // stage-1 edges over unprimed and primed variables
};

// Throws Unsynthesizable when the initial state is inside the attractor.
FaultSet fault_transitions(const EncodedSystem& es, const Attractor& attr, const Reach& reach);

struct FaultCube {
  std::set<std::string> enabled;  // raised interactions at the source
  std::string risk;               // executed interaction entering the attractor

  friend bool operator==(const FaultCube&, const FaultCube&) = default;
  friend auto operator<=>(const FaultCube& a, const FaultCube& b) {
    if (auto c = a.risk <=> b.risk; c != 0) return c;
    return a.enabled <=> b.enabled;
  }
};

// Deduplicated and sorted by (risk, enabled).
std::vector<FaultCube> candidate_cubes(const EncodedSystem& es, const FaultSet& fs);

// Interactions along a shortest path from the initial state to some target
// state. Throws ModelError when no target state is reachable.
std::vector<InteractionId> extract_trace(const EncodedSystem& es, const Reach& reach, const bdd::Predicate& target);

// One full configuration (stage-0 polarity) per step of `word`, replayed on
// the encoding; used to print symbolic traces.
std::vector<Configuration> replay(const EncodedSystem& es, const std::vector<InteractionId>& word);

struct SymbolicVerdict {
  bool safe = true;
  bool risk = false;                // kind of the bad state reached, when unsafe
  std::vector<InteractionId> word;  // shortest path to it
  std::size_t reach_iterations = 0;
};

// Prefers a risk state over a deadlock at the same distance, like the
// explicit engine.
SymbolicVerdict symbolic_verdict(const EncodedSystem& es, SafetyMode mode);

}  // namespace prisyn
