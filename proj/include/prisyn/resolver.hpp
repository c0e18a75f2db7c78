#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prisyn/game.hpp"
#include "prisyn/sat.hpp"

namespace prisyn {

enum class ClauseFamily { Candidate, Existing, Irreflexive, Transitive };

std::string to_string(ClauseFamily f);

// Admissible candidate pairs; an empty function admits everything.
using CandidateFilter = std::function<bool(const Priority&)>;

struct CubeGroup {
  std::vector<FaultCube> cubes;
  CandidateFilter filter;
};

struct Cnf {
  std::vector<Priority> vars;  // variable v is vars[v - 1]
  std::map<Priority, int> index;
  std::vector<Clause> clauses;
  std::vector<ClauseFamily> family;
  std::vector<std::optional<std::size_t>> origin;  // cube index of candidate clauses
  std::vector<bool> candidate_var;                 // indexed by variable, entry 0 unused
  std::vector<std::vector<Priority>> candidates;   // per cube, after filtering
  std::optional<std::string> unsat_reason;         // set when a cube has no admissible candidate

  std::size_t num_vars() const { return vars.size(); }
  int var(const Priority& p) const;  // 0 when absent
  std::size_t count(ClauseFamily f) const;
  // Does the assignment (a set of true pairs) satisfy every clause?
  bool satisfied_by(const PrioritySet& true_pairs) const;
};

struct CnfOptions {
  bool parallel_transitive = true;
};

// Cubes of all groups are numbered consecutively in group order.
Cnf build_cnf(const std::vector<CubeGroup>& groups, const PrioritySet& existing, const CnfOptions& options = {});
Cnf build_cnf(const std::vector<FaultCube>& cubes, const PrioritySet& existing, const CandidateFilter& filter = {},
              const CnfOptions& options = {});

struct SolveResult {
  bool sat = false;
  std::vector<bool> model;  // indexed by variable
  SatStats stats;
};

// Candidate variables are decided first, false first.
SolveResult solve(const Cnf& f);

// Positive candidate-family variables.
PrioritySet extract(const std::vector<bool>& model, const Cnf& f);

// Deletion-minimal subset of candidate clauses that is unsatisfiable together
// with the other families. Returns clause indices into f.clauses.
std::vector<std::size_t> candidate_core(const Cnf& f);

std::string to_dimacs(const Cnf& f);

struct SynthOptions {
  SafetyMode mode = SafetyMode::Both;
  std::size_t repush_depth = 0;
  EncodeOptions encode;
  CnfOptions cnf;
  CandidateFilter filter;
  // Replaces bad_states(mode) as the attractor seed when set.
  std::function<bdd::Predicate(const EncodedSystem&)> bad;
};

struct SynthStats {
  std::size_t variables = 0;
  std::size_t reach_iterations = 0;
  std::size_t attractor_iterations = 0;
  std::size_t attractor_nodes = 0;
  std::size_t cubes = 0;
  std::size_t sat_vars = 0;
  std::size_t sat_clauses = 0;
  std::size_t rounds = 0;
};

struct SynthResult {
  enum class Outcome { Success, Failure };
  Outcome outcome = Outcome::Failure;
  PrioritySet added;                // new priorities, existing ones excluded
  std::vector<Priority> repushed;   // annotated during repushing (also in `added`)
  std::string reason;               // on failure
  SynthStats stats;                 // of the last round
  std::vector<FaultCube> cubes;     // of the last round
  std::optional<Cnf> cnf;           // of the last round

  bool success() const { return outcome == Outcome::Success; }
};

SynthResult synthesize(const System& s, const SynthOptions& options = {});

}  // namespace prisyn
