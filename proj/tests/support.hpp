#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "prisyn/dfa.hpp"
#include "prisyn/explicit_engine.hpp"
#include "prisyn/game.hpp"

namespace prisyn::testing {

// Components a b c d; interactions p = {a, c}, q = {a, d}, r = {b, d}, the
// component analogue of the three-clause FORCE example.
inline const char* kForceExample = R"(system {
  component a { locations s; init s; on p from s to s; on q from s to s; }
  component b { locations s; init s; on r from s to s; }
  component c { locations s; init s; on p from s to s; }
  component d { locations s; init s; on q from s to s; on r from s to s; }
})";

// Random propositional formula with its own evaluator, for truth-table
// checks of the diagram operations.
struct Formula {
  enum Kind { Var, Not, And, Or, Xor, Implies, Iff, Const } kind = Const;
  std::uint32_t var = 0;
  bool value = false;
  std::shared_ptr<Formula> l, r;

  bool eval(const std::vector<bool>& a) const;
  bdd::Predicate build(bdd::Manager& m) const;
};

std::shared_ptr<Formula> random_formula(std::mt19937& rng, std::uint32_t nvars, int depth);
std::vector<std::string> names(std::uint32_t n);  // v0 v1 ...
std::vector<bool> bits(std::uint64_t k, std::uint32_t n);

struct RandomShape {
  std::size_t max_components = 4;
  std::size_t max_locations = 4;
  std::size_t max_vars = 2;
  std::size_t max_labels = 5;
  bool priorities = true;
  bool risks = true;
};

// Random model document. Every interaction has at least one participant,
// priorities follow label order (so they are acyclic).
std::string random_system_text(std::mt19937& rng, const RandomShape& shape = {});
System random_system(std::mt19937& rng, const RandomShape& shape = {});

// Random complete DFA over a subset of `letters`.
Dfa random_dfa(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t max_states = 3);

// Shortest word in the symmetric difference, if any.
std::optional<Word> dfa_difference(const Dfa& a, const Dfa& b);

// Stage-0 configurations of the symbolic reach set, as a predicate over the
// location and data variables only.
bdd::Predicate symbolic_configurations(const EncodedSystem& es);
bdd::Predicate explicit_configurations(const EncodedSystem& es, const ReachGraph& g);

// Interactions the encoding can execute from configuration c.
std::vector<bool> symbolic_enabled(const EncodedSystem& es, const Configuration& c);

// Does every reachable state keep an edge with this label reachable, and does
// some such edge lie on a cycle?
bool always_eventually_fires(const ReachGraph& g, InteractionId label);
bool fires_on_cycle(const ReachGraph& g, InteractionId label);

// Contents of a file under models/.
std::string read_model_file(const std::string& name);

}  // namespace prisyn::testing
