#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prisyn/dfa.hpp"
#include "prisyn/explicit_engine.hpp"
#include "prisyn/lstar.hpp"
#include "prisyn/resolver.hpp"

namespace prisyn {

// An existing priority whose higher element is shared by both sides.
class IllegalPriority : public ModelError {
 public:
  IllegalPriority(const Priority& p);
  const Priority& priority() const { return priority_; }

 private:
  Priority priority_;
};

struct AgProblem {
  System system;              // undecomposed
  std::set<std::size_t> first;
  Dfa risk;
  AlphabetSplit split;
  System s1_plus;             // C1 + d1, priorities restricted to Sigma x Sigma_1
  System s2_plus;             // C2 + d2, priorities restricted to Sigma x Sigma_2
};

// `first` must be nonempty; it may hold every component (C2 is then empty and
// S2+ is d2 alone). Throws IllegalPriority when the split makes an existing
// priority's higher element shared.
AgProblem make_ag_problem(const System& s, const std::set<std::size_t>& first, const Dfa& risk);

// C1 + d1 and C2 + d2 with the given priorities and no legality check. Used to
// exhibit what goes wrong when a shared interaction is a higher element.
std::pair<System, System> stuttered_sides(const System& s, const std::set<std::size_t>& first, const PrioritySet& p1,
                                          const PrioritySet& p2);

enum class EngineChoice { Auto, Explicit, Symbolic };

// Some word of L(s) that reaches a risk configuration, or nothing.
std::optional<Word> find_risk_word(const System& s, EngineChoice engine = EngineChoice::Auto,
                                   std::size_t budget = kDefaultStateBudget);
bool language_member(const System& s, const Word& w, EngineChoice engine = EngineChoice::Auto);

// Monitors A and R on S1+ (risk: both accept), the complement of A on S2+.
System condition_a_system(const AgProblem& p, const Dfa& a, const PrioritySet& p1 = {});
System condition_b_system(const AgProblem& p, const Dfa& a, const PrioritySet& p2 = {});

struct EquivalenceResult {
  enum class Kind { BothHold, CounterexampleA, CounterexampleB, Fail };
  Kind kind = Kind::BothHold;
  Word word;  // empty for BothHold
};

EquivalenceResult equivalence_check(const AgProblem& p, const Dfa& a, const PrioritySet& p1 = {},
                                    const PrioritySet& p2 = {}, EngineChoice engine = EngineChoice::Auto);

struct AgOptions {
  std::size_t max_conjectures = 50;
  EngineChoice engine = EngineChoice::Auto;
  Ordering ordering = Ordering::Force;
};

struct AgResult {
  enum class Outcome { ProvedSafe, Success, Fail };
  Outcome outcome = Outcome::Fail;
  PrioritySet p1, p2;                    // new priorities per side
  std::vector<std::size_t> conjecture_sizes;
  std::optional<Dfa> assumption;         // last conjecture
  std::string reason;                    // on Fail
  std::size_t membership_queries = 0;

  bool ok() const { return outcome != Outcome::Fail; }
};

AgResult ag_synthesize(const AgProblem& p, const AgOptions& options = {});

std::string to_string(AgResult::Outcome o);

}  // namespace prisyn
