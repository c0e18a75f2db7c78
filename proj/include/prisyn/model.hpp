#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prisyn/expr.hpp"

namespace prisyn {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ModelError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class CircularPriorityError : public ModelError {
 public:
  explicit CircularPriorityError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

using InteractionId = std::size_t;

struct Transition {
  std::size_t source = 0;
  Expr guard;
  std::string label;
  std::vector<Expr> update;  // one formula per declared variable
  std::size_t destination = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Component {
  std::string name;
  std::vector<std::string> locations;
  std::vector<std::string> variables;
  std::vector<Transition> transitions;
  std::size_t initial_location = 0;
  std::vector<bool> initial_valuation;

  std::set<std::string> alphabet() const;
  std::optional<std::size_t> location_index(const std::string& loc) const;
  std::optional<std::size_t> variable_index(const std::string& var) const;
  std::uint64_t initial_bits() const;

  friend bool operator==(const Component&, const Component&) = default;
};

// (low, high): low must not fire while high is jointly enabled.
using Priority = std::pair<std::string, std::string>;
using PrioritySet = std::set<Priority>;

struct LocalConstraint {
  std::size_t component = 0;
  std::size_t location = 0;
  std::vector<std::pair<std::size_t, bool>> values;  // (variable index, value)

  friend bool operator==(const LocalConstraint&, const LocalConstraint&) = default;
};

// Unconstrained components are wildcards.
struct PartialConfiguration {
  std::vector<LocalConstraint> constraints;

  friend bool operator==(const PartialConfiguration&, const PartialConfiguration&) = default;
};

class System {
 public:
  // Validates every structural invariant. An empty `alphabet` means "infer
  // from the transition labels in order of first appearance".
  System(std::vector<Component> components, std::vector<std::string> alphabet,
         PrioritySet priorities, std::vector<PartialConfiguration> risks = {});

  const std::vector<Component>& components() const { return components_; }
  const Component& component(std::size_t i) const { return components_.at(i); }
  std::size_t size() const { return components_.size(); }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const PrioritySet& priorities() const { return priorities_; }
  const std::vector<PartialConfiguration>& risks() const { return risks_; }

  std::optional<InteractionId> find_interaction(const std::string& label) const;
  InteractionId interaction(const std::string& label) const;  // throws on unknown
  std::optional<std::size_t> find_component(const std::string& name) const;

  // Component indices with `label` in their alphabet, ascending.
  const std::vector<std::size_t>& participants(InteractionId id) const;
  const std::vector<std::size_t>& participants(const std::string& label) const;

  System with_priorities(PrioritySet priorities) const;
  System with_risks(std::vector<PartialConfiguration> risks) const;

  friend bool operator==(const System& a, const System& b) {
    return a.components_ == b.components_ && a.alphabet_ == b.alphabet_ &&
           a.priorities_ == b.priorities_ && a.risks_ == b.risks_;
  }

 private:
  std::vector<Component> components_;
  std::vector<std::string> alphabet_;
  PrioritySet priorities_;
  std::vector<PartialConfiguration> risks_;
  std::map<std::string, InteractionId> label_index_;
  std::vector<std::vector<std::size_t>> participants_;
};

// Transitive closure of a priority relation; throws CircularPriorityError
// when some interaction ends up below itself.
PrioritySet closure_and_validate(const PrioritySet& p);

struct AlphabetSplit {
  std::set<std::string> first_only;   // Sigma_1
  std::set<std::string> second_only;  // Sigma_2
  std::set<std::string> shared;       // Sigma_12
};

// `first` must be a nonempty strict subset of the component indices.
AlphabetSplit split_alphabet(const System& s, const std::set<std::size_t>& first);

// Same partition without the strict-subset requirement; `first` may hold
// every component, in which case Sigma_2 and Sigma_12 are empty.
AlphabetSplit split_alphabet_relaxed(const System& s, const std::set<std::size_t>& first);

System parse_system(const std::string& text);
std::string print_system(const System& s);

}  // namespace prisyn
