#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "prisyn/model.hpp"

namespace prisyn {

class BudgetExceeded : public ModelError {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : ModelError("explicit state budget of " + std::to_string(budget) + " configurations exceeded"), budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

inline constexpr std::size_t kDefaultStateBudget = 2'000'000;

// One (location, valuation) pair per component, in component order.
struct Configuration {
  std::vector<std::uint32_t> locations;
  std::vector<std::uint64_t> valuations;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept;
};

enum class SafetyMode { Deadlock, Risk, Both };

SafetyMode parse_mode(const std::string& s);
std::string to_string(SafetyMode m);

struct ReachGraph {
  struct Edge {
    InteractionId label;
    std::size_t target;
  };
  std::vector<Configuration> states;  // states[0] is the initial configuration
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;
  std::vector<std::vector<Edge>> edges;
  // (parent state, interaction) on a shortest path; the root points at itself.
  std::vector<std::pair<std::size_t, InteractionId>> parents;

  std::vector<InteractionId> trace_to(std::size_t state) const;
};

struct Step {
  InteractionId label;
  Configuration after;
};

struct Verdict {
  enum class Kind { Safe, Deadlock, Risk };
  Kind kind = Kind::Safe;
  std::vector<Step> trace;  // empty when safe, or when the initial state is bad
  bool safe() const { return kind == Kind::Safe; }
};

struct EngineOptions {
  std::size_t budget = kDefaultStateBudget;
  // When set, this label gets may-fire semantics: enabled if at least one
  // component offers it, fired by any nonempty subset of those components.
  std::optional<std::string> sharp_label;
};

// Explicit-state semantics of a system. Serves as the reference against which
// symbolic results are checked and as the L* membership oracle.
class ExplicitEngine {
 public:
  explicit ExplicitEngine(const System& s, EngineOptions options = {});

  const System& system() const { return system_; }
  Configuration initial() const;

  // Joint participation only; priorities ignored.
  std::vector<bool> jointly_enabled(const Configuration& c) const;
  std::vector<InteractionId> enabled(const Configuration& c) const;
  bool is_enabled(const Configuration& c, InteractionId a) const;

  // Throws ModelError when `a` is not enabled in `c`.
  std::vector<Configuration> successors(const Configuration& c, InteractionId a) const;

  ReachGraph reach() const;
  Verdict verdict(SafetyMode mode) const;
  bool is_risk(const Configuration& c) const;

  bool member(const std::vector<InteractionId>& word) const;
  bool member(const std::vector<std::string>& word) const;

  std::string describe(const Configuration& c) const;
  std::string format_trace(const Verdict& v) const;

 private:
  bool participates_enabled(std::size_t comp, const Configuration& c, InteractionId a) const;
  std::vector<Configuration> sharp_successors(const Configuration& c) const;

  System system_;
  EngineOptions options_;
  std::optional<InteractionId> sharp_;
  // transitions_[comp][label] -> transition indices of that component
  std::vector<std::vector<std::vector<std::size_t>>> by_label_;
  // higher_[a] -> interactions strictly above `a` in the priority closure
  std::vector<std::vector<InteractionId>> higher_;
};

// Configurations that cannot avoid deadlock/risk when the scheduler picks the
// best enabled interaction and successor; computed by backward induction on
// the explicit reachable graph. Used as an oracle for the symbolic attractor.
std::vector<bool> explicit_losing_states(const ExplicitEngine& engine, const ReachGraph& g, SafetyMode mode);

}  // namespace prisyn
