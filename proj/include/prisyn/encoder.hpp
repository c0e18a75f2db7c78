#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prisyn/bdd.hpp"
#include "prisyn/explicit_engine.hpp"
#include "prisyn/model.hpp"

namespace prisyn {

enum class Ordering { Declaration, Force };

Ordering parse_ordering(const std::string& s);
std::string to_string(Ordering o);

// Sum over interactions of (max - min) position of their participants.
// order[k] is the component placed at position k.
std::size_t span_sum(const System& s, const std::vector<std::size_t>& order);

// Center-of-gravity reordering of the components. Never returns an order with
// a larger span than `initial`.
std::vector<std::size_t> force_order(const System& s, std::vector<std::size_t> initial, std::size_t max_iters = 10);

inline constexpr bdd::Var kNoVar = 0xffffffffu;

struct VarMap {
  bdd::Var stg = 0, stg_p = 1;
  // Per interaction. The may-fire label has no pair (kNoVar): its raised bit
  // would only ever be read on the right of a priority, where it is not allowed.
  std::vector<bdd::Var> sigma, sigma_p;
  std::vector<std::vector<bdd::Var>> loc, loc_p;    // per component, LSB first
  std::vector<std::vector<bdd::Var>> data, data_p;  // per component variable
  std::vector<std::string> names;                   // indexed by handle
  std::vector<std::size_t> component_order;

  std::size_t size() const { return names.size(); }
  std::vector<bdd::Var> unprimed() const;
  std::vector<bdd::Var> primed() const;
};

struct EncodeOptions {
  Ordering ordering = Ordering::Force;
  std::size_t force_iters = 10;
  // Interaction with may-fire semantics (the abstraction label), if any.
  std::optional<std::string> sharp_label;
};

VarMap allocate(const System& s, const EncodeOptions& options = {});

// Two-stage symbolic transition system. Stage 0 (stg = 1) raises the
// interaction variables of every jointly enabled interaction; stage 1 (stg = 0)
// executes one raised interaction that no raised higher interaction blocks.
class EncodedSystem {
 public:
  EncodedSystem(const System& s, const EncodeOptions& options = {});
  EncodedSystem(const EncodedSystem&) = delete;
  EncodedSystem& operator=(const EncodedSystem&) = delete;

  const System& system() const { return system_; }
  bdd::Manager& manager() const { return *manager_; }
  const VarMap& vars() const { return vars_; }
  const std::optional<InteractionId>& sharp() const { return sharp_; }

  const bdd::Predicate& t0() const { return t0_; }
  // Monolithic stage-1 relation, built on first use.
  const bdd::Predicate& t1() const;
  // Stage-1 relation restricted to executing interaction a (priorities applied).
  const bdd::Predicate& t1(InteractionId a) const { return t1_parts_.at(a); }
  const bdd::Predicate& p_ini() const { return p_ini_; }
  const bdd::Predicate& p_dead() const { return p_dead_; }
  const bdd::Predicate& p_risk() const { return p_risk_; }
  const bdd::Predicate& valid() const { return valid_; }

  bdd::Predicate prime(const bdd::Predicate& p) const;
  bdd::Predicate unprime(const bdd::Predicate& p) const;

  // Image and preimage over both stages, using the partitioned stage-1 parts.
  bdd::Predicate post(const bdd::Predicate& states) const;
  // Source states with some edge into `target` (given unprimed).
  bdd::Predicate pre_exists(const bdd::Predicate& target) const;
  bdd::Predicate pre_exists_stage1(const bdd::Predicate& target) const;
  // Same, without the may-fire label: no priority can force it, so it never
  // counts as a way out of the attractor.
  bdd::Predicate escape_exists_stage1(const bdd::Predicate& target) const;
  bdd::Predicate pre_exists_stage0(const bdd::Predicate& target) const;
  // Stage-1 edges (unprimed and primed variables) entering `target`.
  bdd::Predicate edges_into(const bdd::Predicate& target) const;

  // Location and data bits of one configuration; other variables free.
  bdd::Predicate configuration(const Configuration& c) const;
  bdd::Predicate interaction(InteractionId a, bool primed = false) const;
  const bdd::Predicate& unprimed_cube() const { return unprimed_cube_; }
  const bdd::Predicate& primed_cube() const { return primed_cube_; }
  // Location and data variables only.
  const bdd::Predicate& state_cube() const { return state_cube_; }
  const bdd::Predicate& sigma_cube() const { return sigma_cube_; }

  // All configurations described by `p` (location/data bits; other variables
  // are projected away). Intended for small systems.
  std::vector<Configuration> configurations(const bdd::Predicate& p) const;

  std::string stats() const;

 private:
  bdd::Predicate enc(std::size_t comp, std::size_t loc, bool primed) const;
  bdd::Predicate guard(std::size_t comp, const Expr& e) const;
  bdd::Predicate frame(std::size_t comp) const;
  bdd::Predicate step(std::size_t comp, const Transition& t) const;

  System system_;
  EncodeOptions options_;
  std::optional<InteractionId> sharp_;
  VarMap vars_;
  std::unique_ptr<bdd::Manager> manager_;
  bdd::Predicate t0_, p_ini_, p_dead_, p_risk_, valid_;
  mutable std::optional<bdd::Predicate> t1_;
  std::vector<bdd::Predicate> t1_parts_;
  bdd::Predicate unprimed_cube_, primed_cube_, state_cube_, sigma_cube_;
  std::vector<bdd::Var> unprimed_, primed_;
};

// Word simulation by stepwise images. Agrees with ExplicitEngine::member.
bool symbolic_member(const EncodedSystem& es, const std::vector<InteractionId>& word);

}  // namespace prisyn
