#pragma once

#include <set>
#include <string>
#include <vector>

#include "prisyn/explicit_engine.hpp"
#include "prisyn/resolver.hpp"

namespace prisyn {

// Internal name of the may-fire label. The parser reserves the "__" prefix,
// so it cannot clash with a user interaction.
inline const std::string kSharp = "__sharp";

// "#" for the may-fire label, the name itself otherwise.
std::string display_label(const std::string& label);
std::string display(const Priority& p);

struct AbstractSystem {
  System system;                       // rewritten; risks cleared
  std::set<std::string> kept;          // labels left untouched
  std::set<std::string> abstracted;    // labels mapped to the may-fire label
  std::vector<std::size_t> origin;     // abstract component -> concrete index
  std::vector<std::string> eliminated; // concrete components dropped entirely
  PrioritySet dropped;                 // concrete priorities with no sound image
};

// Keeps the labels of the chosen components.
AbstractSystem abstract(const System& s, const std::set<std::size_t>& keep);
// Keeps exactly `kept_labels`. Components listed in `protect` are never
// eliminated.
AbstractSystem abstract_alphabet(const System& s, const std::set<std::string>& kept_labels,
                                 const std::set<std::size_t>& protect = {});

EngineOptions sharp_engine_options(std::size_t budget = kDefaultStateBudget);
EncodeOptions sharp_encode_options(Ordering ordering = Ordering::Force);

// Concrete configuration restricted to the components that survive.
Configuration project(const AbstractSystem& a, const Configuration& concrete);

// No kept label can fire.
bool sharp_deadlocked(const ExplicitEngine& abstract_engine, const AbstractSystem& a, const Configuration& c);
// stg = 0 and every kept interaction bit is low.
bdd::Predicate p_sharp_dead(const EncodedSystem& es, const AbstractSystem& a);

SynthResult sharp_deadlock_free_synthesize(const AbstractSystem& a, std::size_t repush_depth = 0,
                                           Ordering ordering = Ordering::Force);

// Expands every "# < x" into "phi < x" for each abstracted phi, then checks the
// union with `existing` for cycles (throws CircularPriorityError).
PrioritySet concretize_priorities(const PrioritySet& p, const std::set<std::string>& abstracted,
                                  const PrioritySet& existing = {});

}  // namespace prisyn
