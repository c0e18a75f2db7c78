#include "prisyn/abstraction.hpp"

#include <algorithm>

namespace prisyn {

std::string display_label(const std::string& label) { return label == kSharp ? "#" : label; }

std::string display(const Priority& p) { return display_label(p.first) + " < " + display_label(p.second); }

AbstractSystem abstract(const System& s, const std::set<std::size_t>& keep) {
  if (keep.empty()) throw ModelError("abstraction needs at least one kept component");
  std::set<std::string> labels;
  for (auto i : keep) {
    if (i >= s.size()) throw ModelError("kept component index out of range");
    auto al = s.component(i).alphabet();
    labels.insert(al.begin(), al.end());
  }
  return abstract_alphabet(s, labels, keep);
}

AbstractSystem abstract_alphabet(const System& s, const std::set<std::string>& kept_labels,
                                 const std::set<std::size_t>& protect) {
  AbstractSystem a{s, {}, {}, {}, {}, {}};
  for (const auto& l : s.alphabet()) (kept_labels.count(l) ? a.kept : a.abstracted).insert(l);
  for (const auto& l : kept_labels)
    if (!s.find_interaction(l)) throw ModelError("unknown interaction " + l);

  std::vector<Component> comps;
  bool sharp_used = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    Component c = s.component(i);
    auto al = c.alphabet();
    bool all_abstract = std::all_of(al.begin(), al.end(), [&](const std::string& l) { return a.abstracted.count(l) > 0; });
    if (c.variables.empty() && all_abstract && !protect.count(i)) {
      a.eliminated.push_back(c.name);
      continue;
    }
    for (auto& t : c.transitions)
      if (a.abstracted.count(t.label)) {
        t.label = kSharp;
        sharp_used = true;
      }
    // identical sharp transitions may now coincide
    std::vector<Transition> unique;
    for (auto& t : c.transitions)
      if (std::find(unique.begin(), unique.end(), t) == unique.end()) unique.push_back(std::move(t));
    c.transitions = std::move(unique);
    comps.push_back(std::move(c));
    a.origin.push_back(i);
  }
  if (comps.empty()) throw ModelError("abstraction eliminated every component");

  std::vector<std::string> alphabet;
  for (const auto& l : s.alphabet())
    if (a.kept.count(l)) alphabet.push_back(l);
  if (sharp_used) alphabet.push_back(kSharp);

  // "# < h" only blocks soundly when every abstracted label is below h;
  // "l < #" never blocks, and "# < #" would be reflexive. All are dropped
  // otherwise, which only adds behaviour to the abstraction.
  const auto closure = closure_and_validate(s.priorities());
  PrioritySet rewritten;
  for (const auto& [low, high] : s.priorities()) {
    bool lk = a.kept.count(low) > 0, hk = a.kept.count(high) > 0;
    if (lk && hk) {
      rewritten.emplace(low, high);
      continue;
    }
    if (!lk && hk && sharp_used) {
      bool all_below = std::all_of(a.abstracted.begin(), a.abstracted.end(),
                                   [&](const std::string& phi) { return closure.count({phi, high}) > 0; });
      if (all_below) {
        rewritten.emplace(kSharp, high);
        continue;
      }
    }
    a.dropped.emplace(low, high);
  }
  a.system = System(std::move(comps), std::move(alphabet), std::move(rewritten), {});
  return a;
}

EngineOptions sharp_engine_options(std::size_t budget) {
  EngineOptions o;
  o.budget = budget;
  o.sharp_label = kSharp;
  return o;
}

EncodeOptions sharp_encode_options(Ordering ordering) {
  EncodeOptions o;
  o.ordering = ordering;
  o.sharp_label = kSharp;
  return o;
}

Configuration project(const AbstractSystem& a, const Configuration& concrete) {
  Configuration c;
  for (auto i : a.origin) {
    c.locations.push_back(concrete.locations.at(i));
    c.valuations.push_back(concrete.valuations.at(i));
  }
  return c;
}

bool sharp_deadlocked(const ExplicitEngine& engine, const AbstractSystem& a, const Configuration& c) {
  for (auto id : engine.enabled(c))
    if (a.kept.count(a.system.alphabet()[id])) return false;
  return true;
}

bdd::Predicate p_sharp_dead(const EncodedSystem& es, const AbstractSystem& a) {
  auto& m = es.manager();
  bdd::Predicate p = m.nvar(es.vars().stg);
  for (const auto& l : a.kept) p &= ~es.interaction(es.system().interaction(l));
  return p;
}

SynthResult sharp_deadlock_free_synthesize(const AbstractSystem& a, std::size_t repush_depth, Ordering ordering) {
  SynthOptions o;
  o.repush_depth = repush_depth;
  o.encode = sharp_encode_options(ordering);
  o.filter = [](const Priority& p) { return p.second != kSharp; };
  o.bad = [&a](const EncodedSystem& es) { return p_sharp_dead(es, a); };
  return synthesize(a.system, o);
}

PrioritySet concretize_priorities(const PrioritySet& p, const std::set<std::string>& abstracted,
                                  const PrioritySet& existing) {
  PrioritySet out;
  for (const auto& [low, high] : p) {
    if (high == kSharp) throw ModelError("the may-fire label cannot be the higher element of a priority");
    if (low == kSharp)
      for (const auto& phi : abstracted) out.emplace(phi, high);
    else
      out.emplace(low, high);
  }
  PrioritySet all = existing;
  all.insert(out.begin(), out.end());
  closure_and_validate(all);
  return out;
}

}  // namespace prisyn
