#include "prisyn/explicit_engine.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace prisyn {

std::size_t ConfigurationHash::operator()(const Configuration& c) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (auto l : c.locations) mix(l);
  for (auto v : c.valuations) mix(v);
  return static_cast<std::size_t>(h);
}

SafetyMode parse_mode(const std::string& s) {
  if (s == "deadlock") return SafetyMode::Deadlock;
  if (s == "risk") return SafetyMode::Risk;
  if (s == "both") return SafetyMode::Both;
  throw ModelError("unknown mode " + s + " (expected deadlock, risk or both)");
}

std::string to_string(SafetyMode m) {
  switch (m) {
    case SafetyMode::Deadlock: return "deadlock";
    case SafetyMode::Risk: return "risk";
    case SafetyMode::Both: return "both";
  }
  return {};
}

std::vector<InteractionId> ReachGraph::trace_to(std::size_t state) const {
  std::vector<InteractionId> word;
  while (parents[state].first != state) {
    word.push_back(parents[state].second);
    state = parents[state].first;
  }
  return {word.rbegin(), word.rend()};
}

ExplicitEngine::ExplicitEngine(const System& s, EngineOptions options) : system_(s), options_(std::move(options)) {
  if (options_.sharp_label) sharp_ = system_.find_interaction(*options_.sharp_label);
  const auto n = system_.alphabet().size();
  by_label_.resize(system_.size());
  for (std::size_t i = 0; i < system_.size(); ++i) {
    by_label_[i].resize(n);
    const auto& comp = system_.component(i);
    for (std::size_t t = 0; t < comp.transitions.size(); ++t)
      by_label_[i][system_.interaction(comp.transitions[t].label)].push_back(t);
  }
  higher_.resize(n);
  for (const auto& [low, high] : closure_and_validate(system_.priorities())) {
    auto h = system_.interaction(high);
    if (sharp_ && h == *sharp_) continue;  // the may-fire label never blocks others
    higher_[system_.interaction(low)].push_back(h);
  }
}

Configuration ExplicitEngine::initial() const {
  Configuration c;
  for (const auto& comp : system_.components()) {
    c.locations.push_back(static_cast<std::uint32_t>(comp.initial_location));
    c.valuations.push_back(comp.initial_bits());
  }
  return c;
}

bool ExplicitEngine::participates_enabled(std::size_t comp, const Configuration& c, InteractionId a) const {
  const auto& ts = system_.component(comp).transitions;
  for (auto t : by_label_[comp][a])
    if (ts[t].source == c.locations[comp] && ts[t].guard.eval(c.valuations[comp])) return true;
  return false;
}

std::vector<bool> ExplicitEngine::jointly_enabled(const Configuration& c) const {
  const auto n = system_.alphabet().size();
  std::vector<bool> out(n, false);
  for (InteractionId a = 0; a < n; ++a) {
    const auto& parts = system_.participants(a);
    if (sharp_ && a == *sharp_) {
      for (auto i : parts)
        if (participates_enabled(i, c, a)) out[a] = true;
    } else {
      bool ok = true;
      for (auto i : parts)
        if (!participates_enabled(i, c, a)) {
          ok = false;
          break;
        }
      out[a] = ok;
    }
  }
  return out;
}

std::vector<InteractionId> ExplicitEngine::enabled(const Configuration& c) const {
  auto joint = jointly_enabled(c);
  std::vector<InteractionId> out;
  for (InteractionId a = 0; a < joint.size(); ++a) {
    if (!joint[a]) continue;
    bool blocked = false;
    for (auto h : higher_[a])
      if (joint[h]) {
        blocked = true;
        break;
      }
    if (!blocked) out.push_back(a);
  }
  return out;
}

bool ExplicitEngine::is_enabled(const Configuration& c, InteractionId a) const {
  for (auto e : enabled(c))
    if (e == a) return true;
  return false;
}

std::vector<Configuration> ExplicitEngine::sharp_successors(const Configuration& c) const {
  const InteractionId a = *sharp_;
  const auto& parts = system_.participants(a);
  // options[k]: -1 = stutter, otherwise an enabled transition index
  std::vector<std::vector<long>> options;
  for (auto i : parts) {
    std::vector<long> opts{-1};
    const auto& ts = system_.component(i).transitions;
    for (auto t : by_label_[i][a])
      if (ts[t].source == c.locations[i] && ts[t].guard.eval(c.valuations[i])) opts.push_back(static_cast<long>(t));
    options.push_back(std::move(opts));
  }
  std::vector<Configuration> out;
  std::unordered_set<Configuration, ConfigurationHash> seen;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (true) {
    bool any_fires = false;
    Configuration next = c;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      long t = options[k][pick[k]];
      if (t < 0) continue;
      any_fires = true;
      const auto i = parts[k];
      const auto& tr = system_.component(i).transitions[static_cast<std::size_t>(t)];
      std::uint64_t vals = 0;
      for (std::size_t v = 0; v < tr.update.size(); ++v)
        if (tr.update[v].eval(c.valuations[i])) vals |= std::uint64_t{1} << v;
      next.locations[i] = static_cast<std::uint32_t>(tr.destination);
      next.valuations[i] = vals;
    }
    if (any_fires && seen.insert(next).second) out.push_back(std::move(next));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == options[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

std::vector<Configuration> ExplicitEngine::successors(const Configuration& c, InteractionId a) const {
  if (!is_enabled(c, a)) throw ModelError("interaction " + system_.alphabet().at(a) + " is not enabled");
  if (sharp_ && a == *sharp_) return sharp_successors(c);
  const auto& parts = system_.participants(a);
  std::vector<std::vector<std::size_t>> choices;
  for (auto i : parts) {
    std::vector<std::size_t> ok;
    const auto& ts = system_.component(i).transitions;
    for (auto t : by_label_[i][a])
      if (ts[t].source == c.locations[i] && ts[t].guard.eval(c.valuations[i])) ok.push_back(t);
    choices.push_back(std::move(ok));
  }
  std::vector<Configuration> out;
  std::unordered_set<Configuration, ConfigurationHash> seen;
  std::vector<std::size_t> pick(parts.size(), 0);
  while (true) {
    Configuration next = c;
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const auto i = parts[k];
      const auto& tr = system_.component(i).transitions[choices[k][pick[k]]];
      std::uint64_t vals = 0;
      for (std::size_t v = 0; v < tr.update.size(); ++v)
        if (tr.update[v].eval(c.valuations[i])) vals |= std::uint64_t{1} << v;
      next.locations[i] = static_cast<std::uint32_t>(tr.destination);
      next.valuations[i] = vals;
    }
    if (seen.insert(next).second) out.push_back(std::move(next));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

ReachGraph ExplicitEngine::reach() const {
  ReachGraph g;
  auto add = [&](Configuration c, std::size_t parent, InteractionId via) {
    auto [it, fresh] = g.index.emplace(c, g.states.size());
    if (fresh) {
      if (g.states.size() >= options_.budget) throw BudgetExceeded(options_.budget);
      g.states.push_back(std::move(c));
      g.edges.emplace_back();
      g.parents.emplace_back(parent == SIZE_MAX ? it->second : parent, via);
    }
    return it->second;
  };
  add(initial(), SIZE_MAX, 0);
  for (std::size_t cur = 0; cur < g.states.size(); ++cur) {
    const Configuration c = g.states[cur];
    for (auto a : enabled(c))
      for (auto& next : successors(c, a)) {
        auto target = add(std::move(next), cur, a);
        g.edges[cur].push_back({a, target});
      }
  }
  return g;
}

bool ExplicitEngine::is_risk(const Configuration& c) const {
  for (const auto& r : system_.risks()) {
    bool match = true;
    for (const auto& lc : r.constraints) {
      if (c.locations[lc.component] != lc.location) {
        match = false;
        break;
      }
      for (const auto& [v, val] : lc.values)
        if (((c.valuations[lc.component] >> v) & 1u) != static_cast<std::uint64_t>(val)) match = false;
      if (!match) break;
    }
    if (match) return true;
  }
  return false;
}

Verdict ExplicitEngine::verdict(SafetyMode mode) const {
  const bool check_dead = mode != SafetyMode::Risk;
  const bool check_risk = mode != SafetyMode::Deadlock;
  std::vector<Configuration> states;
  std::vector<std::pair<std::size_t, InteractionId>> parents;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> index;

  auto finish = [&](std::size_t s, Verdict::Kind kind) {
    Verdict v;
    v.kind = kind;
    while (parents[s].first != s) {
      v.trace.push_back({parents[s].second, states[s]});
      s = parents[s].first;
    }
    std::reverse(v.trace.begin(), v.trace.end());
    return v;
  };

  states.push_back(initial());
  parents.emplace_back(0, 0);
  index.emplace(states[0], 0);
  for (std::size_t cur = 0; cur < states.size(); ++cur) {
    const Configuration c = states[cur];
    if (check_risk && is_risk(c)) return finish(cur, Verdict::Kind::Risk);
    auto en = enabled(c);
    if (check_dead && en.empty()) return finish(cur, Verdict::Kind::Deadlock);
    for (auto a : en)
      for (auto& next : successors(c, a)) {
        if (index.count(next)) continue;
        if (states.size() >= options_.budget) throw BudgetExceeded(options_.budget);
        index.emplace(next, states.size());
        states.push_back(std::move(next));
        parents.emplace_back(cur, a);
      }
  }
  return {};
}

bool ExplicitEngine::member(const std::vector<InteractionId>& word) const {
  std::unordered_set<Configuration, ConfigurationHash> cur{initial()};
  for (auto a : word) {
    std::unordered_set<Configuration, ConfigurationHash> next;
    for (const auto& c : cur)
      if (is_enabled(c, a))
        for (auto& s : successors(c, a)) next.insert(std::move(s));
    if (next.empty()) return false;
    if (next.size() > options_.budget) throw BudgetExceeded(options_.budget);
    cur = std::move(next);
  }
  return true;
}

bool ExplicitEngine::member(const std::vector<std::string>& word) const {
  std::vector<InteractionId> ids;
  for (const auto& w : word) {
    auto id = system_.find_interaction(w);
    if (!id) return false;
    ids.push_back(*id);
  }
  return member(ids);
}

std::string ExplicitEngine::describe(const Configuration& c) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < system_.size(); ++i) {
    const auto& comp = system_.component(i);
    out << (i ? " " : "") << comp.name << '@' << comp.locations[c.locations[i]];
    if (!comp.variables.empty()) {
      out << '[';
      for (std::size_t v = 0; v < comp.variables.size(); ++v)
        out << (v ? " " : "") << comp.variables[v] << '=' << ((c.valuations[i] >> v) & 1u);
      out << ']';
    }
  }
  return out.str();
}

std::string ExplicitEngine::format_trace(const Verdict& v) const {
  std::ostringstream out;
  for (const auto& step : v.trace) out << system_.alphabet()[step.label] << "  ->  " << describe(step.after) << '\n';
  return out.str();
}

std::vector<bool> explicit_losing_states(const ExplicitEngine& engine, const ReachGraph& g, SafetyMode mode) {
  const bool check_dead = mode != SafetyMode::Risk;
  const bool check_risk = mode != SafetyMode::Deadlock;
  std::vector<bool> losing(g.states.size(), false);
  for (std::size_t s = 0; s < g.states.size(); ++s)
    losing[s] = (check_risk && engine.is_risk(g.states[s])) || (check_dead && g.edges[s].empty());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t s = 0; s < g.states.size(); ++s) {
      if (losing[s] || g.edges[s].empty()) continue;
      bool all = true;
      for (const auto& e : g.edges[s])
        if (!losing[e.target]) {
          all = false;
          break;
        }
      if (all) {
        losing[s] = true;
        changed = true;
      }
    }
  }
  return losing;
}

}  // namespace prisyn
