#include "prisyn/game.hpp"

#include <algorithm>

namespace prisyn {

using bdd::Predicate;

Predicate bad_states(const EncodedSystem& es, SafetyMode mode) {
  switch (mode) {
    case SafetyMode::Deadlock: return es.p_dead();
    case SafetyMode::Risk: return es.p_risk();
    case SafetyMode::Both: return es.p_dead() | es.p_risk();
  }
  return es.p_dead();
}

Attractor attractor(const EncodedSystem& es, const Predicate& bad) {
  auto& m = es.manager();
  const Predicate stage0 = m.var(es.vars().stg);
  const Predicate stage1 = ~stage0;
  Attractor out;
  Predicate a = bad;
  out.frontiers.push_back(a);
  while (true) {
    Predicate a0 = a | (stage0 & es.pre_exists_stage0(a));
    Predicate point_to = es.pre_exists_stage1(a0);
    Predicate escape = es.escape_exists_stage1(~a0);
    Predicate a1 = a0 | (stage1 & point_to & ~escape);
    if (a1 == a) break;
    a = a1;
    out.frontiers.push_back(a);
  }
  out.states = a;
  return out;
}

Attractor attractor_naive(const EncodedSystem& es, const Predicate& bad) {
  auto& m = es.manager();
  const Predicate stage0 = m.var(es.vars().stg);
  const Predicate stage1 = ~stage0;
  Attractor out;
  Predicate a = bad;
  out.frontiers.push_back(a);
  while (true) {
    Predicate env = stage0 & es.pre_exists_stage0(a);
    Predicate sys = stage1 & es.pre_exists_stage1(a) & ~es.escape_exists_stage1(~a);
    Predicate next = a | env | sys;
    if (next == a) break;
    a = next;
    out.frontiers.push_back(a);
  }
  out.states = a;
  return out;
}

Reach reachable(const EncodedSystem& es) {
  Reach out;
  Predicate r = es.p_ini();
  out.rings.push_back(r);
  while (true) {
    Predicate fresh = es.post(r) & ~r;
    if (fresh.is_false()) break;
    r |= fresh;
    out.rings.push_back(r);
  }
  out.states = r;
  return out;
}

FaultSet fault_transitions(const EncodedSystem& es, const Attractor& attr, const Reach& reach) {
  if (!(es.p_ini() & attr.states).is_false()) throw Unsynthesizable();
  // every part of t1 already implies that its source has a stage-1 move
  Predicate sources = ~attr.states & reach.states;
  return {es.edges_into(attr.states) & sources};
}

std::vector<FaultCube> candidate_cubes(const EncodedSystem& es, const FaultSet& fs) {
  auto& m = es.manager();
  const auto& vm = es.vars();
  const auto& alphabet = es.system().alphabet();
  std::vector<bdd::Var> keep;
  for (InteractionId a = 0; a < alphabet.size(); ++a)
    if (vm.sigma[a] != kNoVar) {
      keep.push_back(vm.sigma[a]);
      keep.push_back(vm.sigma_p[a]);
    }
  std::vector<bdd::Var> drop;
  for (bdd::Var v = 0; v < vm.size(); ++v)
    if (std::find(keep.begin(), keep.end(), v) == keep.end()) drop.push_back(v);
  Predicate proj = m.exists(drop, fs.edges);

  std::vector<FaultCube> out;
  for (const auto& cube : m.enumerate_cubes(proj)) {
    FaultCube fc;
    for (const auto& [v, val] : cube) {
      if (!val) continue;
      for (InteractionId a = 0; a < alphabet.size(); ++a) {
        if (vm.sigma[a] == v) fc.enabled.insert(alphabet[a]);  // absent (don't care) reads as not raised
        if (vm.sigma_p[a] == v) fc.risk = alphabet[a];
      }
    }
    // no primed interaction bit set: the may-fire label was executed
    if (fc.risk.empty() && es.sharp()) {
      fc.risk = alphabet[*es.sharp()];
      fc.enabled.insert(fc.risk);
    }
    if (fc.risk.empty()) throw ModelError("internal: fault cube without executed interaction");
    out.push_back(std::move(fc));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Predicate pick_state(const EncodedSystem& es, const Predicate& p) {
  auto& m = es.manager();
  auto vars = es.vars().unprimed();
  return m.assignment(m.pick_cube(m.exists(es.primed_cube(), p), vars));
}

Configuration decode(const EncodedSystem& es, const Predicate& state) {
  auto& m = es.manager();
  const auto& vm = es.vars();
  auto cube = m.pick_cube(state, vm.unprimed());
  std::vector<bool> a(m.var_count(), false);
  for (const auto& [v, val] : cube) a[v] = val;
  Configuration c;
  for (std::size_t i = 0; i < es.system().size(); ++i) {
    std::uint32_t loc = 0;
    for (std::size_t b = 0; b < vm.loc[i].size(); ++b)
      if (a[vm.loc[i][b]]) loc |= 1u << b;
    std::uint64_t val = 0;
    for (std::size_t v = 0; v < vm.data[i].size(); ++v)
      if (a[vm.data[i][v]]) val |= std::uint64_t{1} << v;
    c.locations.push_back(loc);
    c.valuations.push_back(val);
  }
  return c;
}

}  // namespace

std::vector<InteractionId> extract_trace(const EncodedSystem& es, const Reach& reach, const Predicate& target) {
  auto& m = es.manager();
  std::size_t k = 0;
  while (k < reach.rings.size() && (reach.rings[k] & target).is_false()) ++k;
  if (k == reach.rings.size()) throw ModelError("target is unreachable");
  Predicate cur = pick_state(es, reach.rings[k] & target);
  const Predicate stage0 = m.var(es.vars().stg);
  std::vector<InteractionId> word;
  for (std::size_t j = k; j-- > 0;) {
    Predicate cur_p = es.prime(cur);
    if ((cur & stage0).is_false()) {
      cur = pick_state(es, reach.rings[j] & m.and_exists(es.t0(), cur_p, es.primed_cube()));
      continue;
    }
    bool found = false;
    for (InteractionId a = 0; a < es.system().alphabet().size() && !found; ++a) {
      Predicate pre = reach.rings[j] & m.and_exists(es.t1(a), cur_p, es.primed_cube());
      if (pre.is_false()) continue;
      word.push_back(a);
      cur = pick_state(es, pre);
      found = true;
    }
    if (!found) throw ModelError("internal: broken reach rings");
  }
  std::reverse(word.begin(), word.end());
  return word;
}

SymbolicVerdict symbolic_verdict(const EncodedSystem& es, SafetyMode mode) {
  SymbolicVerdict v;
  auto reach = reachable(es);
  v.reach_iterations = reach.rings.size() - 1;
  const Predicate risk = mode == SafetyMode::Deadlock ? es.manager().constant(false) : es.p_risk();
  const Predicate dead = mode == SafetyMode::Risk ? es.manager().constant(false) : es.p_dead();
  for (const auto& ring : reach.rings) {
    const bool r = !(ring & risk).is_false();
    if (!r && (ring & dead).is_false()) continue;
    v.safe = false;
    v.risk = r;
    v.word = extract_trace(es, reach, ring & (r ? risk : dead));
    break;
  }
  return v;
}

std::vector<Configuration> replay(const EncodedSystem& es, const std::vector<InteractionId>& word) {
  auto& m = es.manager();
  std::vector<Predicate> sets{es.p_ini()};
  for (auto a : word) {
    Predicate s1 = es.unprime(m.and_exists(es.t0(), sets.back(), es.unprimed_cube()));
    Predicate s0 = es.unprime(m.and_exists(es.t1(a), s1, es.unprimed_cube()));
    if (s0.is_false()) throw ModelError("word is not executable on the encoding");
    sets.push_back(s0);
  }
  std::vector<Configuration> out(word.size());
  Predicate cur = pick_state(es, sets.back());
  for (std::size_t j = word.size(); j-- > 0;) {
    out[j] = decode(es, cur);
    Predicate mid = m.and_exists(es.t1(word[j]), es.prime(cur), es.primed_cube());
    Predicate prev = sets[j] & m.and_exists(es.t0(), es.prime(mid), es.primed_cube());
    cur = pick_state(es, prev);
  }
  return out;
}

}  // namespace prisyn
