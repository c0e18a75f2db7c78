#include "prisyn/encoder.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace prisyn {

using bdd::Predicate;
using bdd::Var;

namespace {

std::size_t bits_for(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

}  // namespace

std::vector<Var> VarMap::unprimed() const {
  std::vector<Var> out{stg};
  for (auto v : sigma)
    if (v != kNoVar) out.push_back(v);
  for (const auto& l : loc) out.insert(out.end(), l.begin(), l.end());
  for (const auto& d : data) out.insert(out.end(), d.begin(), d.end());
  return out;
}

std::vector<Var> VarMap::primed() const {
  std::vector<Var> out{stg_p};
  for (auto v : sigma_p)
    if (v != kNoVar) out.push_back(v);
  for (const auto& l : loc_p) out.insert(out.end(), l.begin(), l.end());
  for (const auto& d : data_p) out.insert(out.end(), d.begin(), d.end());
  return out;
}

VarMap allocate(const System& s, const EncodeOptions& options) {
  VarMap vm;
  const auto n = s.alphabet().size();
  vm.sigma.resize(n);
  vm.sigma_p.resize(n);
  vm.loc.resize(s.size());
  vm.loc_p.resize(s.size());
  vm.data.resize(s.size());
  vm.data_p.resize(s.size());

  auto pair = [&](const std::string& name, Var& u, Var& p) {
    u = static_cast<Var>(vm.names.size());
    vm.names.push_back(name);
    p = static_cast<Var>(vm.names.size());
    vm.names.push_back(name + "'");
  };
  auto interaction_pair = [&](InteractionId a) {
    const auto& label = s.alphabet()[a];
    if (options.sharp_label && label == *options.sharp_label) {
      vm.sigma[a] = vm.sigma_p[a] = kNoVar;
      return;
    }
    pair(label, vm.sigma[a], vm.sigma_p[a]);
  };
  auto component_block = [&](std::size_t c) {
    const auto& comp = s.component(c);
    auto k = bits_for(comp.locations.size());
    vm.loc[c].resize(k);
    vm.loc_p[c].resize(k);
    for (std::size_t b = 0; b < k; ++b) pair(comp.name + "@" + std::to_string(b), vm.loc[c][b], vm.loc_p[c][b]);
    vm.data[c].resize(comp.variables.size());
    vm.data_p[c].resize(comp.variables.size());
    for (std::size_t v = 0; v < comp.variables.size(); ++v)
      pair(comp.name + "." + comp.variables[v], vm.data[c][v], vm.data_p[c][v]);
  };

  pair("stg", vm.stg, vm.stg_p);
  vm.component_order.resize(s.size());
  std::iota(vm.component_order.begin(), vm.component_order.end(), 0);

  if (options.ordering == Ordering::Declaration) {
    for (InteractionId a = 0; a < n; ++a) interaction_pair(a);
    for (auto c : vm.component_order) component_block(c);
    return vm;
  }

  vm.component_order = force_order(s, vm.component_order, options.force_iters);
  std::vector<double> pos(s.size());
  for (std::size_t k = 0; k < vm.component_order.size(); ++k) pos[vm.component_order[k]] = static_cast<double>(k);
  // (value, kind, index): interactions sit at their center of gravity,
  // ahead of a component with the same value
  std::vector<std::tuple<double, int, std::size_t>> items;
  for (InteractionId a = 0; a < n; ++a) {
    double sum = 0;
    for (auto c : s.participants(a)) sum += pos[c];
    items.emplace_back(sum / static_cast<double>(s.participants(a).size()), 0, a);
  }
  for (std::size_t c = 0; c < s.size(); ++c) items.emplace_back(pos[c], 1, c);
  std::sort(items.begin(), items.end());
  for (const auto& [value, kind, idx] : items) {
    (void)value;
    if (kind == 0)
      interaction_pair(idx);
    else
      component_block(idx);
  }
  return vm;
}

EncodedSystem::EncodedSystem(const System& s, const EncodeOptions& options)
    : system_(s), options_(options), vars_(allocate(s, options)) {
  if (options_.sharp_label) sharp_ = system_.find_interaction(*options_.sharp_label);
  manager_ = std::make_unique<bdd::Manager>(vars_.names);
  auto& m = *manager_;
  const auto n = system_.alphabet().size();

  unprimed_ = vars_.unprimed();
  primed_ = vars_.primed();
  unprimed_cube_ = m.cube(unprimed_);
  primed_cube_ = m.cube(primed_);
  std::vector<Var> state_vars, sigma_vars;
  for (auto v : vars_.sigma)
    if (v != kNoVar) sigma_vars.push_back(v);
  for (std::size_t c = 0; c < system_.size(); ++c) {
    state_vars.insert(state_vars.end(), vars_.loc[c].begin(), vars_.loc[c].end());
    state_vars.insert(state_vars.end(), vars_.data[c].begin(), vars_.data[c].end());
  }
  state_cube_ = m.cube(state_vars);
  sigma_cube_ = m.cube(sigma_vars);

  valid_ = m.constant(true);
  for (std::size_t c = 0; c < system_.size(); ++c) {
    const auto& comp = system_.component(c);
    if (comp.locations.size() == (std::size_t{1} << vars_.loc[c].size())) continue;
    Predicate any = m.constant(false);
    for (std::size_t l = 0; l < comp.locations.size(); ++l) any |= enc(c, l, false);
    valid_ &= any;
  }

  std::vector<Predicate> frames;
  for (std::size_t c = 0; c < system_.size(); ++c) frames.push_back(frame(c));

  // stage 0
  Predicate t0 = m.var(vars_.stg) & m.nvar(vars_.stg_p);
  for (InteractionId a = 0; a < n; ++a) {
    if (sharp_ && a == *sharp_) continue;
    Predicate p_sigma = m.constant(true);
    for (auto c : system_.participants(a)) {
      const auto& comp = system_.component(c);
      Predicate local = m.constant(false);
      for (const auto& t : comp.transitions)
        if (t.label == system_.alphabet()[a]) local |= enc(c, t.source, false) & guard(c, t.guard);
      p_sigma &= local;
    }
    t0 &= m.apply(bdd::Op::Iff, m.var(vars_.sigma_p[a]), p_sigma);
  }
  for (const auto& f : frames) t0 &= f;
  t0_ = t0;

  // stage 1
  std::vector<std::vector<InteractionId>> higher(n);
  for (const auto& [low, high] : closure_and_validate(system_.priorities())) {
    auto h = system_.interaction(high);
    if (sharp_ && h == *sharp_) continue;  // never blocks
    higher[system_.interaction(low)].push_back(h);
  }
  const Predicate stage1 = m.nvar(vars_.stg) & m.var(vars_.stg_p);
  for (InteractionId a = 0; a < n; ++a) {
    const bool may = sharp_ && a == *sharp_;
    const auto& parts = system_.participants(a);
    Predicate t = may ? stage1 : stage1 & m.var(vars_.sigma[a]) & m.var(vars_.sigma_p[a]);
    for (InteractionId b = 0; b < n; ++b)
      if (b != a && vars_.sigma_p[b] != kNoVar) t &= m.nvar(vars_.sigma_p[b]);
    for (auto h : higher[a]) t &= m.nvar(vars_.sigma[h]);
    Predicate some_fires = m.constant(false);
    for (std::size_t c = 0; c < system_.size(); ++c) {
      if (!std::binary_search(parts.begin(), parts.end(), c)) {
        t &= frames[c];
        continue;
      }
      Predicate fire = m.constant(false);
      for (const auto& tr : system_.component(c).transitions)
        if (tr.label == system_.alphabet()[a]) fire |= step(c, tr);
      if (may) {
        t &= fire | frames[c];
        some_fires |= fire;
      } else {
        t &= fire;
      }
    }
    if (may) t &= some_fires;
    t1_parts_.push_back(t);
  }

  p_ini_ = m.var(vars_.stg);
  for (auto v : sigma_vars) p_ini_ &= m.nvar(v);
  for (std::size_t c = 0; c < system_.size(); ++c) {
    const auto& comp = system_.component(c);
    p_ini_ &= enc(c, comp.initial_location, false);
    for (std::size_t v = 0; v < comp.variables.size(); ++v)
      p_ini_ &= m.literal(vars_.data[c][v], comp.initial_valuation[v]);
  }

  p_dead_ = m.nvar(vars_.stg);
  for (auto v : sigma_vars) p_dead_ &= m.nvar(v);
  if (sharp_) p_dead_ &= ~m.exists(primed_cube_, t1_parts_[*sharp_]);

  Predicate risk = m.constant(false);
  for (const auto& r : system_.risks()) {
    Predicate conf = m.constant(true);
    for (const auto& lc : r.constraints) {
      conf &= enc(lc.component, lc.location, false);
      for (const auto& [v, val] : lc.values) conf &= m.literal(vars_.data[lc.component][v], val);
    }
    risk |= conf;
  }
  p_risk_ = m.nvar(vars_.stg) & risk;
}

Predicate EncodedSystem::enc(std::size_t comp, std::size_t loc, bool primed) const {
  auto& m = *manager_;
  const auto& bits = primed ? vars_.loc_p[comp] : vars_.loc[comp];
  Predicate out = m.constant(true);
  for (std::size_t b = 0; b < bits.size(); ++b) out &= m.literal(bits[b], (loc >> b) & 1u);
  return out;
}

Predicate EncodedSystem::guard(std::size_t comp, const Expr& e) const {
  auto& m = *manager_;
  switch (e.kind()) {
    case Expr::Kind::Const: return m.constant(e.value());
    case Expr::Kind::Var: return m.var(vars_.data[comp].at(e.index()));
    case Expr::Kind::Not: return ~guard(comp, e.lhs());
    case Expr::Kind::And: return guard(comp, e.lhs()) & guard(comp, e.rhs());
    case Expr::Kind::Or: return guard(comp, e.lhs()) | guard(comp, e.rhs());
  }
  return m.constant(false);
}

Predicate EncodedSystem::frame(std::size_t comp) const {
  auto& m = *manager_;
  Predicate out = m.constant(true);
  for (std::size_t b = 0; b < vars_.loc[comp].size(); ++b)
    out &= m.apply(bdd::Op::Iff, m.var(vars_.loc[comp][b]), m.var(vars_.loc_p[comp][b]));
  for (std::size_t v = 0; v < vars_.data[comp].size(); ++v)
    out &= m.apply(bdd::Op::Iff, m.var(vars_.data[comp][v]), m.var(vars_.data_p[comp][v]));
  return out;
}

Predicate EncodedSystem::step(std::size_t comp, const Transition& t) const {
  auto& m = *manager_;
  Predicate out = enc(comp, t.source, false) & guard(comp, t.guard) & enc(comp, t.destination, true);
  for (std::size_t v = 0; v < t.update.size(); ++v)
    out &= m.apply(bdd::Op::Iff, m.var(vars_.data_p[comp][v]), guard(comp, t.update[v]));
  return out;
}

const Predicate& EncodedSystem::t1() const {
  if (!t1_) {
    Predicate all = manager_->constant(false);
    for (const auto& p : t1_parts_) all |= p;
    t1_ = all;
  }
  return *t1_;
}

Predicate EncodedSystem::prime(const Predicate& p) const { return manager_->substitute(p, unprimed_, primed_); }
Predicate EncodedSystem::unprime(const Predicate& p) const { return manager_->substitute(p, primed_, unprimed_); }

Predicate EncodedSystem::post(const Predicate& states) const {
  auto& m = *manager_;
  Predicate s0 = states & m.var(vars_.stg);
  Predicate s1 = states & m.nvar(vars_.stg);
  Predicate out = m.and_exists(t0_, s0, unprimed_cube_);
  for (const auto& t : t1_parts_) out |= m.and_exists(t, s1, unprimed_cube_);
  return unprime(out);
}

Predicate EncodedSystem::pre_exists_stage0(const Predicate& target) const {
  return manager_->and_exists(t0_, prime(target), primed_cube_);
}

Predicate EncodedSystem::pre_exists_stage1(const Predicate& target) const {
  Predicate tp = prime(target);
  Predicate out = manager_->constant(false);
  for (const auto& t : t1_parts_) out |= manager_->and_exists(t, tp, primed_cube_);
  return out;
}

Predicate EncodedSystem::escape_exists_stage1(const Predicate& target) const {
  Predicate tp = prime(target);
  Predicate out = manager_->constant(false);
  for (std::size_t a = 0; a < t1_parts_.size(); ++a)
    if (!sharp_ || a != *sharp_) out |= manager_->and_exists(t1_parts_[a], tp, primed_cube_);
  return out;
}

Predicate EncodedSystem::pre_exists(const Predicate& target) const {
  return pre_exists_stage0(target) | pre_exists_stage1(target);
}

Predicate EncodedSystem::edges_into(const Predicate& target) const {
  Predicate tp = prime(target);
  Predicate out = manager_->constant(false);
  for (const auto& t : t1_parts_) out |= t & tp;
  return out;
}

Predicate EncodedSystem::configuration(const Configuration& c) const {
  auto& m = *manager_;
  Predicate out = m.constant(true);
  for (std::size_t i = 0; i < system_.size(); ++i) {
    out &= enc(i, c.locations.at(i), false);
    for (std::size_t v = 0; v < vars_.data[i].size(); ++v)
      out &= m.literal(vars_.data[i][v], (c.valuations.at(i) >> v) & 1u);
  }
  return out;
}

Predicate EncodedSystem::interaction(InteractionId a, bool primed) const {
  Var v = primed ? vars_.sigma_p.at(a) : vars_.sigma.at(a);
  if (v == kNoVar) throw ModelError("the may-fire interaction has no interaction variable");
  return manager_->var(v);
}

std::vector<Configuration> EncodedSystem::configurations(const Predicate& p) const {
  auto& m = *manager_;
  std::vector<Var> drop = primed_;
  drop.push_back(vars_.stg);
  for (auto v : vars_.sigma)
    if (v != kNoVar) drop.push_back(v);
  Predicate proj = m.exists(drop, p) & valid_;

  std::vector<Configuration> out;
  std::vector<Var> state_vars = m.support(state_cube_);
  std::vector<bool> assignment(m.var_count(), false);
  // enumerate cubes, then expand don't-cares over the state variables
  for (const auto& cube : m.enumerate_cubes(proj)) {
    std::vector<Var> free;
    for (auto v : state_vars)
      if (std::none_of(cube.begin(), cube.end(), [&](const bdd::Literal& l) { return l.first == v; })) free.push_back(v);
    for (const auto& [v, val] : cube) assignment[v] = val;
    if (free.size() > 24) throw ModelError("too many configurations to enumerate");
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << free.size()); ++bits) {
      for (std::size_t k = 0; k < free.size(); ++k) assignment[free[k]] = (bits >> k) & 1u;
      if (!m.eval(valid_, assignment)) continue;
      Configuration c;
      for (std::size_t i = 0; i < system_.size(); ++i) {
        std::uint32_t loc = 0;
        for (std::size_t b = 0; b < vars_.loc[i].size(); ++b)
          if (assignment[vars_.loc[i][b]]) loc |= 1u << b;
        std::uint64_t val = 0;
        for (std::size_t v = 0; v < vars_.data[i].size(); ++v)
          if (assignment[vars_.data[i][v]]) val |= std::uint64_t{1} << v;
        c.locations.push_back(loc);
        c.valuations.push_back(val);
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::string EncodedSystem::stats() const {
  std::ostringstream out;
  out << "variables " << vars_.size() << "\n";
  out << "order";
  for (const auto& n : vars_.names) out << ' ' << n;
  out << "\n";
  out << "nodes t0 " << manager_->node_count(t0_) << "\n";
  std::size_t parts = 0;
  for (const auto& t : t1_parts_) parts += manager_->node_count(t);
  out << "nodes t1-parts " << parts << "\n";
  out << "nodes p_ini " << manager_->node_count(p_ini_) << "\n";
  out << "nodes p_dead " << manager_->node_count(p_dead_) << "\n";
  out << "nodes p_risk " << manager_->node_count(p_risk_) << "\n";
  return out.str();
}

bool symbolic_member(const EncodedSystem& es, const std::vector<InteractionId>& word) {
  auto& m = es.manager();
  Predicate s = es.p_ini();
  for (auto a : word) {
    Predicate s1 = es.unprime(m.and_exists(es.t0(), s, es.unprimed_cube()));
    s = es.unprime(m.and_exists(es.t1(a), s1, es.unprimed_cube()));
    if (s.is_false()) return false;
  }
  return true;
}

}  // namespace prisyn
