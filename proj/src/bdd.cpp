#include "prisyn/bdd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace prisyn::bdd {

namespace {

constexpr std::uint32_t kOpNot = 8;
constexpr std::uint32_t kOpIte = 9;
constexpr std::uint32_t kOpExists = 10;
constexpr std::uint32_t kOpAndExists = 11;
constexpr std::uint32_t kOpSubstBase = 64;

constexpr std::size_t kMaxNodes = 160'000'000;
constexpr std::size_t kMinCache = std::size_t{1} << 18;
constexpr std::size_t kMaxCache = std::size_t{1} << 24;

inline std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = a * 0x9e3779b97f4a7c15ull;
  h ^= b + 0x632be59bd9b4e019ull + (h << 6) + (h >> 2);
  h ^= c * 0xc2b2ae3d27d4eb4full;
  h ^= h >> 29;
  return h;
}

}  // namespace

Predicate Predicate::operator&(const Predicate& o) const { return mgr_->apply(Op::And, *this, o); }
Predicate Predicate::operator|(const Predicate& o) const { return mgr_->apply(Op::Or, *this, o); }
Predicate Predicate::operator^(const Predicate& o) const { return mgr_->apply(Op::Xor, *this, o); }
Predicate Predicate::operator~() const {
  if (!mgr_) throw BddError("operation on a predicate without manager");
  return mgr_->negate(*this);
}

bool Predicate::operator==(const Predicate& o) const {
  if (mgr_ != o.mgr_) throw BddError("comparing predicates of different managers");
  return node_ == o.node_;
}

bool Predicate::implies(const Predicate& o) const {
  if (!mgr_) throw BddError("operation on a predicate without manager");
  return mgr_->apply(Op::Implies, *this, o).is_true();
}

Manager::Manager(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!by_name_.emplace(names_[i], static_cast<Var>(i)).second) throw BddError("duplicate variable name " + names_[i]);
  // terminals: 0 = false, 1 = true
  var_ = {kTerminal, kTerminal};
  lo_ = {0, 1};
  hi_ = {0, 1};
  table_.assign(std::size_t{1} << 16, 0);
  cache_.resize(kMinCache);
}

std::optional<Var> Manager::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void Manager::check(const Predicate& p) const {
  if (p.mgr_ != this) throw BddError("predicate belongs to a different manager");
}

Node Manager::make(Var v, Node lo, Node hi) {
  if (lo == hi) return lo;
  std::size_t mask = table_.size() - 1;
  std::size_t slot = hash3(v, lo, hi) & mask;
  while (Node n = table_[slot]) {
    if (var_[n] == v && lo_[n] == lo && hi_[n] == hi) return n;
    slot = (slot + 1) & mask;
  }
  if (var_.size() >= kMaxNodes) throw BddError("decision diagram node limit exceeded");
  Node n = static_cast<Node>(var_.size());
  var_.push_back(v);
  lo_.push_back(lo);
  hi_.push_back(hi);
  table_[slot] = n;
  if (++table_used_ * 2 > table_.size()) grow_table();
  return n;
}

void Manager::grow_table() {
  std::vector<Node> fresh(table_.size() * 2, 0);
  std::size_t mask = fresh.size() - 1;
  for (Node n : table_) {
    if (!n) continue;
    std::size_t slot = hash3(var_[n], lo_[n], hi_[n]) & mask;
    while (fresh[slot]) slot = (slot + 1) & mask;
    fresh[slot] = n;
  }
  table_.swap(fresh);
  maybe_grow_cache();
}

void Manager::maybe_grow_cache() {
  std::size_t want = std::min(kMaxCache, std::max(kMinCache, table_.size() / 2));
  if (want > cache_.size()) {
    // Entries stay valid (no node is ever freed); dropping them only costs recomputation.
    cache_.assign(want, CacheEntry{});
  }
}

bool Manager::cache_lookup(std::uint32_t op, Node a, Node b, Node c, Node& out) const {
  const auto& e = cache_[hash3(op ^ (std::uint64_t{a} << 32), b, c) & (cache_.size() - 1)];
  if (e.op == op && e.a == a && e.b == b && e.c == c) {
    out = e.result;
    return true;
  }
  return false;
}

void Manager::cache_store(std::uint32_t op, Node a, Node b, Node c, Node result) {
  cache_[hash3(op ^ (std::uint64_t{a} << 32), b, c) & (cache_.size() - 1)] = {op, a, b, c, result};
}

Predicate Manager::constant(bool value) { return {this, value ? 1u : 0u}; }

Predicate Manager::var(Var v) {
  if (v >= names_.size()) throw BddError("variable handle out of range");
  return {this, make(v, 0, 1)};
}

Predicate Manager::nvar(Var v) {
  if (v >= names_.size()) throw BddError("variable handle out of range");
  return {this, make(v, 1, 0)};
}

Predicate Manager::cube(const std::vector<Var>& vars) {
  std::vector<Var> sorted(vars);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Node n = 1;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (*it >= names_.size()) throw BddError("variable handle out of range");
    n = make(*it, 0, n);
  }
  return {this, n};
}

Predicate Manager::assignment(const Cube& lits) {
  Predicate out = constant(true);
  for (const auto& [v, val] : lits) out &= literal(v, val);
  return out;
}

Node Manager::apply_rec(Op op, Node a, Node b) {
  switch (op) {
    case Op::And:
      if (a == 0 || b == 0) return 0;
      if (a == 1) return b;
      if (b == 1 || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::Or:
      if (a == 1 || b == 1) return 1;
      if (a == 0) return b;
      if (b == 0 || a == b) return a;
      if (a > b) std::swap(a, b);
      break;
    case Op::Xor:
      if (a == b) return 0;
      if (a == 0) return b;
      if (b == 0) return a;
      if (a == 1) return not_rec(b);
      if (b == 1) return not_rec(a);
      if (a > b) std::swap(a, b);
      break;
    case Op::Iff:
      if (a == b) return 1;
      if (a == 1) return b;
      if (b == 1) return a;
      if (a == 0) return not_rec(b);
      if (b == 0) return not_rec(a);
      if (a > b) std::swap(a, b);
      break;
    case Op::Implies:
      if (a == 0 || b == 1 || a == b) return 1;
      if (a == 1) return b;
      if (b == 0) return not_rec(a);
      break;
  }
  const auto code = static_cast<std::uint32_t>(op);
  Node r;
  if (cache_lookup(code, a, b, 0, r)) return r;
  Var v = std::min(top(a), top(b));
  Node a0 = top(a) == v ? lo_[a] : a, a1 = top(a) == v ? hi_[a] : a;
  Node b0 = top(b) == v ? lo_[b] : b, b1 = top(b) == v ? hi_[b] : b;
  Node lo = apply_rec(op, a0, b0);
  Node hi = apply_rec(op, a1, b1);
  r = make(v, lo, hi);
  cache_store(code, a, b, 0, r);
  return r;
}

Node Manager::not_rec(Node a) {
  if (a <= 1) return a ^ 1u;
  Node r;
  if (cache_lookup(kOpNot, a, 0, 0, r)) return r;
  Node lo = not_rec(lo_[a]);
  Node hi = not_rec(hi_[a]);
  r = make(var_[a], lo, hi);
  cache_store(kOpNot, a, 0, 0, r);
  return r;
}

Node Manager::ite_rec(Node c, Node t, Node e) {
  if (c == 1) return t;
  if (c == 0) return e;
  if (t == e) return t;
  if (t == 1 && e == 0) return c;
  if (t == 0 && e == 1) return not_rec(c);
  if (t == 1) return apply_rec(Op::Or, c, e);
  if (e == 0) return apply_rec(Op::And, c, t);
  Node r;
  if (cache_lookup(kOpIte, c, t, e, r)) return r;
  Var v = std::min({top(c), top(t), top(e)});
  auto cof = [&](Node n, bool high) { return top(n) == v ? (high ? hi_[n] : lo_[n]) : n; };
  Node lo = ite_rec(cof(c, false), cof(t, false), cof(e, false));
  Node hi = ite_rec(cof(c, true), cof(t, true), cof(e, true));
  r = make(v, lo, hi);
  cache_store(kOpIte, c, t, e, r);
  return r;
}

Predicate Manager::apply(Op op, const Predicate& p, const Predicate& q) {
  check(p);
  check(q);
  return {this, apply_rec(op, p.node_, q.node_)};
}

Predicate Manager::negate(const Predicate& p) {
  check(p);
  return {this, not_rec(p.node_)};
}

Predicate Manager::ite(const Predicate& c, const Predicate& t, const Predicate& e) {
  check(c);
  check(t);
  check(e);
  return {this, ite_rec(c.node_, t.node_, e.node_)};
}

Node Manager::exists_rec(Node f, Node vars) {
  if (f <= 1) return f;
  while (vars > 1 && top(vars) < top(f)) vars = hi_[vars];
  if (vars <= 1) return f;
  Node r;
  if (cache_lookup(kOpExists, f, vars, 0, r)) return r;
  Var v = top(f);
  if (top(vars) == v) {
    Node lo = exists_rec(lo_[f], hi_[vars]);
    r = lo == 1 ? 1 : apply_rec(Op::Or, lo, exists_rec(hi_[f], hi_[vars]));
  } else {
    Node lo = exists_rec(lo_[f], vars);
    Node hi = exists_rec(hi_[f], vars);
    r = make(v, lo, hi);
  }
  cache_store(kOpExists, f, vars, 0, r);
  return r;
}

Predicate Manager::exists(const Predicate& var_cube, const Predicate& p) {
  check(var_cube);
  check(p);
  return {this, exists_rec(p.node_, var_cube.node_)};
}

Predicate Manager::exists(const std::vector<Var>& vars, const Predicate& p) { return exists(cube(vars), p); }

Predicate Manager::forall(const std::vector<Var>& vars, const Predicate& p) { return negate(exists(vars, negate(p))); }

Node Manager::and_exists_rec(Node f, Node g, Node vars) {
  if (f == 0 || g == 0) return 0;
  if (f == 1 && g == 1) return 1;
  if (f == 1) return exists_rec(g, vars);
  if (g == 1 || f == g) return exists_rec(f, vars);
  if (f > g) std::swap(f, g);
  Var v = std::min(top(f), top(g));
  while (vars > 1 && top(vars) < v) vars = hi_[vars];
  if (vars <= 1) return apply_rec(Op::And, f, g);
  Node r;
  if (cache_lookup(kOpAndExists, f, g, vars, r)) return r;
  Node f0 = top(f) == v ? lo_[f] : f, f1 = top(f) == v ? hi_[f] : f;
  Node g0 = top(g) == v ? lo_[g] : g, g1 = top(g) == v ? hi_[g] : g;
  if (top(vars) == v) {
    Node lo = and_exists_rec(f0, g0, hi_[vars]);
    r = lo == 1 ? 1 : apply_rec(Op::Or, lo, and_exists_rec(f1, g1, hi_[vars]));
  } else {
    Node lo = and_exists_rec(f0, g0, vars);
    Node hi = and_exists_rec(f1, g1, vars);
    r = make(v, lo, hi);
  }
  cache_store(kOpAndExists, f, g, vars, r);
  return r;
}

Predicate Manager::and_exists(const Predicate& p, const Predicate& q, const Predicate& var_cube) {
  check(p);
  check(q);
  check(var_cube);
  return {this, and_exists_rec(p.node_, q.node_, var_cube.node_)};
}

Node Manager::subst_rec(Node f, std::uint32_t map_id) {
  if (f <= 1) return f;
  const std::uint32_t code = kOpSubstBase + map_id;
  Node r;
  if (cache_lookup(code, f, 0, 0, r)) return r;
  Node lo = subst_rec(lo_[f], map_id);
  Node hi = subst_rec(hi_[f], map_id);
  Var nv = maps_[map_id][var_[f]];
  // ite handles renamings that do not preserve the order
  r = ite_rec(make(nv, 0, 1), hi, lo);
  cache_store(code, f, 0, 0, r);
  return r;
}

Predicate Manager::substitute(const Predicate& p, const std::vector<Var>& from, const std::vector<Var>& to) {
  check(p);
  if (from.size() != to.size()) throw BddError("substitute: lists differ in length");
  std::set<Var> f(from.begin(), from.end()), t(to.begin(), to.end());
  if (f.size() != from.size() || t.size() != to.size()) throw BddError("substitute: repeated variable");
  for (auto v : f)
    if (t.count(v)) throw BddError("substitute: source and target lists overlap");
  std::vector<Var> map(names_.size());
  for (Var v = 0; v < map.size(); ++v) map[v] = v;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] >= names_.size() || to[i] >= names_.size()) throw BddError("variable handle out of range");
    map[from[i]] = to[i];
  }
  auto [it, fresh] = map_ids_.emplace(map, static_cast<std::uint32_t>(maps_.size()));
  if (fresh) maps_.push_back(map);
  return {this, subst_rec(p.node_, it->second)};
}

Cube Manager::pick_cube(const Predicate& p, const std::vector<Var>& care) {
  check(p);
  if (p.is_false()) throw BddError("pick_cube on an unsatisfiable predicate");
  Cube out;
  Node n = p.node_;
  while (n > 1) {
    bool high = lo_[n] == 0;
    out.emplace_back(var_[n], high);
    n = high ? hi_[n] : lo_[n];
  }
  for (auto v : care) {
    bool present = std::any_of(out.begin(), out.end(), [&](const Literal& l) { return l.first == v; });
    if (!present) out.emplace_back(v, false);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cube> Manager::enumerate_cubes(const Predicate& p) {
  check(p);
  std::vector<Cube> out;
  Cube path;
  std::function<void(Node)> walk = [&](Node n) {
    if (n == 0) return;
    if (n == 1) {
      out.push_back(path);
      return;
    }
    path.emplace_back(var_[n], false);
    walk(lo_[n]);
    path.back().second = true;
    walk(hi_[n]);
    path.pop_back();
  };
  walk(p.node_);
  return out;
}

bool Manager::eval(const Predicate& p, const std::vector<bool>& assignment) {
  check(p);
  Node n = p.node_;
  while (n > 1) {
    Var v = var_[n];
    bool val = v < assignment.size() && assignment[v];
    n = val ? hi_[n] : lo_[n];
  }
  return n == 1;
}

std::size_t Manager::node_count(const Predicate& p) {
  check(p);
  std::unordered_set<Node> seen;
  std::vector<Node> todo{p.node_};
  while (!todo.empty()) {
    Node n = todo.back();
    todo.pop_back();
    if (n <= 1 || !seen.insert(n).second) continue;
    todo.push_back(lo_[n]);
    todo.push_back(hi_[n]);
  }
  return seen.size();
}

double Manager::sat_count(const Predicate& p, std::optional<std::size_t> nvars) {
  check(p);
  std::size_t width = nvars.value_or(names_.size());
  std::unordered_map<Node, double> frac;
  std::function<double(Node)> go = [&](Node n) -> double {
    if (n <= 1) return n;
    if (var_[n] >= width) throw BddError("sat_count: predicate depends on a variable outside the range");
    auto it = frac.find(n);
    if (it != frac.end()) return it->second;
    double r = 0.5 * (go(lo_[n]) + go(hi_[n]));
    frac.emplace(n, r);
    return r;
  };
  return std::ldexp(go(p.node_), static_cast<int>(width));
}

std::vector<Var> Manager::support(const Predicate& p) {
  check(p);
  std::set<Var> vars;
  std::unordered_set<Node> seen;
  std::vector<Node> todo{p.node_};
  while (!todo.empty()) {
    Node n = todo.back();
    todo.pop_back();
    if (n <= 1 || !seen.insert(n).second) continue;
    vars.insert(var_[n]);
    todo.push_back(lo_[n]);
    todo.push_back(hi_[n]);
  }
  return {vars.begin(), vars.end()};
}

std::string Manager::to_dot(const Predicate& p) {
  check(p);
  std::ostringstream out;
  out << "digraph bdd {\n  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n";
  std::unordered_set<Node> seen;
  std::vector<Node> todo{p.node_};
  while (!todo.empty()) {
    Node n = todo.back();
    todo.pop_back();
    if (n <= 1 || !seen.insert(n).second) continue;
    out << "  n" << n << " [label=\"" << names_[var_[n]] << "\"];\n";
    out << "  n" << n << " -> n" << lo_[n] << " [style=dashed];\n";
    out << "  n" << n << " -> n" << hi_[n] << ";\n";
    todo.push_back(lo_[n]);
    todo.push_back(hi_[n]);
  }
  out << "}\n";
  return out.str();
}

}  // namespace prisyn::bdd
