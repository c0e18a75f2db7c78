#include "support.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

namespace prisyn::testing {

namespace {

std::size_t pick(std::mt19937& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_expr(std::mt19937& rng, std::size_t nvars, int depth) {
  if (depth == 0 || coin(rng, 0.4)) {
    if (nvars == 0 || coin(rng, 0.15)) return coin(rng, 0.5) ? "true" : "false";
    return "x" + std::to_string(pick(rng, 0, nvars - 1));
  }
  switch (pick(rng, 0, 2)) {
    case 0: return "!" + random_expr(rng, nvars, depth - 1);
    case 1: return "(" + random_expr(rng, nvars, depth - 1) + " & " + random_expr(rng, nvars, depth - 1) + ")";
    default: return "(" + random_expr(rng, nvars, depth - 1) + " | " + random_expr(rng, nvars, depth - 1) + ")";
  }
}

}  // namespace

bool Formula::eval(const std::vector<bool>& a) const {
  switch (kind) {
    case Var: return a[var];
    case Not: return !l->eval(a);
    case And: return l->eval(a) && r->eval(a);
    case Or: return l->eval(a) || r->eval(a);
    case Xor: return l->eval(a) != r->eval(a);
    case Implies: return !l->eval(a) || r->eval(a);
    case Iff: return l->eval(a) == r->eval(a);
    case Const: return value;
  }
  return false;
}

bdd::Predicate Formula::build(bdd::Manager& m) const {
  using bdd::Op;
  switch (kind) {
    case Var: return m.var(var);
    case Not: return ~l->build(m);
    case And: return m.apply(Op::And, l->build(m), r->build(m));
    case Or: return m.apply(Op::Or, l->build(m), r->build(m));
    case Xor: return m.apply(Op::Xor, l->build(m), r->build(m));
    case Implies: return m.apply(Op::Implies, l->build(m), r->build(m));
    case Iff: return m.apply(Op::Iff, l->build(m), r->build(m));
    case Const: return m.constant(value);
  }
  return m.constant(false);
}

std::shared_ptr<Formula> random_formula(std::mt19937& rng, std::uint32_t nvars, int depth) {
  auto f = std::make_shared<Formula>();
  std::uniform_int_distribution<int> kind(0, 6);
  if (depth == 0) {
    if (std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
      f->kind = Formula::Const;
      f->value = rng() & 1u;
    } else {
      f->kind = Formula::Var;
      f->var = std::uniform_int_distribution<std::uint32_t>(0, nvars - 1)(rng);
    }
    return f;
  }
  f->kind = static_cast<Formula::Kind>(kind(rng));
  if (f->kind == Formula::Var) {
    f->var = std::uniform_int_distribution<std::uint32_t>(0, nvars - 1)(rng);
    return f;
  }
  f->l = random_formula(rng, nvars, depth - 1);
  if (f->kind != Formula::Not) f->r = random_formula(rng, nvars, depth - 1);
  return f;
}

std::vector<std::string> names(std::uint32_t n) {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

std::vector<bool> bits(std::uint64_t k, std::uint32_t n) {
  std::vector<bool> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = (k >> i) & 1u;
  return a;
}

std::string random_system_text(std::mt19937& rng, const RandomShape& shape) {
  const std::size_t ncomp = pick(rng, 1, shape.max_components);
  const std::size_t nlab = pick(rng, 2, shape.max_labels);
  std::vector<std::size_t> nloc(ncomp), nvar(ncomp);
  std::vector<std::vector<std::size_t>> labels(ncomp);
  for (std::size_t c = 0; c < ncomp; ++c) {
    nloc[c] = pick(rng, 1, shape.max_locations);
    nvar[c] = pick(rng, 0, shape.max_vars);
  }
  for (std::size_t l = 0; l < nlab; ++l) {
    bool any = false;
    for (std::size_t c = 0; c < ncomp; ++c)
      if (coin(rng, 0.3)) {
        labels[c].push_back(l);
        any = true;
      }
    if (!any) labels[pick(rng, 0, ncomp - 1)].push_back(l);
  }

  std::ostringstream out;
  out << "system {\n  interactions";
  for (std::size_t l = 0; l < nlab; ++l) out << " i" << l;
  out << ";\n";
  for (std::size_t c = 0; c < ncomp; ++c) {
    out << "  component C" << c << " {\n    locations";
    for (std::size_t k = 0; k < nloc[c]; ++k) out << " l" << k;
    out << ";\n";
    if (nvar[c]) {
      out << "    vars";
      for (std::size_t v = 0; v < nvar[c]; ++v) out << " x" << v;
      out << ";\n";
    }
    out << "    init l" << pick(rng, 0, nloc[c] - 1);
    if (nvar[c]) {
      out << " [";
      for (std::size_t v = 0; v < nvar[c]; ++v) out << (v ? ", " : "") << 'x' << v << '=' << pick(rng, 0, 1);
      out << ']';
    }
    out << ";\n";
    // every location gets an exit and every label an edge
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // (label, source)
    std::set<std::size_t> used;
    if (!labels[c].empty())
      for (std::size_t k = 0; k < nloc[c]; ++k) {
        auto l = labels[c][pick(rng, 0, labels[c].size() - 1)];
        edges.emplace_back(l, k);
        used.insert(l);
      }
    for (auto l : labels[c])
      for (std::size_t t = used.count(l) ? pick(rng, 0, 1) : 1; t > 0; --t)
        edges.emplace_back(l, pick(rng, 0, nloc[c] - 1));
    std::sort(edges.begin(), edges.end());
    for (const auto& [l, from] : edges) {
      // mostly real moves: self-loops alone keep the reachable set tiny
      std::size_t to = nloc[c] > 1 && coin(rng, 0.75) ? (from + pick(rng, 1, nloc[c] - 1)) % nloc[c]
                                                       : pick(rng, 0, nloc[c] - 1);
      out << "    on i" << l << " from l" << from << " to l" << to;
      if (nvar[c] && coin(rng, 0.4)) out << " when " << random_expr(rng, nvar[c], 2);
      std::vector<std::string> sets;
      for (std::size_t v = 0; v < nvar[c]; ++v)
        if (coin(rng, 0.35)) sets.push_back("x" + std::to_string(v) + " := " + random_expr(rng, nvar[c], 1));
      if (!sets.empty()) {
        out << " set ";
        for (std::size_t k = 0; k < sets.size(); ++k) out << (k ? ", " : "") << sets[k];
      }
      out << ";\n";
    }
    out << "  }\n";
  }
  if (shape.priorities)
    for (std::size_t a = 0; a < nlab; ++a)
      for (std::size_t b = a + 1; b < nlab; ++b)
        if (coin(rng, 0.12)) out << "  priority i" << a << " < i" << b << ";\n";
  if (shape.risks) {
    const std::size_t nrisk = pick(rng, 0, 2);
    for (std::size_t r = 0; r < nrisk; ++r) {
      out << "  risk { ";
      const std::size_t first = pick(rng, 0, ncomp - 1);
      const std::size_t count = pick(rng, 1, std::min<std::size_t>(2, ncomp - first));
      for (std::size_t k = 0; k < count; ++k) {
        std::size_t c = first + k;
        out << (k ? " & " : "") << 'C' << c << "@l" << pick(rng, 0, nloc[c] - 1);
        if (nvar[c] && coin(rng, 0.5)) out << " [x0=" << pick(rng, 0, 1) << ']';
      }
      out << " }\n";
    }
  }
  out << "}\n";
  return out.str();
}

System random_system(std::mt19937& rng, const RandomShape& shape) { return parse_system(random_system_text(rng, shape)); }

Dfa random_dfa(std::mt19937& rng, const std::vector<std::string>& letters, std::size_t max_states) {
  std::vector<std::string> alphabet;
  for (const auto& l : letters)
    if (coin(rng, 0.6)) alphabet.push_back(l);
  if (alphabet.empty()) alphabet.push_back(letters[pick(rng, 0, letters.size() - 1)]);
  const std::size_t n = pick(rng, 1, max_states);
  std::vector<std::string> states;
  std::vector<std::vector<std::size_t>> delta(n);
  std::set<std::size_t> accepting;
  for (std::size_t q = 0; q < n; ++q) {
    states.push_back("q" + std::to_string(q));
    for (std::size_t k = 0; k < alphabet.size(); ++k) delta[q].push_back(pick(rng, 0, n - 1));
    if (coin(rng, 0.4)) accepting.insert(q);
  }
  return Dfa(std::move(states), std::move(alphabet), 0, std::move(accepting), std::move(delta));
}

std::optional<Word> dfa_difference(const Dfa& a, const Dfa& b) {
  using Pair = std::pair<std::size_t, std::size_t>;
  std::map<Pair, Word> seen;
  std::deque<Pair> queue;
  Pair start{a.initial(), b.initial()};
  seen[start] = {};
  queue.push_back(start);
  while (!queue.empty()) {
    auto p = queue.front();
    queue.pop_front();
    if (a.is_accepting(p.first) != b.is_accepting(p.second)) return seen[p];
    for (std::size_t k = 0; k < a.alphabet().size(); ++k) {
      const auto& l = a.alphabet()[k];
      auto kb = b.letter_index(l);
      Pair q{a.next(p.first, k), kb ? b.next(p.second, *kb) : p.second};
      if (seen.count(q)) continue;
      Word w = seen[p];
      w.push_back(l);
      seen[q] = std::move(w);
      queue.push_back(q);
    }
  }
  return std::nullopt;
}

bdd::Predicate symbolic_configurations(const EncodedSystem& es) {
  auto& m = es.manager();
  std::vector<bdd::Var> drop{es.vars().stg};
  for (auto v : es.vars().sigma)
    if (v != kNoVar) drop.push_back(v);
  return m.exists(drop, reachable(es).states & m.var(es.vars().stg));
}

bdd::Predicate explicit_configurations(const EncodedSystem& es, const ReachGraph& g) {
  auto out = es.manager().constant(false);
  for (const auto& c : g.states) out |= es.configuration(c);
  return out;
}

std::vector<bool> symbolic_enabled(const EncodedSystem& es, const Configuration& c) {
  auto& m = es.manager();
  auto s0 = es.configuration(c) & m.var(es.vars().stg);
  auto s1 = es.unprime(m.and_exists(es.t0(), s0, es.unprimed_cube()));
  std::vector<bool> out;
  for (InteractionId a = 0; a < es.system().alphabet().size(); ++a) out.push_back(!(es.t1(a) & s1).is_false());
  return out;
}

namespace {

std::vector<bool> backward_closure(const ReachGraph& g, std::vector<bool> marked) {
  std::vector<std::vector<std::size_t>> preds(g.states.size());
  for (std::size_t s = 0; s < g.edges.size(); ++s)
    for (const auto& e : g.edges[s]) preds[e.target].push_back(s);
  std::deque<std::size_t> queue;
  for (std::size_t s = 0; s < marked.size(); ++s)
    if (marked[s]) queue.push_back(s);
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    for (auto p : preds[s])
      if (!marked[p]) {
        marked[p] = true;
        queue.push_back(p);
      }
  }
  return marked;
}

}  // namespace

bool always_eventually_fires(const ReachGraph& g, InteractionId label) {
  std::vector<bool> sources(g.states.size(), false);
  for (std::size_t s = 0; s < g.edges.size(); ++s)
    for (const auto& e : g.edges[s])
      if (e.label == label) sources[s] = true;
  auto can = backward_closure(g, sources);
  for (bool b : can)
    if (!b) return false;
  return true;
}

bool fires_on_cycle(const ReachGraph& g, InteractionId label) {
  for (std::size_t s = 0; s < g.edges.size(); ++s)
    for (const auto& e : g.edges[s]) {
      if (e.label != label) continue;
      std::vector<bool> target(g.states.size(), false);
      target[s] = true;
      if (backward_closure(g, target)[e.target]) return true;
    }
  return false;
}

std::string read_model_file(const std::string& name) {
  std::ifstream in(std::string(PRISYN_MODELS_DIR) + "/" + name);
  if (!in) throw std::runtime_error("cannot open model file " + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace prisyn::testing
