#include "prisyn/resolver.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace prisyn {

std::string to_string(ClauseFamily f) {
  switch (f) {
    case ClauseFamily::Candidate: return "candidate";
    case ClauseFamily::Existing: return "existing";
    case ClauseFamily::Irreflexive: return "irreflexive";
    case ClauseFamily::Transitive: return "transitive";
  }
  return {};
}

int Cnf::var(const Priority& p) const {
  auto it = index.find(p);
  return it == index.end() ? 0 : it->second;
}

std::size_t Cnf::count(ClauseFamily f) const { return static_cast<std::size_t>(std::count(family.begin(), family.end(), f)); }

bool Cnf::satisfied_by(const PrioritySet& true_pairs) const {
  // close the relation first (reflexive pairs included, so cycles show up)
  std::set<std::string> names;
  for (const auto& [l, h] : true_pairs) {
    names.insert(l);
    names.insert(h);
  }
  std::vector<std::string> ids(names.begin(), names.end());
  const auto k = ids.size();
  auto at = [&](const std::string& s) { return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), s) - ids.begin()); };
  std::vector<char> rel(k * k, 0);
  for (const auto& [l, h] : true_pairs) rel[at(l) * k + at(h)] = 1;
  for (std::size_t m = 0; m < k; ++m)
    for (std::size_t i = 0; i < k; ++i)
      if (rel[i * k + m])
        for (std::size_t j = 0; j < k; ++j)
          if (rel[m * k + j]) rel[i * k + j] = 1;
  std::vector<bool> model(vars.size() + 1, false);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    const auto& [l, h] = vars[v];
    if (names.count(l) && names.count(h)) model[v + 1] = rel[at(l) * k + at(h)] != 0;
  }
  return satisfies(model, clauses);
}

Cnf build_cnf(const std::vector<CubeGroup>& groups, const PrioritySet& existing, const CnfOptions& options) {
  Cnf f;
  std::set<std::string> used;
  for (const auto& g : groups)
    for (const auto& cube : g.cubes) {
      std::vector<Priority> cands;
      for (const auto& other : cube.enabled) {
        if (other == cube.risk) continue;
        Priority p{cube.risk, other};
        if (g.filter && !g.filter(p)) continue;
        cands.push_back(p);
        used.insert(cube.risk);
        used.insert(other);
      }
      f.candidates.push_back(std::move(cands));
    }
  for (const auto& [l, h] : existing) {
    used.insert(l);
    used.insert(h);
  }

  std::vector<std::string> ids(used.begin(), used.end());
  const auto k = ids.size();
  std::vector<int> var(k * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      f.vars.emplace_back(ids[i], ids[j]);
      var[i * k + j] = static_cast<int>(f.vars.size());
      f.index.emplace(f.vars.back(), var[i * k + j]);
    }
  f.candidate_var.assign(f.vars.size() + 1, false);

  auto add = [&](Clause c, ClauseFamily fam, std::optional<std::size_t> origin = std::nullopt) {
    f.clauses.push_back(std::move(c));
    f.family.push_back(fam);
    f.origin.push_back(origin);
  };

  for (std::size_t ci = 0; ci < f.candidates.size(); ++ci) {
    Clause c;
    for (const auto& p : f.candidates[ci]) {
      int v = f.index.at(p);
      c.push_back(v);
      f.candidate_var[v] = true;
    }
    if (c.empty() && !f.unsat_reason) {
      std::size_t seen = 0;
      for (const auto& g : groups)
        for (const auto& cube : g.cubes)
          if (seen++ == ci) {
            std::string en;
            for (const auto& e : cube.enabled) en += (en.empty() ? "" : ",") + e;
            f.unsat_reason = "no admissible candidate for executing " + cube.risk + " with {" + en + "} raised";
          }
    }
    add(std::move(c), ClauseFamily::Candidate, ci);
  }
  for (const auto& p : existing) add({f.index.at(p)}, ClauseFamily::Existing);
  for (std::size_t i = 0; i < k; ++i) {
    add({-var[i * k + i]}, ClauseFamily::Irreflexive);
    for (std::size_t j = i + 1; j < k; ++j) add({-var[i * k + j], -var[j * k + i]}, ClauseFamily::Irreflexive);
  }
  auto trans = options.parallel_transitive ? transitive_clauses_parallel(k, var) : transitive_clauses_serial(k, var);
  f.clauses.reserve(f.clauses.size() + trans.size());
  for (const auto& t : trans) add({t[0], t[1], t[2]}, ClauseFamily::Transitive);
  return f;
}

Cnf build_cnf(const std::vector<FaultCube>& cubes, const PrioritySet& existing, const CandidateFilter& filter,
              const CnfOptions& options) {
  return build_cnf(std::vector<CubeGroup>{{cubes, filter}}, existing, options);
}

namespace {

std::vector<int> branch_order(const Cnf& f) {
  std::vector<int> order;
  for (std::size_t v = 1; v <= f.num_vars(); ++v)
    if (f.candidate_var[v]) order.push_back(static_cast<int>(v));
  return order;
}

}  // namespace

SolveResult solve(const Cnf& f) {
  SolveResult r;
  auto model = dpll(f.num_vars(), f.clauses, branch_order(f), &r.stats);
  if (model) {
    r.sat = true;
    r.model = std::move(*model);
  }
  return r;
}

PrioritySet extract(const std::vector<bool>& model, const Cnf& f) {
  PrioritySet out;
  for (std::size_t v = 1; v <= f.num_vars() && v < model.size(); ++v)
    if (model[v] && f.candidate_var[v]) out.insert(f.vars[v - 1]);
  return out;
}

std::vector<std::size_t> candidate_core(const Cnf& f) {
  std::vector<std::size_t> core;
  std::vector<Clause> rest;
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    if (f.family[i] == ClauseFamily::Candidate)
      core.push_back(i);
    else
      rest.push_back(f.clauses[i]);
  }
  auto order = branch_order(f);
  auto unsat_with = [&](const std::vector<std::size_t>& subset) {
    std::vector<Clause> cls = rest;
    for (auto i : subset) cls.push_back(f.clauses[i]);
    return !dpll(f.num_vars(), cls, order).has_value();
  };
  if (!unsat_with(core)) return {};
  for (std::size_t k = 0; k < core.size();) {
    auto trial = core;
    trial.erase(trial.begin() + static_cast<long>(k));
    if (unsat_with(trial))
      core = std::move(trial);
    else
      ++k;
  }
  return core;
}

std::string to_dimacs(const Cnf& f) {
  std::ostringstream out;
  for (std::size_t v = 0; v < f.vars.size(); ++v)
    out << "c var " << v + 1 << ' ' << f.vars[v].first << " < " << f.vars[v].second
        << (f.candidate_var[v + 1] ? " candidate" : "") << '\n';
  out << "p cnf " << f.num_vars() << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

SynthResult synthesize(const System& s, const SynthOptions& options) {
  SynthResult result;
  EncodedSystem es(s, options.encode);
  result.stats.variables = es.vars().size();
  result.stats.rounds = 1;
  auto bad = options.bad ? options.bad(es) : bad_states(es, options.mode);
  auto attr = attractor(es, bad);
  result.stats.attractor_iterations = attr.iterations();
  result.stats.attractor_nodes = es.manager().node_count(attr.states);
  auto reach = reachable(es);
  result.stats.reach_iterations = reach.rings.size() - 1;

  FaultSet fs;
  try {
    fs = fault_transitions(es, attr, reach);
  } catch (const Unsynthesizable& e) {
    result.reason = "initial-in-attractor: " + std::string(e.what());
    return result;
  }
  result.cubes = candidate_cubes(es, fs);
  result.stats.cubes = result.cubes.size();
  Cnf f = build_cnf(result.cubes, s.priorities(), options.filter, options.cnf);
  result.stats.sat_vars = f.num_vars();
  result.stats.sat_clauses = f.clauses.size();
  auto solved = solve(f);
  result.cnf = f;

  if (solved.sat) {
    for (const auto& p : extract(solved.model, f))
      if (!s.priorities().count(p)) result.added.insert(p);
    PrioritySet all = s.priorities();
    all.insert(result.added.begin(), result.added.end());
    closure_and_validate(all);
    result.outcome = SynthResult::Outcome::Success;
    return result;
  }

  std::string why = f.unsat_reason ? *f.unsat_reason : "conflicting priority candidates";
  if (options.repush_depth == 0) {
    result.reason = "unsat: " + why;
    return result;
  }

  auto core = candidate_core(f);
  std::optional<Priority> pick;
  if (!core.empty()) {
    std::size_t cube = *f.origin[core.front()];
    for (auto i : core) cube = std::min(cube, *f.origin[i]);
    for (const auto& p : f.candidates[cube]) {
      PrioritySet trial = s.priorities();
      trial.insert(p);
      try {
        closure_and_validate(trial);
      } catch (const CircularPriorityError&) {
        continue;
      }
      pick = p;
      break;
    }
  }
  if (!pick) {
    result.reason = "unsat: " + why + "; nothing to repush";
    return result;
  }

  PrioritySet annotated = s.priorities();
  annotated.insert(*pick);
  SynthOptions next = options;
  next.repush_depth = options.repush_depth - 1;
  SynthResult inner = synthesize(s.with_priorities(annotated), next);
  inner.stats.rounds += 1;
  inner.repushed.insert(inner.repushed.begin(), *pick);
  if (inner.success()) inner.added.insert(*pick);
  return inner;
}

}  // namespace prisyn
