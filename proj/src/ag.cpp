#include "prisyn/ag.hpp"

namespace prisyn {

IllegalPriority::IllegalPriority(const Priority& p)
    : ModelError("priority " + p.first + " < " + p.second + " has the shared interaction " + p.second +
                 " as its higher element; the assume-guarantee rule is unsound for such inputs (a shared "
                 "interaction can block in a subsystem yet fail to block once it must be paired)"),
      priority_(p) {}

namespace {

PrioritySet restrict_high(const PrioritySet& p, const std::set<std::string>& high) {
  PrioritySet out;
  for (const auto& pr : p)
    if (high.count(pr.second)) out.insert(pr);
  return out;
}

System side(const System& s, const std::set<std::size_t>& members, const std::string& stutter_name,
            const std::set<std::string>& stutter_letters, const PrioritySet& priorities) {
  std::vector<Component> comps;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (members.count(i)) comps.push_back(s.component(i));
  comps.push_back(stutter_component(stutter_name, stutter_letters));
  return System(std::move(comps), s.alphabet(), priorities, {});
}

PrioritySet with(PrioritySet a, const PrioritySet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

std::vector<std::string> names_of(const System& s, const std::vector<InteractionId>& ids) {
  std::vector<std::string> w;
  for (auto id : ids) w.push_back(s.alphabet()[id]);
  return w;
}

}  // namespace

AgProblem make_ag_problem(const System& s, const std::set<std::size_t>& first, const Dfa& risk) {
  if (first.empty()) throw ModelError("the first side of the split is empty");
  for (auto i : first)
    if (i >= s.size()) throw ModelError("split names an unknown component index");
  for (const auto& l : risk.alphabet())
    if (!s.find_interaction(l)) throw ModelError("risk automaton letter " + l + " is not an interaction");
  auto split = split_alphabet_relaxed(s, first);
  for (const auto& p : s.priorities())
    if (split.shared.count(p.second)) throw IllegalPriority(p);
  auto [s1, s2] = stuttered_sides(s, first, restrict_high(s.priorities(), split.first_only),
                                  restrict_high(s.priorities(), split.second_only));
  return AgProblem{s, first, risk, split, std::move(s1), std::move(s2)};
}

std::pair<System, System> stuttered_sides(const System& s, const std::set<std::size_t>& first, const PrioritySet& p1,
                                          const PrioritySet& p2) {
  auto split = split_alphabet_relaxed(s, first);
  std::set<std::size_t> second;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!first.count(i)) second.insert(i);
  return {side(s, first, "__d1", split.second_only, p1), side(s, second, "__d2", split.first_only, p2)};
}

std::optional<Word> find_risk_word(const System& s, EngineChoice engine, std::size_t budget) {
  if (engine != EngineChoice::Symbolic) {
    try {
      ExplicitEngine e(s, EngineOptions{budget, std::nullopt});
      auto v = e.verdict(SafetyMode::Risk);
      if (v.safe()) return std::nullopt;
      Word w;
      for (const auto& step : v.trace) w.push_back(s.alphabet()[step.label]);
      return w;
    } catch (const BudgetExceeded&) {
      if (engine == EngineChoice::Explicit) throw;
    }
  }
  EncodedSystem es(s);
  auto reach = reachable(es);
  if ((reach.states & es.p_risk()).is_false()) return std::nullopt;
  return names_of(s, extract_trace(es, reach, es.p_risk()));
}

bool language_member(const System& s, const Word& w, EngineChoice engine) {
  if (engine != EngineChoice::Symbolic) return ExplicitEngine(s).member(w);
  std::vector<InteractionId> ids;
  for (const auto& l : w) {
    auto id = s.find_interaction(l);
    if (!id) return false;
    ids.push_back(*id);
  }
  EncodedSystem es(s);
  return symbolic_member(es, ids);
}

System condition_a_system(const AgProblem& p, const Dfa& a, const PrioritySet& p1) {
  System s1 = p.s1_plus.with_priorities(with(p.s1_plus.priorities(), p1));
  return product_with_monitors(s1, {p.risk, a}, MonitorCombine::All);
}

System condition_b_system(const AgProblem& p, const Dfa& a, const PrioritySet& p2) {
  System s2 = p.s2_plus.with_priorities(with(p.s2_plus.priorities(), p2));
  return product_with_monitors(s2, {a.complement()}, MonitorCombine::Any);
}

EquivalenceResult equivalence_check(const AgProblem& p, const Dfa& a, const PrioritySet& p1, const PrioritySet& p2,
                                    EngineChoice engine) {
  if (auto ce = find_risk_word(condition_a_system(p, a, p1), engine)) {
    System s2 = p.s2_plus.with_priorities(with(p.s2_plus.priorities(), p2));
    if (language_member(s2, *ce, engine)) return {EquivalenceResult::Kind::Fail, *ce};
    return {EquivalenceResult::Kind::CounterexampleA, *ce};
  }
  if (auto ce = find_risk_word(condition_b_system(p, a, p2), engine))
    return {EquivalenceResult::Kind::CounterexampleB, *ce};
  return {};
}

namespace {

// Fault cubes of one side, or nothing when the initial state is already lost.
std::optional<std::vector<FaultCube>> side_cubes(const System& s, Ordering ordering) {
  EncodeOptions eo;
  eo.ordering = ordering;
  EncodedSystem es(s, eo);
  auto attr = attractor(es, es.p_risk());
  auto reach = reachable(es);
  try {
    return candidate_cubes(es, fault_transitions(es, attr, reach));
  } catch (const Unsynthesizable&) {
    return std::nullopt;
  }
}

}  // namespace

AgResult ag_synthesize(const AgProblem& p, const AgOptions& options) {
  AgResult result;
  const System& s2 = p.s2_plus;
  const auto engine = options.engine;
  LStar learner(p.system.alphabet(), [&](const Word& w) { return language_member(s2, w, engine); });

  std::set<std::string> side1 = p.split.first_only, side2 = p.split.second_only;
  std::set<std::string> low1 = side1, low2 = side2;
  low1.insert(p.split.shared.begin(), p.split.shared.end());
  low2.insert(p.split.shared.begin(), p.split.shared.end());

  for (std::size_t round = 0; round < options.max_conjectures; ++round) {
    Dfa a = learner.conjecture();
    result.conjecture_sizes = learner.sizes();
    result.assumption = a;
    result.membership_queries = learner.queries();
    auto check = equivalence_check(p, a, {}, {}, engine);
    if (check.kind == EquivalenceResult::Kind::BothHold) {
      result.outcome = AgResult::Outcome::ProvedSafe;
      return result;
    }

    auto c1 = side_cubes(condition_a_system(p, a), options.ordering);
    auto c2 = side_cubes(condition_b_system(p, a), options.ordering);
    if (c1 && c2) {
      CandidateFilter f1 = [&](const Priority& pr) { return low1.count(pr.first) && side1.count(pr.second); };
      CandidateFilter f2 = [&](const Priority& pr) { return low2.count(pr.first) && side2.count(pr.second); };
      Cnf f = build_cnf({CubeGroup{*c1, f1}, CubeGroup{*c2, f2}}, p.system.priorities());
      auto solved = solve(f);
      if (solved.sat) {
        for (const auto& pr : extract(solved.model, f)) {
          if (p.system.priorities().count(pr)) continue;
          (side1.count(pr.second) ? result.p1 : result.p2).insert(pr);
        }
        result.outcome = AgResult::Outcome::Success;
        return result;
      }
    }

    if (check.kind == EquivalenceResult::Kind::Fail) {
      // While A still misses part of L(S2+) the learner has work left, and
      // the synthesis attempt above may succeed on a later conjecture.
      if (auto ce = find_risk_word(condition_b_system(p, a), engine)) {
        learner.refine(*ce);
        continue;
      }
      std::string w;
      for (const auto& l : check.word) w += (w.empty() ? "" : " ") + l;
      result.reason = "counterexample [" + w + "] is a behaviour of both sides; no local priorities exist for "
                      "this split, try a different decomposition";
      return result;
    }
    learner.refine(check.word);
  }
  result.reason = "no assumption found within " + std::to_string(options.max_conjectures) + " conjectures";
  return result;
}

std::string to_string(AgResult::Outcome o) {
  switch (o) {
    case AgResult::Outcome::ProvedSafe: return "proved-safe";
    case AgResult::Outcome::Success: return "success";
    case AgResult::Outcome::Fail: return "fail";
  }
  return {};
}

}  // namespace prisyn
