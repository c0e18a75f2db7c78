#include <random>

#include "doctest.h"
#include "prisyn/ag.hpp"
#include "prisyn/generators.hpp"
#include "support.hpp"

using namespace prisyn;
using testing::read_model_file;

namespace {

bool risk_free(const System& s, const Dfa& risk) {
  return !find_risk_word(product_with_monitors(s, {risk}, MonitorCombine::Any), EngineChoice::Explicit);
}

PrioritySet merged(const PrioritySet& a, const PrioritySet& b, const PrioritySet& c = {}) {
  PrioritySet out = a;
  out.insert(b.begin(), b.end());
  out.insert(c.begin(), c.end());
  return out;
}

AgResult run_toy(const std::string& name, const std::set<std::size_t>& first, AgProblem* out = nullptr) {
  System s = parse_system(read_model_file(name + ".sys"));
  Dfa r = parse_dfa(read_model_file(name + ".dfa"));
  AgProblem p = make_ag_problem(s, first, r);
  if (out) *out = p;
  return ag_synthesize(p);
}

using Set = std::vector<Configuration>;

Set step(const ExplicitEngine& e, const Set& from, InteractionId a) {
  Set out;
  for (const auto& c : from)
    if (e.is_enabled(c, a))
      for (auto& n : e.successors(c, a)) out.push_back(std::move(n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Every word of `whole` up to `depth` letters is a word of both sides.
std::size_t check_inclusion(const ExplicitEngine& whole, const ExplicitEngine& s1, const ExplicitEngine& s2,
                            const Set& x, const Set& x1, const Set& x2, std::size_t depth) {
  std::size_t words = 1;
  CHECK_FALSE(x1.empty());
  CHECK_FALSE(x2.empty());
  if (depth == 0) return words;
  for (InteractionId a = 0; a < whole.system().alphabet().size(); ++a) {
    Set y = step(whole, x, a);
    if (y.empty()) continue;
    words += check_inclusion(whole, s1, s2, y, step(s1, x1, a), step(s2, x2, a), depth - 1);
  }
  return words;
}

}  // namespace

TEST_CASE("toy suite") {
  AgProblem p = make_ag_problem(parse_system(read_model_file("ag-proved.sys")), {0},
                                parse_dfa(read_model_file("ag-proved.dfa")));
  auto proved = ag_synthesize(p);
  CHECK(proved.outcome == AgResult::Outcome::ProvedSafe);
  CHECK(risk_free(p.system, p.risk));
  CHECK(proved.conjecture_sizes == std::vector<std::size_t>{2, 3});

  auto local = run_toy("ag-local", {0}, &p);
  REQUIRE(local.outcome == AgResult::Outcome::Success);
  CHECK(local.p1 == PrioritySet{{"c", "d"}});
  CHECK(local.p2.empty());
  CHECK_FALSE(risk_free(p.system, p.risk));
  CHECK(risk_free(p.system.with_priorities(merged(p.system.priorities(), local.p1, local.p2)), p.risk));

  auto shared = run_toy("ag-shared", {0});
  CHECK(shared.outcome == AgResult::Outcome::Fail);
  CHECK(shared.reason.find("[s]") != std::string::npos);
  CHECK(to_string(shared.outcome) == "fail");
}

TEST_CASE("conjecture sizes grow") {
  for (const char* name : {"ag-proved", "ag-local", "ag-shared"}) {
    auto r = run_toy(name, {0});
    for (std::size_t k = 1; k < r.conjecture_sizes.size(); ++k)
      CHECK(r.conjecture_sizes[k] > r.conjecture_sizes[k - 1]);
  }
}

TEST_CASE("figure 6 priority is rejected") {
  System s = fig6();
  Dfa r = parse_dfa(read_model_file("fig6.dfa"));
  CHECK_THROWS_AS(make_ag_problem(s, {0}, r), IllegalPriority);
  CHECK_THROWS_AS(make_ag_problem(s, {1}, r), IllegalPriority);
}

TEST_CASE("figure 6 breaks composition when the priority is allowed") {
  System s = fig6();
  Dfa r = parse_dfa(read_model_file("fig6.dfa"));
  auto [s1, s2] = stuttered_sides(s, {0}, s.priorities(), s.priorities());
  const Word w{"b"};
  CHECK(ExplicitEngine(s).member(w));
  CHECK_FALSE(ExplicitEngine(s1).member(w));
  CHECK(ExplicitEngine(s2).member(w));

  // Both premises hold with A accepting everything, yet S reaches the risk.
  Dfa all = Dfa::universal(s.alphabet());
  CHECK_FALSE(find_risk_word(product_with_monitors(s1, {r, all}, MonitorCombine::All), EngineChoice::Explicit));
  CHECK_FALSE(find_risk_word(product_with_monitors(s2, {all.complement()}, MonitorCombine::Any), EngineChoice::Explicit));
  auto bad = find_risk_word(product_with_monitors(s, {r}, MonitorCombine::Any), EngineChoice::Explicit);
  REQUIRE(bad);
  CHECK(*bad == w);
}

TEST_CASE("composition inclusion on legal splits") {
  std::mt19937 rng(31);
  std::size_t words = 0;
  Dfa dummy = Dfa::empty({});
  for (int i = 0; i < 60; ++i) {
    System raw = testing::random_system(rng, testing::RandomShape{4, 3, 1, 4, true, false});
    if (raw.size() < 2) continue;
    std::set<std::size_t> first;
    for (std::size_t c = 0; c < raw.size(); ++c)
      if (rng() % 2) first.insert(c);
    if (first.empty() || first.size() == raw.size()) first = {0};
    auto split = split_alphabet(raw, first);
    PrioritySet legal;
    for (const auto& pr : raw.priorities())
      if (!split.shared.count(pr.second)) legal.insert(pr);
    System s = raw.with_priorities(legal);
    AgProblem p = make_ag_problem(s, first, dummy);
    ExplicitEngine e(s), e1(p.s1_plus), e2(p.s2_plus);
    words += check_inclusion(e, e1, e2, {e.initial()}, {e1.initial()}, {e2.initial()}, 6);
  }
  CHECK(words > 1000);
}

TEST_CASE("symbolic and explicit engines agree on the toys") {
  for (const char* name : {"ag-proved", "ag-local", "ag-shared"}) {
    System s = parse_system(read_model_file(std::string(name) + ".sys"));
    Dfa r = parse_dfa(read_model_file(std::string(name) + ".dfa"));
    AgProblem p = make_ag_problem(s, {0}, r);
    AgOptions sym;
    sym.engine = EngineChoice::Symbolic;
    auto a = ag_synthesize(p);
    auto b = ag_synthesize(p, sym);
    CHECK(a.outcome == b.outcome);
    CHECK(a.p1 == b.p1);
    CHECK(a.p2 == b.p2);
  }
}

TEST_CASE("bad splits") {
  System s = parse_system(read_model_file("ag-local.sys"));
  Dfa r = parse_dfa(read_model_file("ag-local.dfa"));
  CHECK_THROWS_AS(make_ag_problem(s, {}, r), ModelError);
  CHECK_THROWS_AS(make_ag_problem(s, {7}, r), ModelError);
  CHECK_THROWS_AS(make_ag_problem(s, {0}, parse_dfa("dfa { states q; alphabet zz; init q; }")), ModelError);
}
