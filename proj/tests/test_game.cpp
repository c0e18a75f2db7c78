#include <algorithm>
#include <random>

#include "doctest.h"
#include "prisyn/generators.hpp"
#include "prisyn/resolver.hpp"
#include "support.hpp"

using namespace prisyn;
using namespace prisyn::testing;

namespace {

std::vector<FaultCube> cubes_of(const System& s, SafetyMode mode) {
  EncodedSystem es(s);
  auto attr = attractor(es, bad_states(es, mode));
  return candidate_cubes(es, fault_transitions(es, attr, reachable(es)));
}

}  // namespace

TEST_CASE("fig2 has three fault cubes") {
  auto cubes = cubes_of(fig2(), SafetyMode::Risk);
  std::vector<FaultCube> expected{
      {{"a", "b", "c", "g"}, "a"},
      {{"a", "b"}, "b"},
      {{"a", "b", "c", "g"}, "g"},
  };
  CHECK(cubes == expected);
}

TEST_CASE("alternating and naive attractors coincide") {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    System s = random_system(rng);
    EncodedSystem es(s);
    for (auto mode : {SafetyMode::Deadlock, SafetyMode::Risk, SafetyMode::Both}) {
      auto bad = bad_states(es, mode);
      auto a = attractor(es, bad);
      CHECK(a.states == attractor_naive(es, bad).states);
      CHECK(a.frontiers.front() == bad);
      CHECK(a.frontiers.back() == a.states);
    }
  }
}

TEST_CASE("fault edges leave reachable non-attractor states and enter the attractor") {
  std::mt19937 rng(6);
  for (int i = 0; i < 100; ++i) {
    System s = random_system(rng);
    EncodedSystem es(s);
    auto& m = es.manager();
    auto attr = attractor(es, bad_states(es, SafetyMode::Both));
    auto reach = reachable(es);
    if (!(es.p_ini() & attr.states).is_false()) {
      CHECK_THROWS_AS(fault_transitions(es, attr, reach), Unsynthesizable);
      continue;
    }
    auto fs = fault_transitions(es, attr, reach);
    auto sources = m.exists(es.primed_cube(), fs.edges);
    auto targets = es.unprime(m.exists(es.unprimed_cube(), fs.edges));
    CHECK(sources.implies(reach.states & ~attr.states));
    CHECK(targets.implies(attr.states));
  }
}

TEST_CASE("initial deadlock is unsynthesizable") {
  System s = parse_system("system { component c { locations a b; init b; on t from a to a; } }");
  EncodedSystem es(s);
  auto attr = attractor(es, bad_states(es, SafetyMode::Deadlock));
  CHECK_THROWS_AS(fault_transitions(es, attr, reachable(es)), Unsynthesizable);
}

TEST_CASE("repushing fig3 puts c2 into the attractor") {
  System s = fig3();
  auto c2 = [](const System& sys, const EncodedSystem& es) {
    ExplicitEngine e(sys);
    Configuration c = e.initial();
    c.locations[0] = static_cast<std::uint32_t>(*sys.component(0).location_index("c2"));
    return es.configuration(c) & es.manager().var(es.vars().stg);
  };
  {
    EncodedSystem es(s);
    auto attr = attractor(es, bad_states(es, SafetyMode::Risk));
    CHECK((attr.states & c2(s, es)).is_false());
  }
  System pushed = s.with_priorities({{"a", "b"}});
  EncodedSystem es(pushed);
  auto attr = attractor(es, bad_states(es, SafetyMode::Risk));
  CHECK(c2(pushed, es).implies(attr.states));
}

TEST_CASE("traces replay on the encoding") {
  System s = philosophers(3);
  EncodedSystem es(s);
  auto reach = reachable(es);
  auto w = extract_trace(es, reach, es.p_dead());
  ExplicitEngine e(s);
  auto configs = replay(es, w);
  REQUIRE(configs.size() == w.size());
  REQUIRE_FALSE(w.empty());
  auto first = e.successors(e.initial(), w[0]);
  CHECK(std::find(first.begin(), first.end(), configs.front()) != first.end());
  CHECK(e.enabled(configs.back()).empty());
  CHECK_THROWS_AS(extract_trace(es, reach, es.manager().constant(false)), ModelError);
}
