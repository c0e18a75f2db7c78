#include <random>

#include "doctest.h"
#include "prisyn/generators.hpp"
#include "support.hpp"

using namespace prisyn;
using namespace prisyn::testing;

TEST_CASE("dense encoding of philosophers uses 12N + 2 variables") {
  for (std::size_t n = 2; n <= 8; ++n)
    for (auto o : {Ordering::Declaration, Ordering::Force}) {
      EncodeOptions eo;
      eo.ordering = o;
      CHECK(allocate(philosophers(n), eo).size() == 12 * n + 2);
    }
}

TEST_CASE("declaration ordering keeps the component order") {
  EncodeOptions eo;
  eo.ordering = Ordering::Declaration;
  auto vm = allocate(philosophers(3), eo);
  CHECK(vm.component_order == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});
  CHECK(vm.names.size() == vm.size());
  CHECK(vm.unprimed().size() == vm.primed().size());
}

TEST_CASE("one-location variable-free components need no location bits") {
  System s = parse_system("system { component c { locations s; init s; on t from s to s; } }");
  CHECK(allocate(s).size() == 4u);  // stg and t, both primed
}

TEST_CASE("initial predicate is the initial configuration") {
  System s = philosophers(2);
  EncodedSystem es(s);
  ExplicitEngine e(s);
  auto& m = es.manager();
  auto init = m.exists(std::vector<bdd::Var>{es.vars().stg}, es.p_ini());
  std::vector<bdd::Var> sigma;
  for (auto v : es.vars().sigma)
    if (v != kNoVar) sigma.push_back(v);
  CHECK(m.exists(sigma, init) == es.configuration(e.initial()));
}

TEST_CASE("stats lists order and node counts") {
  EncodedSystem es(philosophers(2));
  auto st = es.stats();
  CHECK(st.find("variables 26") != std::string::npos);
  CHECK(st.find("nodes p_dead") != std::string::npos);
}

TEST_CASE("symbolic and explicit semantics agree on random systems") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 120; ++i) {
    System s = random_system(rng);
    CAPTURE(print_system(s));
    ExplicitEngine e(s);
    auto g = e.reach();
    for (auto o : {Ordering::Declaration, Ordering::Force}) {
      EncodeOptions eo;
      eo.ordering = o;
      EncodedSystem es(s, eo);
      REQUIRE(symbolic_configurations(es) == explicit_configurations(es, g));
      for (const auto& c : g.states) {
        auto sym = symbolic_enabled(es, c);
        std::vector<bool> expl(s.alphabet().size(), false);
        for (auto a : e.enabled(c)) expl[a] = true;
        REQUIRE(sym == expl);
      }
      for (auto mode : {SafetyMode::Deadlock, SafetyMode::Risk, SafetyMode::Both}) {
        auto sv = symbolic_verdict(es, mode);
        auto ev = e.verdict(mode);
        REQUIRE(sv.safe == ev.safe());
        if (!sv.safe) {
          CHECK(sv.word.size() == ev.trace.size());
          CHECK(e.member(sv.word));
        }
      }
      for (std::size_t k = 0; k < g.states.size(); ++k) CHECK(symbolic_member(es, g.trace_to(k)));
    }
  }
}

TEST_CASE("may-fire label: symbolic and explicit semantics agree") {
  std::mt19937 rng(99);
  for (int i = 0; i < 80; ++i) {
    System s = random_system(rng, RandomShape{4, 3, 0, 4, true, false});
    const std::string sharp = s.alphabet()[0];
    EngineOptions xo;
    xo.sharp_label = sharp;
    ExplicitEngine e(s, xo);
    auto g = e.reach();
    EncodeOptions eo;
    eo.sharp_label = sharp;
    EncodedSystem es(s, eo);
    CAPTURE(print_system(s));
    CHECK(es.vars().sigma[0] == kNoVar);
    REQUIRE(symbolic_configurations(es) == explicit_configurations(es, g));
    for (const auto& c : g.states) {
      auto sym = symbolic_enabled(es, c);
      std::vector<bool> expl(s.alphabet().size(), false);
      for (auto a : e.enabled(c)) expl[a] = true;
      CHECK(sym == expl);
    }
  }
}

TEST_CASE("the may-fire label cannot be looked up as an interaction variable") {
  System s = parse_system("system { interactions t m; component c { locations a; init a; on t from a to a; on m from a to a; } }");
  EncodeOptions eo;
  eo.sharp_label = "m";
  EncodedSystem es(s, eo);
  CHECK_THROWS_AS(es.interaction(s.interaction("m")), ModelError);
  CHECK(es.vars().size() == 4u);
}
