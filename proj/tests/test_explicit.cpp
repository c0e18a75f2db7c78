#include "doctest.h"
#include "prisyn/explicit_engine.hpp"
#include "prisyn/generators.hpp"

using namespace prisyn;

TEST_CASE("philosophers(2) deadlocks after both take their left fork") {
  ExplicitEngine e(philosophers(2));
  auto g = e.reach();
  CHECK(g.states.size() == 6u);
  auto v = e.verdict(SafetyMode::Deadlock);
  REQUIRE(v.kind == Verdict::Kind::Deadlock);
  REQUIRE(v.trace.size() == 2u);
  CHECK(e.system().alphabet()[v.trace[0].label] == "take_left_1");
  CHECK(e.describe(v.trace.back().after) == "p1@hasLeft f1@used p2@hasLeft f2@used");
  CHECK(e.format_trace(v).find("take_left_2  ->  ") != std::string::npos);
}

TEST_CASE("priorities block only while the higher interaction is enabled") {
  System s = parse_system(R"(system {
    component c { locations a b; init a; on x from a to b; on y from a to a; on z from b to b; }
    priority y < x;
  })");
  ExplicitEngine e(s);
  auto c0 = e.initial();
  CHECK(e.jointly_enabled(c0) == std::vector<bool>{true, true, false});
  CHECK(e.enabled(c0) == std::vector<InteractionId>{0});
  CHECK(e.member(std::vector<std::string>{"x", "z"}));
  CHECK_FALSE(e.member(std::vector<std::string>{"y"}));
}

TEST_CASE("joint participation and guarded updates") {
  System s = parse_system(R"(system {
    component p { locations a b; vars v; init a; on go from a to b when !v set v := !v; on flip from b to a; }
    component q { locations m; init m; on go from m to m; }
    risk { p@a [v=1] }
  })");
  ExplicitEngine e(s);
  auto v = e.verdict(SafetyMode::Risk);
  REQUIRE(v.kind == Verdict::Kind::Risk);
  CHECK(v.trace.size() == 2u);
  CHECK(e.is_risk(v.trace.back().after));
  CHECK(e.verdict(SafetyMode::Deadlock).kind == Verdict::Kind::Deadlock);
}

TEST_CASE("may-fire label moves any nonempty subset of its offerers") {
  System s = parse_system(R"(system {
    interactions t m;
    component a { locations a0 a1; init a0; on m from a0 to a1; }
    component b { locations b0 b1; init b0; on m from b0 to b1; }
    component c { locations c0; init c0; on t from c0 to c0; }
  })");
  ExplicitEngine plain(s);
  EngineOptions o;
  o.sharp_label = "m";
  ExplicitEngine sharp(s, o);
  auto id = s.interaction("m");
  CHECK(plain.successors(plain.initial(), id).size() == 1u);
  CHECK(sharp.successors(sharp.initial(), id).size() == 3u);
}

TEST_CASE("budget is enforced") {
  ExplicitEngine e(philosophers(4), EngineOptions{10, std::nullopt});
  CHECK_THROWS_AS(e.reach(), BudgetExceeded);
}

TEST_CASE("reach graph parents give shortest traces") {
  ExplicitEngine e(philosophers(3));
  auto g = e.reach();
  for (std::size_t s = 0; s < g.states.size(); ++s) {
    auto w = g.trace_to(s);
    CHECK(e.member(w));
  }
}
