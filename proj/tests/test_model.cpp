#include <random>

#include "doctest.h"
#include "prisyn/model.hpp"
#include "support.hpp"

using namespace prisyn;

namespace {

const char* kCounter = R"(
system {
  interactions tick reset;
  component counter {
    locations idle busy;
    vars hi lo;
    init idle [lo=1];
    on tick from idle to busy when !hi set hi := lo, lo := !lo;
    on reset from busy to idle set hi := false, lo := false;
  }
  component clock {
    locations s;
    init s;
    on tick from s to s;
  }
  priority reset < tick;
  risk { counter@busy [hi=1] & clock@s }
}
)";

}  // namespace

TEST_CASE("expressions evaluate over bit valuations") {
  Expr e = Expr::disj(Expr::conj(Expr::var(0), Expr::negate(Expr::var(1))), Expr::constant(false));
  CHECK(e.eval(0b01));
  CHECK_FALSE(e.eval(0b11));
  CHECK(e.arity() == 2u);
  CHECK(Expr::constant(true).arity() == 0u);
  CHECK(e == Expr::disj(Expr::conj(Expr::var(0), Expr::negate(Expr::var(1))), Expr::constant(false)));
}

TEST_CASE("parser reads every construct") {
  System s = parse_system(kCounter);
  REQUIRE(s.size() == 2u);
  CHECK(s.alphabet() == std::vector<std::string>{"tick", "reset"});
  const auto& c = s.component(0);
  CHECK(c.variables == std::vector<std::string>{"hi", "lo"});
  CHECK(c.initial_valuation == std::vector<bool>{false, true});
  CHECK(c.initial_bits() == 0b10u);
  REQUIRE(c.transitions.size() == 2u);
  CHECK(c.transitions[0].guard.eval(0b00));
  CHECK_FALSE(c.transitions[0].guard.eval(0b01));
  CHECK(c.transitions[0].update[0].is_var(1));
  CHECK(s.priorities() == PrioritySet{{"reset", "tick"}});
  REQUIRE(s.risks().size() == 1u);
  CHECK(s.risks()[0].constraints.size() == 2u);
  CHECK(s.participants("tick") == std::vector<std::size_t>{0, 1});
  CHECK(s.find_component("clock") == 1u);
  CHECK_FALSE(s.find_interaction("nothing"));
  CHECK_THROWS_AS(s.interaction("nothing"), ModelError);
}

TEST_CASE("printing and parsing round-trips") {
  System s = parse_system(kCounter);
  CHECK(parse_system(print_system(s)) == s);
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    System r = testing::random_system(rng);
    CHECK(parse_system(print_system(r)) == r);
  }
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_system("system {\n  component c {\n    locations a;\n    init b;\n  }\n}\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4u);
  }
  CHECK_THROWS_AS(parse_system("system { component c { locations a; init a; on __x from a to a; } }"), ParseError);
  CHECK_THROWS_AS(parse_system("system { component c { locations a; init a; on t from a to a when y; } }"), ParseError);
  CHECK_THROWS_AS(parse_system("garbage"), ParseError);
}

TEST_CASE("structural invariants are enforced") {
  CHECK_THROWS_AS(parse_system("system { component c { locations a a; init a; } }"), ModelError);
  CHECK_THROWS_AS(parse_system("system { component c { locations a; } }"), ModelError);
  CHECK_THROWS_AS(parse_system("system { interactions t u; component c { locations a; init a; on t from a to a; } }"),
                  ModelError);
  CHECK_THROWS_AS(parse_system("system { interactions t; component c { locations a; init a; on u from a to a; } }"),
                  ModelError);
  CHECK_THROWS_AS(parse_system("system { component c { locations a; init a; on t from a to a; } priority t < q; }"),
                  ModelError);
  CHECK_THROWS_AS(parse_system("system { component c { locations a; init a; } component c { locations a; init a; } }"),
                  ModelError);
}

TEST_CASE("priority closure rejects cycles") {
  auto closed = closure_and_validate({{"a", "b"}, {"b", "c"}});
  CHECK(closed == PrioritySet{{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK_THROWS_AS(closure_and_validate({{"a", "b"}, {"b", "a"}}), CircularPriorityError);
  try {
    closure_and_validate({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  } catch (const CircularPriorityError& e) {
    CHECK(e.cycle().size() >= 2u);
  }
  CHECK_THROWS_AS(closure_and_validate({{"a", "a"}}), CircularPriorityError);
}

TEST_CASE("alphabet split") {
  System s = parse_system(kCounter);
  auto sp = split_alphabet(s, {0});
  CHECK(sp.first_only == std::set<std::string>{"reset"});
  CHECK(sp.shared == std::set<std::string>{"tick"});
  CHECK(sp.second_only.empty());
  CHECK_THROWS_AS(split_alphabet(s, {0, 1}), ModelError);
  auto all = split_alphabet_relaxed(s, {0, 1});
  CHECK(all.first_only == std::set<std::string>{"tick", "reset"});
  CHECK(all.shared.empty());
}
