#include "doctest.h"
#include "prisyn/generators.hpp"
#include "support.hpp"

using namespace prisyn;

TEST_CASE("philosophers") {
  CHECK(philosophers_text(5) == philosophers_text(5));
  System s = philosophers(2);
  CHECK(s.size() == 4);
  CHECK(s.alphabet().size() == 6);
  CHECK(s.component(0).name == "p1");
  CHECK(s.component(1).name == "f1");
  auto v = ExplicitEngine(s).verdict(SafetyMode::Deadlock);
  CHECK(v.kind == Verdict::Kind::Deadlock);
  for (std::size_t n : {3, 7}) {
    System p = philosophers(n);
    CHECK(p.size() == 2 * n);
    CHECK(p.alphabet().size() == 3 * n);
    CHECK(parse_system(print_system(p)).alphabet() == p.alphabet());
  }
  CHECK_THROWS(philosophers(1));
}

TEST_CASE("builtins parse") {
  for (const auto& name : builtin_names()) {
    std::string key = name == "phil-N" ? "phil-3" : name;
    auto text = builtin_text(key);
    REQUIRE(text);
    System s = parse_system(*text);
    CHECK(parse_system(print_system(s)) == s);
  }
  CHECK_FALSE(builtin_text("phil-x"));
  CHECK_FALSE(builtin_text("nothing"));
  CHECK(fig4().size() == 5);
  CHECK(fig4_sub().size() == 2);
  CHECK(dpu().size() == 5);
}

TEST_CASE("fixture shapes") {
  CHECK_FALSE(ExplicitEngine(fig2()).verdict(SafetyMode::Risk).safe());
  CHECK_FALSE(ExplicitEngine(fig3()).verdict(SafetyMode::Risk).safe());
  CHECK_FALSE(ExplicitEngine(dpu()).verdict(SafetyMode::Deadlock).safe());
  CHECK(fig6().priorities() == PrioritySet{{"b", "a"}});
}
