#include <random>

#include "doctest.h"
#include "support.hpp"

using namespace prisyn;

namespace {

const char* kEven = R"(dfa {
  states even odd;
  alphabet a b;
  init even;
  accept even;
  even -a-> odd;
  odd -a-> even;
  even -b-> even;
  odd -b-> odd;
})";

}  // namespace

TEST_CASE("parse and print") {
  Dfa d = parse_dfa(kEven);
  CHECK(d.size() == 2);
  CHECK(d.accepts({}));
  CHECK_FALSE(d.accepts({"a", "b"}));
  CHECK(d.accepts({"a", "b", "a"}));
  CHECK(d.accepts({"z"}));  // invisible letter
  CHECK(parse_dfa(print_dfa(d)) == d);
}

TEST_CASE("missing edges go to a sink") {
  Dfa d = parse_dfa("dfa { states q0 q1; alphabet a b; init q0; accept q1; q0 -b-> q1; }");
  CHECK(d.size() == 3);
  CHECK(d.accepts({"b"}));
  CHECK_FALSE(d.accepts({"b", "b"}));
  CHECK_FALSE(d.accepts({"a", "b"}));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(parse_dfa("dfa { states q r; alphabet a; init q; q -a-> q; q -a-> r; }"), ParseError);
  CHECK_THROWS_AS(parse_dfa("dfa { states q; alphabet a; init q; q -b-> q; }"), ParseError);
  CHECK_THROWS_AS(parse_dfa("dfa { states q; alphabet a; init r; }"), ModelError);
  CHECK_THROWS_AS(parse_dfa("dfa { states q"), ParseError);
}

TEST_CASE("complement") {
  std::mt19937 rng(4);
  std::vector<std::string> letters{"a", "b", "c"};
  for (int i = 0; i < 50; ++i) {
    Dfa d = testing::random_dfa(rng, letters);
    Dfa c = d.complement();
    CHECK(c.complement() == d);
    for (int k = 0; k < 20; ++k) {
      Word w;
      for (std::size_t n = rng() % 6; n > 0; --n) w.push_back(letters[rng() % 3]);
      CHECK(d.accepts(w) != c.accepts(w));
    }
  }
}

TEST_CASE("monitor product flags exactly the accepted words") {
  System s = parse_system(R"(system {
    component c { locations l; init l; on a from l to l; on b from l to l; }
  })");
  Dfa even = parse_dfa(kEven);
  System any = product_with_monitors(s, {even.complement()}, MonitorCombine::Any);
  ExplicitEngine e(any);
  auto v = e.verdict(SafetyMode::Risk);
  CHECK(v.kind == Verdict::Kind::Risk);
  CHECK(v.trace.size() == 1);
  CHECK(any.alphabet() == s.alphabet());

  Dfa only_b = parse_dfa("dfa { states q0 q1; alphabet a b; init q0; accept q1; q0 -b-> q1; }");
  System both = product_with_monitors(s, {even, only_b}, MonitorCombine::All);
  auto v2 = ExplicitEngine(both).verdict(SafetyMode::Risk);
  REQUIRE(v2.kind == Verdict::Kind::Risk);
  CHECK(v2.trace.size() == 1);
  CHECK(both.alphabet()[v2.trace[0].label] == "b");

  Dfa bad = parse_dfa("dfa { states q; alphabet z; init q; accept q; }");
  CHECK_THROWS_AS(product_with_monitors(s, {bad}, MonitorCombine::Any), ModelError);
}

TEST_CASE("stutter component never blocks") {
  auto c = stutter_component("d", {"a", "b"});
  System s({c}, {"a", "b"}, {}, {});
  ExplicitEngine e(s);
  CHECK(e.enabled(e.initial()).size() == 2);
}
