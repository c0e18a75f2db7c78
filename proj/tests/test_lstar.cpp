#include <random>

#include "doctest.h"
#include "prisyn/lstar.hpp"
#include "support.hpp"

using namespace prisyn;

TEST_CASE("learns random targets") {
  std::mt19937 rng(8);
  std::vector<std::string> letters{"a", "b", "c"};
  for (int i = 0; i < 80; ++i) {
    Dfa target = testing::random_dfa(rng, letters, 4);
    Teacher t{[&](const Word& w) { return target.accepts(w); },
              [&](const Dfa& h) { return testing::dfa_difference(h, target); }};
    std::vector<std::size_t> sizes;
    Dfa h = lstar(letters, t, 50, &sizes);
    CHECK_FALSE(testing::dfa_difference(h, target));
    REQUIRE_FALSE(sizes.empty());
    for (std::size_t k = 1; k < sizes.size(); ++k) CHECK(sizes[k] > sizes[k - 1]);
    CHECK(h.size() <= target.size());  // hypotheses are minimal
  }
}

TEST_CASE("first conjecture of the empty language") {
  LStar l({"a"}, [](const Word&) { return false; });
  Dfa h = l.conjecture();
  CHECK(h.size() == 1);
  CHECK(h.accepting().empty());
  CHECK(l.queries() >= 2);
}

TEST_CASE("conjecture limit") {
  Teacher t{[](const Word& w) { return w.size() == 7; }, [](const Dfa& h) -> std::optional<Word> {
              Word w(7, "a");
              if (h.accepts(w)) return std::nullopt;
              return w;
            }};
  CHECK_THROWS_AS(lstar({"a"}, t, 1), ConjectureLimit);
  CHECK_NOTHROW(lstar({"a"}, t, 10));
}
