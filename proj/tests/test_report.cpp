#include "doctest.h"
#include "json.hpp"
#include "prisyn/report.hpp"
#include "support.hpp"

using namespace prisyn;

namespace {

RunReport sample() {
  RunReport r;
  r.command = "synth";
  r.outcome = "success";
  r.priorities = {"a < b", "c < d [repushed]"};
  r.stat("variables", std::size_t{12});
  r.stat("wall", 0.25);
  r.trace = {"1: a"};
  r.notes = {"post-verification skipped"};
  return r;
}

}  // namespace

TEST_CASE("text and json carry the same facts") {
  RunReport r = sample();
  auto text = r.to_text();
  auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["command"] == "synth");
  CHECK(j["outcome"] == "success");
  CHECK(j["stats"]["wall"] == "0.250");
  for (const auto& p : r.priorities) {
    CHECK(text.find(p) != std::string::npos);
    CHECK(std::find(j["priorities"].begin(), j["priorities"].end(), p) != j["priorities"].end());
  }
  for (const auto& [k, v] : r.stats) {
    CHECK(text.find(k + ": " + v) != std::string::npos);
    CHECK(j["stats"][k] == v);
  }
  CHECK(text.find("note: post-verification skipped") != std::string::npos);
  CHECK_FALSE(j.contains("model"));
}

TEST_CASE("text output with a model still parses") {
  RunReport r = sample();
  r.model = print_system(parse_system("system { component c { locations l; init l; on a from l to l; } }"));
  auto text = r.to_text();
  CHECK(text.find("# synth: success") != std::string::npos);
  CHECK(parse_system(text).size() == 1);
  CHECK(nlohmann::json::parse(r.to_json())["model"] == r.model);
}
