#pragma once

#include <string>
#include <utility>
#include <vector>

namespace prisyn {

// One run of a CLI command. Both renderings are produced from these fields
// only, so they always carry the same facts.
struct RunReport {
  std::string command;
  std::string outcome;
  std::vector<std::string> priorities;                       // "low < high", with optional side tag
  std::vector<std::pair<std::string, std::string>> stats;    // ordered key/value pairs
  std::vector<std::string> trace;                            // formatted steps
  std::vector<std::string> notes;
  std::string model;  // synthesized model document, when there is one

  void stat(const std::string& key, const std::string& value) { stats.emplace_back(key, value); }
  void stat(const std::string& key, std::size_t value) { stat(key, std::to_string(value)); }
  void stat(const std::string& key, double value);

  // With a model, the report follows it as comment lines so the output still
  // parses as a model.
  std::string to_text() const;
  std::string to_json() const;
};

}  // namespace prisyn
