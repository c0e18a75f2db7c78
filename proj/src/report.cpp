#include "prisyn/report.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace prisyn {

void RunReport::stat(const std::string& key, double value) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << value;
  stat(key, out.str());
}

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << command << ": " << outcome << '\n';
  if (!priorities.empty()) {
    out << "priorities:\n";
    for (const auto& p : priorities) out << "  " << p << '\n';
  }
  if (!stats.empty()) {
    out << "stats:\n";
    for (const auto& [k, v] : stats) out << "  " << k << ": " << v << '\n';
  }
  if (!trace.empty()) {
    out << "trace:\n";
    for (const auto& t : trace) out << "  " << t << '\n';
  }
  for (const auto& n : notes) out << "note: " << n << '\n';
  if (model.empty()) return out.str();
  std::ostringstream framed;
  framed << model;
  std::istringstream lines(out.str());
  for (std::string line; std::getline(lines, line);) framed << "# " << line << '\n';
  return framed.str();
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["outcome"] = outcome;
  j["priorities"] = priorities;
  nlohmann::ordered_json st = nlohmann::ordered_json::object();
  for (const auto& [k, v] : stats) st[k] = v;
  j["stats"] = st;
  j["trace"] = trace;
  j["notes"] = notes;
  if (!model.empty()) j["model"] = model;
  return j.dump(2) + "\n";
}

}  // namespace prisyn
