#include "prisyn/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace prisyn {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : ModelError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

std::string cycle_message(const std::vector<std::string>& cycle) {
  std::string msg = "circular priority:";
  for (const auto& s : cycle) msg += " " + s + " <";
  if (!cycle.empty()) msg += " " + cycle.front();
  return msg;
}

}  // namespace

CircularPriorityError::CircularPriorityError(std::vector<std::string> cycle)
    : ModelError(cycle_message(cycle)), cycle_(std::move(cycle)) {}

std::set<std::string> Component::alphabet() const {
  std::set<std::string> out;
  for (const auto& t : transitions) out.insert(t.label);
  return out;
}

std::optional<std::size_t> Component::location_index(const std::string& loc) const {
  auto it = std::find(locations.begin(), locations.end(), loc);
  if (it == locations.end()) return std::nullopt;
  return static_cast<std::size_t>(it - locations.begin());
}

std::optional<std::size_t> Component::variable_index(const std::string& var) const {
  auto it = std::find(variables.begin(), variables.end(), var);
  if (it == variables.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables.begin());
}

std::uint64_t Component::initial_bits() const {
  std::uint64_t bits = 0;
  for (std::size_t v = 0; v < initial_valuation.size(); ++v)
    if (initial_valuation[v]) bits |= std::uint64_t{1} << v;
  return bits;
}

namespace {

void validate_component(const Component& c) {
  if (c.name.empty()) throw ModelError("component with empty name");
  if (c.locations.empty()) throw ModelError("component " + c.name + " declares no locations");
  if (c.variables.size() > 64) throw ModelError("component " + c.name + " declares more than 64 variables");
  std::set<std::string> seen;
  for (const auto& l : c.locations)
    if (!seen.insert(l).second) throw ModelError("duplicate location " + l + " in component " + c.name);
  seen.clear();
  for (const auto& v : c.variables)
    if (!seen.insert(v).second) throw ModelError("duplicate variable " + v + " in component " + c.name);
  if (c.initial_location >= c.locations.size())
    throw ModelError("initial location of " + c.name + " is not declared");
  if (c.initial_valuation.size() != c.variables.size())
    throw ModelError("initial valuation of " + c.name + " does not cover every variable");
  for (const auto& t : c.transitions) {
    if (t.source >= c.locations.size() || t.destination >= c.locations.size())
      throw ModelError("transition " + t.label + " of " + c.name + " uses an undeclared location");
    if (t.label.empty()) throw ModelError("transition with empty label in " + c.name);
    if (t.guard.arity() > c.variables.size())
      throw ModelError("guard of " + t.label + " in " + c.name + " uses an undeclared variable");
    if (t.update.size() != c.variables.size())
      throw ModelError("update of " + t.label + " in " + c.name + " must assign every variable");
    for (const auto& u : t.update)
      if (u.arity() > c.variables.size())
        throw ModelError("update of " + t.label + " in " + c.name + " uses an undeclared variable");
  }
}

}  // namespace

System::System(std::vector<Component> components, std::vector<std::string> alphabet,
               PrioritySet priorities, std::vector<PartialConfiguration> risks)
    : components_(std::move(components)),
      alphabet_(std::move(alphabet)),
      priorities_(std::move(priorities)),
      risks_(std::move(risks)) {
  if (components_.empty()) throw ModelError("no components");
  std::set<std::string> names;
  for (const auto& c : components_) {
    validate_component(c);
    if (!names.insert(c.name).second) throw ModelError("duplicate component " + c.name);
  }

  if (alphabet_.empty()) {
    for (const auto& c : components_)
      for (const auto& t : c.transitions)
        if (label_index_.emplace(t.label, alphabet_.size()).second) alphabet_.push_back(t.label);
  } else {
    for (const auto& a : alphabet_)
      if (!label_index_.emplace(a, label_index_.size()).second) throw ModelError("duplicate interaction " + a);
    for (const auto& c : components_)
      for (const auto& t : c.transitions)
        if (!label_index_.count(t.label))
          throw ModelError("undeclared interaction " + t.label + " in component " + c.name);
  }

  participants_.assign(alphabet_.size(), {});
  for (std::size_t i = 0; i < components_.size(); ++i)
    for (const auto& label : components_[i].alphabet()) participants_[label_index_.at(label)].push_back(i);
  for (std::size_t a = 0; a < alphabet_.size(); ++a)
    if (participants_[a].empty()) throw ModelError("interaction " + alphabet_[a] + " has no participant");

  for (const auto& [low, high] : priorities_) {
    if (!label_index_.count(low)) throw ModelError("priority uses undeclared interaction " + low);
    if (!label_index_.count(high)) throw ModelError("priority uses undeclared interaction " + high);
  }
  closure_and_validate(priorities_);

  for (const auto& r : risks_) {
    if (r.constraints.empty()) throw ModelError("risk configuration constrains no component");
    for (const auto& lc : r.constraints) {
      if (lc.component >= components_.size()) throw ModelError("risk configuration names an unknown component");
      const auto& c = components_[lc.component];
      if (lc.location >= c.locations.size()) throw ModelError("risk configuration names an unknown location of " + c.name);
      for (const auto& [v, val] : lc.values) {
        (void)val;
        if (v >= c.variables.size()) throw ModelError("risk configuration names an unknown variable of " + c.name);
      }
    }
  }
}

std::optional<InteractionId> System::find_interaction(const std::string& label) const {
  auto it = label_index_.find(label);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

InteractionId System::interaction(const std::string& label) const {
  auto id = find_interaction(label);
  if (!id) throw ModelError("unknown interaction " + label);
  return *id;
}

std::optional<std::size_t> System::find_component(const std::string& name) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    if (components_[i].name == name) return i;
  return std::nullopt;
}

const std::vector<std::size_t>& System::participants(InteractionId id) const { return participants_.at(id); }

const std::vector<std::size_t>& System::participants(const std::string& label) const {
  return participants_[interaction(label)];
}

System System::with_priorities(PrioritySet priorities) const {
  return System(components_, alphabet_, std::move(priorities), risks_);
}

System System::with_risks(std::vector<PartialConfiguration> risks) const {
  return System(components_, alphabet_, priorities_, std::move(risks));
}

PrioritySet closure_and_validate(const PrioritySet& p) {
  std::map<std::string, std::set<std::string>> above;
  for (const auto& [low, high] : p) {
    above[low].insert(high);
    above[high];
  }

  // Cycle search first so the error can name one cycle.
  std::map<std::string, int> color;
  std::vector<std::string> stack;
  std::function<void(const std::string&)> dfs = [&](const std::string& u) {
    color[u] = 1;
    stack.push_back(u);
    for (const auto& v : above[u]) {
      if (color[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        throw CircularPriorityError(std::vector<std::string>(it, stack.end()));
      }
      if (color[v] == 0) dfs(v);
    }
    stack.pop_back();
    color[u] = 2;
  };
  for (const auto& [u, _] : above)
    if (color[u] == 0) dfs(u);

  PrioritySet out;
  for (const auto& [u, _] : above) {
    std::vector<std::string> todo(above[u].begin(), above[u].end());
    std::set<std::string> seen;
    while (!todo.empty()) {
      auto v = todo.back();
      todo.pop_back();
      if (!seen.insert(v).second) continue;
      out.emplace(u, v);
      for (const auto& w : above[v]) todo.push_back(w);
    }
  }
  return out;
}

AlphabetSplit split_alphabet_relaxed(const System& s, const std::set<std::size_t>& first) {
  for (auto i : first)
    if (i >= s.size()) throw ModelError("component index out of range in split");
  AlphabetSplit out;
  for (InteractionId a = 0; a < s.alphabet().size(); ++a) {
    bool in_first = false, in_second = false;
    for (auto i : s.participants(a)) (first.count(i) ? in_first : in_second) = true;
    const auto& label = s.alphabet()[a];
    if (in_first && in_second)
      out.shared.insert(label);
    else if (in_first)
      out.first_only.insert(label);
    else
      out.second_only.insert(label);
  }
  return out;
}

AlphabetSplit split_alphabet(const System& s, const std::set<std::size_t>& first) {
  if (first.empty()) throw ModelError("split: first component set is empty");
  if (first.size() >= s.size()) throw ModelError("split: first component set must be a strict subset");
  return split_alphabet_relaxed(s, first);
}

std::string print_system(const System& s) {
  std::ostringstream out;
  out << "system {\n";
  out << "  interactions";
  for (const auto& a : s.alphabet()) out << ' ' << a;
  out << ";\n";
  for (const auto& c : s.components()) {
    out << "  component " << c.name << " {\n";
    out << "    locations";
    for (const auto& l : c.locations) out << ' ' << l;
    out << ";\n";
    if (!c.variables.empty()) {
      out << "    vars";
      for (const auto& v : c.variables) out << ' ' << v;
      out << ";\n";
    }
    out << "    init " << c.locations[c.initial_location];
    if (!c.variables.empty()) {
      out << " [";
      for (std::size_t v = 0; v < c.variables.size(); ++v)
        out << (v ? " " : "") << c.variables[v] << '=' << (c.initial_valuation[v] ? 1 : 0);
      out << ']';
    }
    out << ";\n";
    for (const auto& t : c.transitions) {
      out << "    on " << t.label << " from " << c.locations[t.source] << " to " << c.locations[t.destination];
      if (!t.guard.is_true()) out << " when " << t.guard.to_string(c.variables);
      bool first = true;
      for (std::size_t v = 0; v < t.update.size(); ++v) {
        if (t.update[v].is_var(v)) continue;
        out << (first ? " set " : ", ") << c.variables[v] << " := " << t.update[v].to_string(c.variables);
        first = false;
      }
      out << ";\n";
    }
    out << "  }\n";
  }
  for (const auto& [low, high] : s.priorities()) out << "  priority " << low << " < " << high << ";\n";
  for (const auto& r : s.risks()) {
    out << "  risk { ";
    for (std::size_t k = 0; k < r.constraints.size(); ++k) {
      const auto& lc = r.constraints[k];
      const auto& c = s.component(lc.component);
      out << (k ? " & " : "") << c.name << '@' << c.locations[lc.location];
      if (!lc.values.empty()) {
        out << " [";
        for (std::size_t j = 0; j < lc.values.size(); ++j)
          out << (j ? " " : "") << c.variables[lc.values[j].first] << '=' << (lc.values[j].second ? 1 : 0);
        out << ']';
      }
    }
    out << " }\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace prisyn
