#include "prisyn/dfa.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace prisyn {

Dfa::Dfa(std::vector<std::string> states, std::vector<std::string> alphabet, std::size_t initial,
         std::set<std::size_t> accepting, std::vector<std::vector<std::size_t>> delta)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      initial_(initial),
      accepting_(std::move(accepting)),
      delta_(std::move(delta)) {
  if (states_.empty()) throw ModelError("automaton without states");
  if (initial_ >= states_.size()) throw ModelError("automaton initial state out of range");
  for (auto q : accepting_)
    if (q >= states_.size()) throw ModelError("automaton accepting state out of range");
  if (delta_.size() != states_.size()) throw ModelError("automaton transition table has the wrong size");
  for (const auto& row : delta_) {
    if (row.size() != alphabet_.size()) throw ModelError("automaton is not complete");
    for (auto q : row)
      if (q >= states_.size()) throw ModelError("automaton successor out of range");
  }
  std::set<std::string> seen(alphabet_.begin(), alphabet_.end());
  if (seen.size() != alphabet_.size()) throw ModelError("automaton alphabet has duplicates");
}

Dfa Dfa::universal(std::vector<std::string> alphabet) {
  std::vector<std::vector<std::size_t>> delta(1, std::vector<std::size_t>(alphabet.size(), 0));
  return Dfa({"all"}, std::move(alphabet), 0, {0}, std::move(delta));
}

Dfa Dfa::empty(std::vector<std::string> alphabet) {
  std::vector<std::vector<std::size_t>> delta(1, std::vector<std::size_t>(alphabet.size(), 0));
  return Dfa({"none"}, std::move(alphabet), 0, {}, std::move(delta));
}

std::optional<std::size_t> Dfa::letter_index(const std::string& l) const {
  for (std::size_t k = 0; k < alphabet_.size(); ++k)
    if (alphabet_[k] == l) return k;
  return std::nullopt;
}

std::size_t Dfa::run(const Word& w) const {
  std::size_t q = initial_;
  for (const auto& l : w)
    if (auto k = letter_index(l)) q = delta_[q][*k];
  return q;
}

Dfa Dfa::complement() const {
  std::set<std::size_t> acc;
  for (std::size_t q = 0; q < states_.size(); ++q)
    if (!accepting_.count(q)) acc.insert(q);
  return Dfa(states_, alphabet_, initial_, std::move(acc), delta_);
}

namespace {

struct DfaLexer {
  const std::string& text;
  std::size_t pos = 0, line = 1, col = 1;

  void skip() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#' || (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/')) {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
  bool at(const std::string& s) {
    skip();
    return text.compare(pos, s.size(), s) == 0;
  }
  void expect(const std::string& s) {
    if (!at(s)) fail("expected '" + s + "'");
    for (std::size_t k = 0; k < s.size(); ++k) advance();
  }
  bool ident_char(char c) const { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  bool at_ident() {
    skip();
    return pos < text.size() && ident_char(text[pos]);
  }
  std::string ident() {
    if (!at_ident()) fail("expected an identifier");
    std::string out;
    while (pos < text.size() && ident_char(text[pos])) {
      out += text[pos];
      advance();
    }
    return out;
  }
  std::vector<std::string> ident_list() {
    std::vector<std::string> out;
    while (at_ident()) out.push_back(ident());
    expect(";");
    return out;
  }
};

}  // namespace

Dfa parse_dfa(const std::string& text) {
  DfaLexer lx{text};
  if (lx.ident() != "dfa") lx.fail("expected 'dfa'");
  lx.expect("{");
  std::vector<std::string> states, alphabet, accept;
  std::string init;
  struct Edge {
    std::string from, label, to;
    std::size_t line, col;
  };
  std::vector<Edge> edges;
  while (!lx.at("}")) {
    std::size_t line = lx.line, col = lx.col;
    auto word = lx.ident();
    if (word == "states" && !lx.at("-")) {
      states = lx.ident_list();
    } else if (word == "alphabet" && !lx.at("-")) {
      alphabet = lx.ident_list();
    } else if (word == "init" && !lx.at("-")) {
      init = lx.ident();
      lx.expect(";");
    } else if (word == "accept" && !lx.at("-")) {
      accept = lx.ident_list();
    } else {
      lx.expect("-");
      auto label = lx.ident();
      lx.expect("->");
      auto to = lx.ident();
      lx.expect(";");
      edges.push_back({word, label, to, line, col});
    }
  }
  lx.expect("}");
  lx.skip();
  if (lx.pos != text.size()) lx.fail("trailing input after automaton");

  std::map<std::string, std::size_t> sid, lid;
  for (const auto& s : states)
    if (!sid.emplace(s, sid.size()).second) throw ModelError("duplicate automaton state " + s);
  for (const auto& l : alphabet)
    if (!lid.emplace(l, lid.size()).second) throw ModelError("duplicate automaton letter " + l);
  if (!sid.count(init)) throw ModelError("automaton init state " + init + " is not declared");
  std::set<std::size_t> acc;
  for (const auto& s : accept) {
    if (!sid.count(s)) throw ModelError("accepting state " + s + " is not declared");
    acc.insert(sid[s]);
  }
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> delta(states.size(), std::vector<std::size_t>(alphabet.size(), none));
  for (const auto& e : edges) {
    if (!sid.count(e.from)) throw ParseError("undeclared state " + e.from, e.line, e.col);
    if (!sid.count(e.to)) throw ParseError("undeclared state " + e.to, e.line, e.col);
    if (!lid.count(e.label)) throw ParseError("letter " + e.label + " is not in the alphabet", e.line, e.col);
    auto& slot = delta[sid[e.from]][lid[e.label]];
    if (slot != none && slot != sid[e.to])
      throw ParseError("nondeterministic transition on " + e.label + " from " + e.from, e.line, e.col);
    slot = sid[e.to];
  }
  bool incomplete = false;
  for (const auto& row : delta)
    for (auto q : row) incomplete |= q == none;
  if (incomplete) {
    std::string sink = "__sink";
    while (sid.count(sink)) sink += "_";
    const std::size_t s = states.size();
    states.push_back(sink);
    delta.emplace_back(alphabet.size(), s);
    for (auto& row : delta)
      for (auto& q : row)
        if (q == none) q = s;
  }
  return Dfa(std::move(states), std::move(alphabet), sid[init], std::move(acc), std::move(delta));
}

std::string print_dfa(const Dfa& d) {
  std::ostringstream out;
  out << "dfa {\n  states";
  for (const auto& s : d.states()) out << ' ' << s;
  out << ";\n  alphabet";
  for (const auto& l : d.alphabet()) out << ' ' << l;
  out << ";\n  init " << d.states()[d.initial()] << ";\n  accept";
  for (auto q : d.accepting()) out << ' ' << d.states()[q];
  out << ";\n";
  for (std::size_t q = 0; q < d.size(); ++q)
    for (std::size_t k = 0; k < d.alphabet().size(); ++k)
      out << "  " << d.states()[q] << " -" << d.alphabet()[k] << "-> " << d.states()[d.next(q, k)] << ";\n";
  out << "}\n";
  return out.str();
}

Component monitor_component(const Dfa& d, const std::string& name) {
  Component c;
  c.name = name;
  c.locations = d.states();
  c.initial_location = d.initial();
  for (std::size_t q = 0; q < d.size(); ++q)
    for (std::size_t k = 0; k < d.alphabet().size(); ++k) {
      Transition t;
      t.source = q;
      t.guard = Expr::constant(true);
      t.label = d.alphabet()[k];
      t.destination = d.next(q, k);
      c.transitions.push_back(std::move(t));
    }
  return c;
}

System product_with_monitors(const System& s, const std::vector<Dfa>& monitors, MonitorCombine combine,
                             const std::string& name_prefix) {
  std::vector<Component> comps = s.components();
  std::vector<std::size_t> index;
  for (std::size_t m = 0; m < monitors.size(); ++m) {
    for (const auto& l : monitors[m].alphabet())
      if (!s.find_interaction(l)) throw ModelError("monitor letter " + l + " is not an interaction of the system");
    index.push_back(comps.size());
    comps.push_back(monitor_component(monitors[m], name_prefix + std::to_string(m)));
  }
  auto risks = s.risks();
  if (!monitors.empty()) {
    if (combine == MonitorCombine::Any) {
      for (std::size_t m = 0; m < monitors.size(); ++m)
        for (auto q : monitors[m].accepting()) risks.push_back({{LocalConstraint{index[m], q, {}}}});
    } else {
      // one partial configuration per tuple of accepting states
      std::vector<std::vector<std::size_t>> acc;
      for (const auto& d : monitors) acc.emplace_back(d.accepting().begin(), d.accepting().end());
      bool any_empty = false;
      for (const auto& a : acc) any_empty |= a.empty();
      if (!any_empty) {
        std::vector<std::size_t> pick(acc.size(), 0);
        while (true) {
          PartialConfiguration pc;
          for (std::size_t m = 0; m < acc.size(); ++m) pc.constraints.push_back({index[m], acc[m][pick[m]], {}});
          risks.push_back(std::move(pc));
          std::size_t m = 0;
          while (m < acc.size() && ++pick[m] == acc[m].size()) pick[m++] = 0;
          if (m == acc.size()) break;
        }
      }
    }
  }
  return System(std::move(comps), s.alphabet(), s.priorities(), std::move(risks));
}

Component stutter_component(const std::string& name, const std::set<std::string>& letters) {
  Component c;
  c.name = name;
  c.locations = {"s"};
  for (const auto& l : letters) {
    Transition t;
    t.guard = Expr::constant(true);
    t.label = l;
    c.transitions.push_back(std::move(t));
  }
  return c;
}

}  // namespace prisyn
