#pragma once

#include <set>
#include <string>
#include <vector>

#include "prisyn/model.hpp"

namespace prisyn {

using Word = std::vector<std::string>;

// Complete deterministic automaton. delta[q][k] is the successor of state q
// on alphabet()[k].
class Dfa {
 public:
  Dfa(std::vector<std::string> states, std::vector<std::string> alphabet, std::size_t initial,
      std::set<std::size_t> accepting, std::vector<std::vector<std::size_t>> delta);

  // One state with self-loops, accepting or not.
  static Dfa universal(std::vector<std::string> alphabet);
  static Dfa empty(std::vector<std::string> alphabet);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  std::size_t initial() const { return initial_; }
  const std::set<std::size_t>& accepting() const { return accepting_; }
  bool is_accepting(std::size_t q) const { return accepting_.count(q) > 0; }
  std::size_t next(std::size_t q, std::size_t letter) const { return delta_.at(q).at(letter); }
  std::optional<std::size_t> letter_index(const std::string& l) const;

  // Letters outside the alphabet are invisible (the state does not change).
  std::size_t run(const Word& w) const;
  bool accepts(const Word& w) const { return is_accepting(run(w)); }

  Dfa complement() const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::size_t initial_;
  std::set<std::size_t> accepting_;
  std::vector<std::vector<std::size_t>> delta_;
};

// Missing transitions go to a fresh non-accepting sink.
Dfa parse_dfa(const std::string& text);
std::string print_dfa(const Dfa& d);

// Variable-free component tracking the automaton; it never blocks a letter of
// its (complete) alphabet.
Component monitor_component(const Dfa& d, const std::string& name);

enum class MonitorCombine {
  All,  // risk when every monitor accepts (intersection)
  Any,  // risk when some monitor accepts
};

// Appends one monitor component per automaton and extends the risk list.
// Priorities are kept as they are.
System product_with_monitors(const System& s, const std::vector<Dfa>& monitors, MonitorCombine combine,
                             const std::string& name_prefix = "__monitor");

// Single location, one self-loop per letter.
Component stutter_component(const std::string& name, const std::set<std::string>& letters);

}  // namespace prisyn
