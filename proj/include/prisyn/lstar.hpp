#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prisyn/dfa.hpp"

namespace prisyn {

class ConjectureLimit : public ModelError {
 public:
  using ModelError::ModelError;
};

// Angluin's observation table. Counterexamples are handled by adding every
// prefix to the prefix set.
class LStar {
 public:
  using Membership = std::function<bool(const Word&)>;

  LStar(std::vector<std::string> alphabet, Membership member);

  // Closes the table, makes it consistent and returns the hypothesis. Throws
  // std::logic_error if a refined hypothesis is not strictly larger than the
  // previous one.
  Dfa conjecture();
  void refine(const Word& counterexample);

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t queries() const { return queries_; }
  const std::vector<Word>& prefixes() const { return prefixes_; }
  const std::vector<Word>& suffixes() const { return suffixes_; }

 private:
  bool ask(const Word& w);
  std::vector<bool> row(const Word& s);
  bool close();
  bool make_consistent();

  std::vector<std::string> alphabet_;
  Membership member_;
  std::vector<Word> prefixes_;
  std::vector<Word> suffixes_;
  std::map<Word, bool> cache_;
  std::vector<std::size_t> sizes_;
  std::size_t queries_ = 0;
  bool refined_ = false;
};

struct Teacher {
  LStar::Membership member;
  // Counterexample, or nothing when the hypothesis is right.
  std::function<std::optional<Word>(const Dfa&)> equivalent;
};

// Runs to completion. Throws ConjectureLimit after `max_conjectures`.
Dfa lstar(const std::vector<std::string>& alphabet, const Teacher& teacher, std::size_t max_conjectures = 50,
          std::vector<std::size_t>* sizes = nullptr);

}  // namespace prisyn
