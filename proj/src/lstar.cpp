#include "prisyn/lstar.hpp"

#include <algorithm>
#include <stdexcept>

namespace prisyn {

namespace {

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word extend(const Word& a, const std::string& l) {
  Word w = a;
  w.push_back(l);
  return w;
}

}  // namespace

LStar::LStar(std::vector<std::string> alphabet, Membership member)
    : alphabet_(std::move(alphabet)), member_(std::move(member)), prefixes_{Word{}}, suffixes_{Word{}} {}

bool LStar::ask(const Word& w) {
  auto it = cache_.find(w);
  if (it != cache_.end()) return it->second;
  ++queries_;
  bool v = member_(w);
  cache_.emplace(w, v);
  return v;
}

std::vector<bool> LStar::row(const Word& s) {
  std::vector<bool> r;
  r.reserve(suffixes_.size());
  for (const auto& e : suffixes_) r.push_back(ask(concat(s, e)));
  return r;
}

bool LStar::close() {
  std::vector<std::vector<bool>> rows;
  for (const auto& s : prefixes_) rows.push_back(row(s));
  for (std::size_t i = 0; i < prefixes_.size(); ++i)
    for (const auto& l : alphabet_) {
      auto w = extend(prefixes_[i], l);
      auto r = row(w);
      if (std::find(rows.begin(), rows.end(), r) == rows.end()) {
        prefixes_.push_back(std::move(w));
        return false;
      }
    }
  return true;
}

bool LStar::make_consistent() {
  for (std::size_t i = 0; i < prefixes_.size(); ++i)
    for (std::size_t j = i + 1; j < prefixes_.size(); ++j) {
      if (row(prefixes_[i]) != row(prefixes_[j])) continue;
      for (const auto& l : alphabet_)
        for (const auto& e : suffixes_) {
          auto e2 = concat(Word{l}, e);
          if (ask(concat(prefixes_[i], e2)) != ask(concat(prefixes_[j], e2))) {
            suffixes_.push_back(std::move(e2));
            return false;
          }
        }
    }
  return true;
}

Dfa LStar::conjecture() {
  while (true) {
    if (!close()) continue;
    if (!make_consistent()) continue;
    break;
  }
  std::vector<std::vector<bool>> reps;
  std::vector<Word> access;
  for (const auto& s : prefixes_) {
    auto r = row(s);
    if (std::find(reps.begin(), reps.end(), r) == reps.end()) {
      reps.push_back(r);
      access.push_back(s);
    }
  }
  auto state_of = [&](const std::vector<bool>& r) {
    return static_cast<std::size_t>(std::find(reps.begin(), reps.end(), r) - reps.begin());
  };
  std::vector<std::string> names;
  std::set<std::size_t> acc;
  std::vector<std::vector<std::size_t>> delta(reps.size());
  for (std::size_t q = 0; q < reps.size(); ++q) {
    names.push_back("q" + std::to_string(q));
    if (reps[q][0]) acc.insert(q);  // suffixes_[0] is the empty word
    for (const auto& l : alphabet_) delta[q].push_back(state_of(row(extend(access[q], l))));
  }
  Dfa d(std::move(names), alphabet_, state_of(row(Word{})), std::move(acc), std::move(delta));
  if (refined_ && !sizes_.empty() && d.size() <= sizes_.back())
    throw std::logic_error("L*: refined hypothesis did not grow");
  sizes_.push_back(d.size());
  refined_ = false;
  return d;
}

void LStar::refine(const Word& counterexample) {
  for (std::size_t k = 0; k <= counterexample.size(); ++k) {
    Word p(counterexample.begin(), counterexample.begin() + static_cast<long>(k));
    if (std::find(prefixes_.begin(), prefixes_.end(), p) == prefixes_.end()) prefixes_.push_back(std::move(p));
  }
  refined_ = true;
}

Dfa lstar(const std::vector<std::string>& alphabet, const Teacher& teacher, std::size_t max_conjectures,
          std::vector<std::size_t>* sizes) {
  LStar learner(alphabet, teacher.member);
  for (std::size_t i = 0; i < max_conjectures; ++i) {
    Dfa d = learner.conjecture();
    if (sizes) *sizes = learner.sizes();
    auto ce = teacher.equivalent(d);
    if (!ce) return d;
    learner.refine(*ce);
  }
  throw ConjectureLimit("L* gave up after " + std::to_string(max_conjectures) + " conjectures");
}

}  // namespace prisyn
