#include "prisyn/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace prisyn {

namespace {

class Dpll {
 public:
  Dpll(std::size_t n, const std::vector<Clause>& clauses, const std::vector<int>& order, SatStats* stats)
      : n_(n), assign_(n + 1, -1), watches_(2 * (n + 1)), stats_(stats) {
    std::vector<bool> listed(n + 1, false);
    for (int v : order) {
      if (v < 1 || static_cast<std::size_t>(v) > n || listed[v]) continue;
      listed[v] = true;
      order_.push_back(v);
    }
    for (std::size_t v = 1; v <= n; ++v)
      if (!listed[v]) order_.push_back(static_cast<int>(v));

    for (const auto& c : clauses) {
      std::set<int> lits(c.begin(), c.end());
      bool taut = false;
      for (int l : lits) {
        if (l == 0 || static_cast<std::size_t>(std::abs(l)) > n) throw std::invalid_argument("literal out of range");
        if (lits.count(-l)) taut = true;
      }
      if (taut) continue;
      if (lits.empty()) {
        empty_ = true;
        continue;
      }
      if (lits.size() == 1) {
        units_.push_back(*lits.begin());
        continue;
      }
      clauses_.emplace_back(lits.begin(), lits.end());
      auto idx = clauses_.size() - 1;
      watches_[code(clauses_[idx][0])].push_back(idx);
      watches_[code(clauses_[idx][1])].push_back(idx);
    }
  }

  std::optional<std::vector<bool>> run() {
    if (empty_) return std::nullopt;
    for (int u : units_) {
      int v = value(u);
      if (v == 0) return std::nullopt;
      if (v < 0) enqueue(u);
    }
    if (!propagate()) return std::nullopt;
    std::size_t cursor = 0;
    while (true) {
      while (cursor < order_.size() && assign_[order_[cursor]] != -1) ++cursor;
      if (cursor == order_.size()) break;
      decisions_.push_back({trail_.size(), -order_[cursor], false});
      if (stats_) ++stats_->decisions;
      enqueue(-order_[cursor]);
      while (!propagate()) {
        if (stats_) ++stats_->conflicts;
        if (!backtrack()) return std::nullopt;
      }
      cursor = 0;
    }
    std::vector<bool> model(n_ + 1, false);
    for (std::size_t v = 1; v <= n_; ++v) model[v] = assign_[v] == 1;
    return model;
  }

 private:
  struct Decision {
    std::size_t trail_start;
    int lit;
    bool flipped;
  };

  static std::size_t code(int lit) { return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0); }

  // 1 true, 0 false, -1 unassigned
  int value(int lit) const {
    int a = assign_[std::abs(lit)];
    if (a < 0) return -1;
    return (lit > 0) == (a == 1) ? 1 : 0;
  }

  void enqueue(int lit) {
    assign_[std::abs(lit)] = lit > 0 ? 1 : 0;
    trail_.push_back(lit);
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      int falsified = -trail_[qhead_++];
      auto& ws = watches_[code(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t w = 0; w < ws.size(); ++w) {
        auto ci = ws[w];
        if (conflict) {
          ws[keep++] = ci;
          continue;
        }
        auto& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value(c[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k)
          if (value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[code(c[1])].push_back(ci);
            moved = true;
            break;
          }
        if (moved) continue;
        ws[keep++] = ci;
        if (value(c[0]) == 0) {
          conflict = true;
        } else {
          if (stats_) ++stats_->propagations;
          enqueue(c[0]);
        }
      }
      ws.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  bool backtrack() {
    while (!decisions_.empty()) {
      Decision d = decisions_.back();
      decisions_.pop_back();
      while (trail_.size() > d.trail_start) {
        assign_[std::abs(trail_.back())] = -1;
        trail_.pop_back();
      }
      qhead_ = trail_.size();
      if (!d.flipped) {
        decisions_.push_back({d.trail_start, -d.lit, true});
        enqueue(-d.lit);
        return true;
      }
    }
    return false;
  }

  std::size_t n_;
  std::vector<int> assign_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> units_;
  bool empty_ = false;
  std::vector<int> order_;
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  std::vector<Decision> decisions_;
  SatStats* stats_;
};

}  // namespace

std::optional<std::vector<bool>> dpll(std::size_t num_vars, const std::vector<Clause>& clauses,
                                      const std::vector<int>& branch_order, SatStats* stats) {
  return Dpll(num_vars, clauses, branch_order, stats).run();
}

bool satisfies(const std::vector<bool>& model, const std::vector<Clause>& clauses) {
  for (const auto& c : clauses) {
    bool ok = false;
    for (int l : c) {
      auto v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] == (l > 0)) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace prisyn
