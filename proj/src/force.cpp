#include <algorithm>
#include <numeric>

#include "prisyn/encoder.hpp"

namespace prisyn {

Ordering parse_ordering(const std::string& s) {
  if (s == "decl") return Ordering::Declaration;
  if (s == "force") return Ordering::Force;
  throw ModelError("unknown ordering " + s + " (expected decl or force)");
}

std::string to_string(Ordering o) { return o == Ordering::Force ? "force" : "decl"; }

namespace {

std::vector<std::size_t> positions_of(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
  return pos;
}

void check_permutation(const System& s, const std::vector<std::size_t>& order) {
  std::vector<bool> seen(s.size(), false);
  if (order.size() != s.size()) throw ModelError("order must list every component exactly once");
  for (auto c : order) {
    if (c >= s.size() || seen[c]) throw ModelError("order must list every component exactly once");
    seen[c] = true;
  }
}

}  // namespace

std::size_t span_sum(const System& s, const std::vector<std::size_t>& order) {
  check_permutation(s, order);
  auto pos = positions_of(order);
  std::size_t total = 0;
  for (InteractionId a = 0; a < s.alphabet().size(); ++a) {
    std::size_t lo = SIZE_MAX, hi = 0;
    for (auto c : s.participants(a)) {
      lo = std::min(lo, pos[c]);
      hi = std::max(hi, pos[c]);
    }
    total += hi - lo;
  }
  return total;
}

std::vector<std::size_t> force_order(const System& s, std::vector<std::size_t> initial, std::size_t max_iters) {
  if (max_iters < 1) throw ModelError("force_order needs at least one iteration");
  check_permutation(s, initial);
  const auto n = s.alphabet().size();
  std::vector<std::vector<InteractionId>> sigma_of(s.size());
  for (InteractionId a = 0; a < n; ++a)
    for (auto c : s.participants(a)) sigma_of[c].push_back(a);

  auto best = initial;
  auto best_span = span_sum(s, initial);
  auto current = initial;
  auto current_span = best_span;
  for (std::size_t it = 0; it < max_iters; ++it) {
    auto pos = positions_of(current);
    std::vector<double> cog(n, 0.0);
    for (InteractionId a = 0; a < n; ++a) {
      const auto& parts = s.participants(a);
      double sum = 0;
      for (auto c : parts) sum += static_cast<double>(pos[c]);
      cog[a] = sum / static_cast<double>(parts.size());
    }
    std::vector<double> value(s.size());
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (sigma_of[c].empty()) {
        value[c] = static_cast<double>(pos[c]);
        continue;
      }
      double sum = 0;
      for (auto a : sigma_of[c]) sum += cog[a];
      value[c] = sum / static_cast<double>(sigma_of[c].size());
    }
    auto next = current;
    std::stable_sort(next.begin(), next.end(), [&](std::size_t x, std::size_t y) { return value[x] < value[y]; });
    auto next_span = span_sum(s, next);
    if (next_span >= current_span) break;
    current = std::move(next);
    current_span = next_span;
    if (current_span < best_span) {
      best = current;
      best_span = current_span;
    }
  }
  return best;
}

}  // namespace prisyn
