#include <omp.h>

#include "prisyn/sat.hpp"

namespace prisyn {

namespace {

inline std::size_t triple_count(std::size_t k) { return k < 3 ? 0 : k * (k - 1) * (k - 2); }

// Clauses emitted for a fixed first index i, written from `out` onwards.
inline void fill_row(std::size_t k, const std::vector<int>& var, std::size_t i, std::array<int, 3>* out) {
  for (std::size_t j = 0; j < k; ++j) {
    if (j == i) continue;
    for (std::size_t l = 0; l < k; ++l) {
      if (l == i || l == j) continue;
      *out++ = {-var[i * k + j], -var[j * k + l], var[i * k + l]};
    }
  }
}

}  // namespace

std::vector<std::array<int, 3>> transitive_clauses_serial(std::size_t k, const std::vector<int>& var) {
  std::vector<std::array<int, 3>> out(triple_count(k));
  if (out.empty()) return out;
  const std::size_t row = (k - 1) * (k - 2);
  for (std::size_t i = 0; i < k; ++i) fill_row(k, var, i, out.data() + i * row);
  return out;
}

std::vector<std::array<int, 3>> transitive_clauses_parallel(std::size_t k, const std::vector<int>& var) {
  std::vector<std::array<int, 3>> out(triple_count(k));
  if (out.empty()) return out;
  const std::size_t row = (k - 1) * (k - 2);
  const auto rows = static_cast<long>(k);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < rows; ++i) fill_row(k, var, static_cast<std::size_t>(i), out.data() + static_cast<std::size_t>(i) * row);
  return out;
}

}  // namespace prisyn
