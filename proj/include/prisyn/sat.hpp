#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace prisyn {

// DIMACS-style literals: variable v (1-based) is +v, its negation -v.
using Clause = std::vector<int>;

struct SatStats {
  std::size_t decisions = 0;
  std::size_t propagations = 0;
  std::size_t conflicts = 0;
};

// Complete DPLL: two watched literals, unit propagation, chronological
// backtracking. Decisions follow `branch_order` (1-based variables; the rest
// follow in index order) and try false first. Returns a model indexed by
// variable (entry 0 unused) or nullopt when unsatisfiable.
std::optional<std::vector<bool>> dpll(std::size_t num_vars, const std::vector<Clause>& clauses,
                                      const std::vector<int>& branch_order = {}, SatStats* stats = nullptr);

bool satisfies(const std::vector<bool>& model, const std::vector<Clause>& clauses);

// Transitivity clauses (-x_ij | -x_jl | x_il) for all ordered triples of
// distinct indices below k. var[i * k + j] is the variable of (i, j). Both
// kernels produce the same clauses in the same order.
std::vector<std::array<int, 3>> transitive_clauses_serial(std::size_t k, const std::vector<int>& var);
std::vector<std::array<int, 3>> transitive_clauses_parallel(std::size_t k, const std::vector<int>& var);

}  // namespace prisyn
