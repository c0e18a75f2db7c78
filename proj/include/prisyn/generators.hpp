#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prisyn/model.hpp"

namespace prisyn {

// Dining philosophers with 2n components p1 f1 p2 f2 ... . Philosopher i owns
// take_left_i (with f_i), take_right_i (with f_{i+1}, cyclic) and release_i
// (with both forks).
std::string philosophers_text(std::size_t n);
System philosophers(std::size_t n);

// Reconstructed fixtures. Each is consistent with the facts stated about the
// corresponding example; the exact original models are not available.
System fig2();      // nine-state risk example (single component, locations c1..c9)
System fig3();      // repushing example
System fig4();      // alphabet abstraction: C1 C2 C3 plus m-3 sharp-only components
System fig4_sub();  // C2 and C3 alone
System fig6();      // assume-guarantee boundary example, priority b < a
System dpu();       // data processing unit: five components, needs one repush

// "phil-N", "fig2", "fig3", "fig4", "fig4-sub", "fig6", "dpu".
std::optional<std::string> builtin_text(const std::string& name);
std::vector<std::string> builtin_names();

}  // namespace prisyn
