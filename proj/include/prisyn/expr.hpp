#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace prisyn {

// Boolean formula over the variables of one component. Variables are
// referenced by their index in the component's declaration list.
class Expr {
 public:
  enum class Kind { Const, Var, Not, And, Or };

  static Expr constant(bool value);
  static Expr var(std::size_t index);
  static Expr negate(Expr e);
  static Expr conj(Expr lhs, Expr rhs);
  static Expr disj(Expr lhs, Expr rhs);

  Expr() : Expr(constant(true)) {}

  Kind kind() const;
  bool value() const;          // Const only
  std::size_t index() const;   // Var only
  const Expr& lhs() const;     // Not/And/Or
  const Expr& rhs() const;     // And/Or

  bool is_true() const { return kind() == Kind::Const && value(); }
  bool is_var(std::size_t i) const { return kind() == Kind::Var && index() == i; }

  // Bit i of `valuation` holds variable i.
  bool eval(std::uint64_t valuation) const;

  // Largest variable index referenced plus one (0 for closed formulas).
  std::size_t arity() const;

  std::string to_string(const std::vector<std::string>& names) const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace prisyn
