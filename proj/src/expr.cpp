#include "prisyn/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace prisyn {

struct Expr::Node {
  Kind kind;
  bool value = false;
  std::size_t index = 0;
  Expr lhs{nullptr};
  Expr rhs{nullptr};
};

Expr Expr::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::var(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->lhs = std::move(e);
  return Expr(std::move(n));
}

Expr Expr::conj(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::disj(Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
const Expr& Expr::lhs() const { return node_->lhs; }
const Expr& Expr::rhs() const { return node_->rhs; }

bool Expr::eval(std::uint64_t valuation) const {
  switch (kind()) {
    case Kind::Const: return value();
    case Kind::Var: return (valuation >> index()) & 1u;
    case Kind::Not: return !lhs().eval(valuation);
    case Kind::And: return lhs().eval(valuation) && rhs().eval(valuation);
    case Kind::Or: return lhs().eval(valuation) || rhs().eval(valuation);
  }
  return false;
}

std::size_t Expr::arity() const {
  switch (kind()) {
    case Kind::Const: return 0;
    case Kind::Var: return index() + 1;
    case Kind::Not: return lhs().arity();
    default: return std::max(lhs().arity(), rhs().arity());
  }
}

namespace {

bool is_binary(const Expr& e) {
  return e.kind() == Expr::Kind::And || e.kind() == Expr::Kind::Or;
}

}  // namespace

std::string Expr::to_string(const std::vector<std::string>& names) const {
  auto wrap = [&](const Expr& child) {
    std::string s = child.to_string(names);
    return is_binary(child) ? "(" + s + ")" : s;
  };
  switch (kind()) {
    case Kind::Const: return value() ? "1" : "0";
    case Kind::Var:
      if (index() >= names.size()) throw std::out_of_range("expression variable index out of range");
      return names[index()];
    case Kind::Not: return "!" + wrap(lhs());
    case Kind::And: return wrap(lhs()) + " & " + wrap(rhs());
    case Kind::Or: return wrap(lhs()) + " | " + wrap(rhs());
  }
  return {};
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Const: return a.value() == b.value();
    case Expr::Kind::Var: return a.index() == b.index();
    case Expr::Kind::Not: return a.lhs() == b.lhs();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

}  // namespace prisyn
