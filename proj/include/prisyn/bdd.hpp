#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prisyn::bdd {

class BddError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Variable handle. Handles double as levels: handle i sits at position i of
// the order, so the order is fixed when the manager is created.
using Var = std::uint32_t;
using Node = std::uint32_t;

enum class Op : std::uint8_t { And, Or, Xor, Implies, Iff };

class Manager;

class Predicate {
 public:
  Predicate() = default;

  Manager* manager() const { return mgr_; }
  Node node() const { return node_; }
  bool is_false() const { return node_ == 0; }
  bool is_true() const { return node_ == 1; }

  Predicate operator&(const Predicate& o) const;
  Predicate operator|(const Predicate& o) const;
  Predicate operator^(const Predicate& o) const;
  Predicate operator~() const;
  Predicate& operator&=(const Predicate& o) { return *this = *this & o; }
  Predicate& operator|=(const Predicate& o) { return *this = *this | o; }

  // Throws BddError when the predicates belong to different managers.
  bool operator==(const Predicate& o) const;
  bool operator!=(const Predicate& o) const { return !(*this == o); }

  // p <= q : p implies q
  bool implies(const Predicate& o) const;

 private:
  friend class Manager;
  Predicate(Manager* m, Node n) : mgr_(m), node_(n) {}
  Manager* mgr_ = nullptr;
  Node node_ = 0;
};

using Literal = std::pair<Var, bool>;
using Cube = std::vector<Literal>;  // sorted by variable

class Manager {
 public:
  // Throws BddError on duplicate names.
  explicit Manager(std::vector<std::string> names = {});
  Manager(const Manager&) = delete;
  Manager& operator=(const Manager&) = delete;

  std::size_t var_count() const { return names_.size(); }
  const std::string& name(Var v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Var> find(const std::string& name) const;

  Predicate constant(bool value);
  Predicate var(Var v);
  Predicate nvar(Var v);
  Predicate literal(Var v, bool positive) { return positive ? var(v) : nvar(v); }
  // Conjunction of positive literals; used as the variable set of quantifiers.
  Predicate cube(const std::vector<Var>& vars);
  Predicate assignment(const Cube& lits);

  Predicate apply(Op op, const Predicate& p, const Predicate& q);
  Predicate negate(const Predicate& p);
  Predicate ite(const Predicate& c, const Predicate& t, const Predicate& e);

  Predicate exists(const std::vector<Var>& vars, const Predicate& p);
  Predicate exists(const Predicate& var_cube, const Predicate& p);
  Predicate forall(const std::vector<Var>& vars, const Predicate& p);
  // exists vars . (p & q) without building the conjunction first.
  Predicate and_exists(const Predicate& p, const Predicate& q, const Predicate& var_cube);

  // Simultaneous renaming from[i] -> to[i]. Lists must have equal length and
  // must not overlap.
  Predicate substitute(const Predicate& p, const std::vector<Var>& from, const std::vector<Var>& to);

  // A path to true; care variables not on the path are filled in as false.
  Cube pick_cube(const Predicate& p, const std::vector<Var>& care = {});
  // All paths to true. Their disjunction equals p.
  std::vector<Cube> enumerate_cubes(const Predicate& p);

  bool eval(const Predicate& p, const std::vector<bool>& assignment);
  std::size_t node_count(const Predicate& p);
  // Number of satisfying assignments over the first `nvars` variables
  // (default: all variables). p must not depend on later variables.
  double sat_count(const Predicate& p, std::optional<std::size_t> nvars = std::nullopt);
  std::vector<Var> support(const Predicate& p);
  std::string to_dot(const Predicate& p);

  std::size_t allocated_nodes() const { return var_.size(); }

 private:
  static constexpr Var kTerminal = 0xffffffffu;

  struct CacheEntry {
    std::uint32_t op = 0xffffffffu;
    Node a = 0, b = 0, c = 0;
    Node result = 0;
  };

  void check(const Predicate& p) const;
  Var top(Node n) const { return var_[n]; }
  Node make(Var v, Node lo, Node hi);
  void grow_table();
  bool cache_lookup(std::uint32_t op, Node a, Node b, Node c, Node& out) const;
  void cache_store(std::uint32_t op, Node a, Node b, Node c, Node result);
  void maybe_grow_cache();

  Node apply_rec(Op op, Node a, Node b);
  Node not_rec(Node a);
  Node ite_rec(Node c, Node t, Node e);
  Node exists_rec(Node f, Node vars);
  Node and_exists_rec(Node f, Node g, Node vars);
  Node subst_rec(Node f, std::uint32_t map_id);

  std::vector<std::string> names_;
  std::unordered_map<std::string, Var> by_name_;

  std::vector<Var> var_;
  std::vector<Node> lo_;
  std::vector<Node> hi_;
  std::vector<Node> table_;  // open addressing, 0 = empty slot
  std::size_t table_used_ = 0;
  std::vector<CacheEntry> cache_;

  // substitution maps are interned so the cache key stays a small integer
  std::map<std::vector<Var>, std::uint32_t> map_ids_;
  std::vector<std::vector<Var>> maps_;
};

}  // namespace prisyn::bdd
