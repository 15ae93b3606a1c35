// First-order terms over a ranked signature.
//
// Terms are immutable trees with shared structure; copying a Term is a
// reference-count bump. Functors are keyed by (name, arity), so f/2 and f/3
// are distinct symbols.

#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace termlat {

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;

  // "f/2"
  std::string str() const;
};

struct Variable {
  std::string name;

  friend auto operator<=>(const Variable&, const Variable&) = default;
  friend bool operator==(const Variable&, const Variable&) = default;
};

class Term {
 public:
  static Term var(std::string name);
  static Term var(const Variable& v) { return var(v.name); }
  static Term app(std::string functor, std::vector<Term> args = {});

  bool is_var() const { return node_->is_var; }
  bool is_app() const { return !node_->is_var; }
  bool is_constant() const { return is_app() && node_->args.empty(); }

  // Variable name or functor name.
  const std::string& name() const { return node_->name; }
  std::size_t arity() const { return node_->args.size(); }
  const std::vector<Term>& args() const { return node_->args; }
  const Term& arg(std::size_t i) const { return node_->args[i]; }

  Symbol symbol() const { return {node_->name, node_->args.size()}; }
  Variable variable() const { return {node_->name}; }

  // Number of nodes.
  std::size_t size() const { return node_->size; }
  // Leaves have depth 1.
  std::size_t depth() const { return node_->depth; }
  bool is_ground() const { return node_->ground; }

  bool same_node(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node {
    bool is_var = false;
    std::string name;
    std::vector<Term> args;
    std::size_t size = 1;
    std::size_t depth = 1;
    bool ground = false;
  };

  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Variables in left-to-right first-occurrence order.
std::vector<Variable> vars_of(const Term& t);

// Appends variables of t not already present in `out`.
void collect_vars(const Term& t, std::vector<Variable>& out);

bool occurs_in(const Variable& x, const Term& t);

// All functor symbols of t in first-occurrence order.
std::vector<Symbol> symbols_of(const Term& t);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Variable& v);
std::ostream& operator<<(std::ostream& os, const Symbol& s);

}  // namespace termlat
