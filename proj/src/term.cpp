#include "termlat/term.hpp"

#include <algorithm>

#include "termlat/syntax.hpp"

namespace termlat {

std::string Symbol::str() const { return name + "/" + std::to_string(arity); }

Term Term::var(std::string name) {
  auto node = std::make_shared<Node>();
  node->is_var = true;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::app(std::string functor, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->name = std::move(functor);
  node->ground = true;
  std::size_t max_depth = 0;
  for (const Term& a : args) {
    node->size += a.size();
    max_depth = std::max(max_depth, a.depth());
    node->ground = node->ground && a.is_ground();
  }
  node->depth = max_depth + 1;
  node->args = std::move(args);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_var() != b.is_var() || a.size() != b.size() || a.name() != b.name() ||
      a.arity() != b.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!(a.arg(i) == b.arg(i))) return false;
  }
  return true;
}

// Variables before applications; then name, arity, children.
std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_var() != b.is_var()) {
    return a.is_var() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.name() <=> b.name(); c != 0) return c;
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (auto c = a.arg(i) <=> b.arg(i); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void collect_vars(const Term& t, std::vector<Variable>& out) {
  if (t.is_ground()) return;
  if (t.is_var()) {
    Variable v = t.variable();
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

std::vector<Variable> vars_of(const Term& t) {
  std::vector<Variable> out;
  collect_vars(t, out);
  return out;
}

bool occurs_in(const Variable& x, const Term& t) {
  if (t.is_ground()) return false;
  if (t.is_var()) return t.name() == x.name;
  return std::any_of(t.args().begin(), t.args().end(),
                     [&](const Term& a) { return occurs_in(x, a); });
}

namespace {
void collect_symbols(const Term& t, std::vector<Symbol>& out) {
  if (t.is_var()) return;
  Symbol s = t.symbol();
  if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  for (const Term& a : t.args()) collect_symbols(a, out);
}
}  // namespace

std::vector<Symbol> symbols_of(const Term& t) {
  std::vector<Symbol> out;
  collect_symbols(t, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << print_term(t); }
std::ostream& operator<<(std::ostream& os, const Variable& v) { return os << v.name; }
std::ostream& operator<<(std::ostream& os, const Symbol& s) { return os << s.str(); }

}  // namespace termlat
