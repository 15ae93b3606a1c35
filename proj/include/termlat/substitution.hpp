// Substitutions, matching, and variable renaming.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "termlat/term.hpp"

namespace termlat {

struct Binding {
  Variable var;
  Term term;
};

// Finite map Variable -> Term that remembers insertion order. Identity
// bindings X -> X are never stored.
class Substitution {
 public:
  Substitution() = default;
  Substitution(std::initializer_list<std::pair<std::string, Term>> bindings);

  // Adds or replaces a binding. Binding X to X removes X from the domain.
  void bind(const Variable& x, Term t);
  void erase(const Variable& x);

  const Term* find(const Variable& x) const;
  bool contains(const Variable& x) const { return find(x) != nullptr; }

  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  auto begin() const { return bindings_.begin(); }
  auto end() const { return bindings_.end(); }
  const Binding& operator[](std::size_t i) const { return bindings_[i]; }

  std::vector<Variable> domain() const;

  // Restriction to the given variables, keeping insertion order.
  Substitution restricted_to(const std::vector<Variable>& vars) const;

  // No domain variable occurs in any image.
  bool is_idempotent() const;

  // Set equality; insertion order is ignored.
  friend bool operator==(const Substitution& a, const Substitution& b);

  std::string str() const;

 private:
  std::vector<Binding> bindings_;
};

// Simultaneous single-pass application: images are not re-substituted.
Term apply(const Substitution& s, const Term& t);

// apply(compose(s, t), x) == apply(t, apply(s, x)).
Substitution compose(const Substitution& first, const Substitution& then);

// Per-session supply of fresh variables _G0, _G1, ...
class FreshSupply {
 public:
  Variable next();
  Term next_term() { return Term::var(next()); }

  // Moves the counter past any _G<k> occurring in t.
  void avoid(const Term& t);

  std::size_t issued() const { return counter_; }

 private:
  std::size_t counter_ = 0;
};

struct RenamedPair {
  Term first;
  Term second;
  Substitution first_renaming;
  Substitution second_renaming;
};

// Renames the variables of `t2` that also occur in `t1`. Inputs that already
// have disjoint variables come back unchanged with empty renamings.
RenamedPair rename_apart(const Term& t1, const Term& t2, FreshSupply& supply);

// One-sided matching: sigma with apply(sigma, general) == specific. Variables
// of `specific` are treated as constants.
std::optional<Substitution> subsumes(const Term& general, const Term& specific);

// Equality up to a bijective renaming of variables.
bool variant_equal(const Term& t1, const Term& t2);

std::ostream& operator<<(std::ostream& os, const Substitution& s);

}  // namespace termlat
