#include "termlat/substitution.hpp"

#include <algorithm>
#include <map>

#include "termlat/syntax.hpp"

namespace termlat {

Substitution::Substitution(std::initializer_list<std::pair<std::string, Term>> bindings) {
  for (const auto& [name, term] : bindings) bind(Variable{name}, term);
}

void Substitution::bind(const Variable& x, Term t) {
  if (t.is_var() && t.name() == x.name) {
    erase(x);
    return;
  }
  for (Binding& b : bindings_) {
    if (b.var == x) {
      b.term = std::move(t);
      return;
    }
  }
  bindings_.push_back({x, std::move(t)});
}

void Substitution::erase(const Variable& x) {
  std::erase_if(bindings_, [&](const Binding& b) { return b.var == x; });
}

const Term* Substitution::find(const Variable& x) const {
  for (const Binding& b : bindings_) {
    if (b.var == x) return &b.term;
  }
  return nullptr;
}

std::vector<Variable> Substitution::domain() const {
  std::vector<Variable> out;
  out.reserve(bindings_.size());
  for (const Binding& b : bindings_) out.push_back(b.var);
  return out;
}

Substitution Substitution::restricted_to(const std::vector<Variable>& vars) const {
  Substitution out;
  for (const Binding& b : bindings_) {
    if (std::find(vars.begin(), vars.end(), b.var) != vars.end()) out.bindings_.push_back(b);
  }
  return out;
}

bool Substitution::is_idempotent() const {
  for (const Binding& b : bindings_) {
    for (const Binding& c : bindings_) {
      if (occurs_in(b.var, c.term)) return false;
    }
  }
  return true;
}

bool operator==(const Substitution& a, const Substitution& b) {
  if (a.size() != b.size()) return false;
  for (const Binding& x : a) {
    const Term* other = b.find(x.var);
    if (other == nullptr || !(*other == x.term)) return false;
  }
  return true;
}

std::string Substitution::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < bindings_.size(); ++i) {
    if (i > 0) out += ", ";
    out += bindings_[i].var.name + " -> " + print_term(bindings_[i].term);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const Substitution& s) { return os << s.str(); }

Term apply(const Substitution& s, const Term& t) {
  if (s.empty() || t.is_ground()) return t;
  if (t.is_var()) {
    const Term* image = s.find(t.variable());
    return image != nullptr ? *image : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& a : t.args()) {
    args.push_back(apply(s, a));
    changed = changed || !args.back().same_node(a);
  }
  if (!changed) return t;
  return Term::app(t.name(), std::move(args));
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out;
  for (const Binding& b : first) out.bind(b.var, apply(then, b.term));
  for (const Binding& b : then) {
    if (!first.contains(b.var)) out.bind(b.var, b.term);
  }
  return out;
}

Variable FreshSupply::next() { return Variable{"_G" + std::to_string(counter_++)}; }

void FreshSupply::avoid(const Term& t) {
  for (const Variable& v : vars_of(t)) {
    if (!is_fresh_name(v.name)) continue;
    const std::string digits = v.name.substr(2);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    // Overlong suffixes cannot collide with anything this counter issues.
    if (digits.size() > 18) continue;
    counter_ = std::max<std::size_t>(counter_, std::stoull(digits) + 1);
  }
}

RenamedPair rename_apart(const Term& t1, const Term& t2, FreshSupply& supply) {
  supply.avoid(t1);
  supply.avoid(t2);
  const std::vector<Variable> left = vars_of(t1);
  Substitution renaming;
  for (const Variable& v : vars_of(t2)) {
    if (std::find(left.begin(), left.end(), v) != left.end()) {
      renaming.bind(v, supply.next_term());
    }
  }
  if (renaming.empty()) return {t1, t2, {}, {}};
  return {t1, apply(renaming, t2), {}, renaming};
}

namespace {

bool match(const Term& general, const Term& specific, std::map<Variable, Term>& env) {
  if (general.is_var()) {
    auto [it, inserted] = env.emplace(general.variable(), specific);
    return inserted || it->second == specific;
  }
  if (specific.is_var() || general.name() != specific.name() ||
      general.arity() != specific.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < general.arity(); ++i) {
    if (!match(general.arg(i), specific.arg(i), env)) return false;
  }
  return true;
}

}  // namespace

std::optional<Substitution> subsumes(const Term& general, const Term& specific) {
  std::map<Variable, Term> env;
  if (!match(general, specific, env)) return std::nullopt;
  Substitution out;
  for (const Variable& v : vars_of(general)) out.bind(v, env.at(v));
  return out;
}

namespace {

bool variant_walk(const Term& a, const Term& b, std::map<std::string, std::string>& forward,
                  std::map<std::string, std::string>& backward) {
  if (a.is_var() != b.is_var()) return false;
  if (a.is_var()) {
    auto f = forward.emplace(a.name(), b.name()).first;
    auto r = backward.emplace(b.name(), a.name()).first;
    return f->second == b.name() && r->second == a.name();
  }
  if (a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!variant_walk(a.arg(i), b.arg(i), forward, backward)) return false;
  }
  return true;
}

}  // namespace

bool variant_equal(const Term& t1, const Term& t2) {
  std::map<std::string, std::string> forward;
  std::map<std::string, std::string> backward;
  return variant_walk(t1, t2, forward, backward);
}

}  // namespace termlat
