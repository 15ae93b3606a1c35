#include "termlat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace termlat::oracle {

namespace {

std::string describe(double n) {
  std::ostringstream os;
  os << "term space too large: " << n << " terms (limit " << kMaxSpace << ")";
  return os.str();
}

Term instantiate(const std::map<std::string, Term>& env, const Term& t) {
  if (t.is_var()) {
    auto it = env.find(t.name());
    return it == env.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(instantiate(env, a));
  return Term::app(t.name(), std::move(args));
}

bool match_into(const Term& general, const Term& specific, std::map<std::string, Term>& env) {
  if (general.is_var()) {
    auto it = env.find(general.name());
    if (it == env.end()) {
      env.emplace(general.name(), specific);
      return true;
    }
    return it->second == specific;
  }
  if (specific.is_var() || general.name() != specific.name() ||
      general.arity() != specific.arity()) {
    return false;
  }
  for (std::size_t i = 0; i < general.arity(); ++i) {
    if (!match_into(general.arg(i), specific.arg(i), env)) return false;
  }
  return true;
}

// Odometer over idx in [0, base)^n; false once it wraps around.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
  for (std::size_t k = idx.size(); k > 0; --k) {
    if (++idx[k - 1] < base) return true;
    idx[k - 1] = 0;
  }
  return false;
}

void variables_in(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t.name()) == out.end()) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) variables_in(a, out);
}

}  // namespace

SpaceTooLarge::SpaceTooLarge(double cardinality)
    : std::runtime_error(describe(cardinality)), cardinality_(cardinality) {}

double cardinality(const TermSpace& space) {
  if (space.max_depth == 0) return 0;
  double leaves = static_cast<double>(space.variables.size());
  for (const Symbol& s : space.symbols) {
    if (s.arity == 0) leaves += 1;
  }
  double total = leaves;
  for (std::size_t d = 2; d <= space.max_depth; ++d) {
    double next = leaves;
    for (const Symbol& s : space.symbols) {
      if (s.arity > 0) next += std::pow(total, static_cast<double>(s.arity));
    }
    total = next;
  }
  return total;
}

std::vector<Term> enumerate_terms(const TermSpace& space) {
  const double n = cardinality(space);
  if (n > kMaxSpace) throw SpaceTooLarge(n);

  std::vector<Term> all;
  all.reserve(static_cast<std::size_t>(n));
  if (space.max_depth == 0) return all;
  for (const Variable& v : space.variables) all.push_back(Term::var(v.name));
  for (const Symbol& s : space.symbols) {
    if (s.arity == 0) all.push_back(Term::app(s.name));
  }

  // all[0, shallower) holds depths < d-1, all[shallower, known) depth d-1.
  std::size_t shallower = 0;
  for (std::size_t d = 2; d <= space.max_depth; ++d) {
    const std::size_t known = all.size();
    for (const Symbol& s : space.symbols) {
      if (s.arity == 0 || known == 0) continue;
      std::vector<std::size_t> idx(s.arity, 0);
      for (;;) {
        const bool reaches_depth =
            std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= shallower; });
        if (reaches_depth) {
          std::vector<Term> args;
          args.reserve(s.arity);
          for (std::size_t i : idx) args.push_back(all[i]);
          all.push_back(Term::app(s.name, std::move(args)));
        }
        if (!advance(idx, known)) break;
      }
    }
    shallower = known;
  }
  return all;
}

std::vector<Substitution> oracle_unifiers(const Term& t1, const Term& t2,
                                          const std::vector<Term>& range) {
  std::vector<std::string> vars;
  variables_in(t1, vars);
  variables_in(t2, vars);
  const double total = std::pow(static_cast<double>(range.size()), static_cast<double>(vars.size()));
  if (total > kMaxSpace) throw SpaceTooLarge(total);

  std::vector<Substitution> out;
  if (vars.empty()) {
    if (t1 == t2) out.emplace_back();
    return out;
  }
  if (range.empty()) return out;

  std::vector<std::size_t> idx(vars.size(), 0);
  for (;;) {
    std::map<std::string, Term> env;
    for (std::size_t k = 0; k < vars.size(); ++k) env.emplace(vars[k], range[idx[k]]);
    if (instantiate(env, t1) == instantiate(env, t2)) {
      Substitution s;
      for (std::size_t k = 0; k < vars.size(); ++k) s.bind(Variable{vars[k]}, range[idx[k]]);
      out.push_back(std::move(s));
    }
    if (!advance(idx, range.size())) break;
  }
  return out;
}

std::vector<Substitution> oracle_unifiers(const Term& t1, const Term& t2, const TermSpace& space) {
  return oracle_unifiers(t1, t2, enumerate_terms(space));
}

std::vector<Generalization> oracle_generalizers(const Term& t1, const Term& t2,
                                                const std::vector<Term>& candidates) {
  std::vector<Generalization> out;
  for (const Term& u : candidates) {
    Substitution d1;
    Substitution d2;
    if (naive_matches(u, t1, &d1) && naive_matches(u, t2, &d2)) {
      out.push_back({u, std::move(d1), std::move(d2)});
    }
  }
  return out;
}

std::vector<Generalization> oracle_generalizers(const Term& t1, const Term& t2,
                                                const TermSpace& space) {
  return oracle_generalizers(t1, t2, enumerate_terms(space));
}

bool naive_matches(const Term& general, const Term& specific, Substitution* witness) {
  std::map<std::string, Term> env;
  if (!match_into(general, specific, env)) return false;
  if (witness != nullptr) {
    *witness = Substitution();
    for (const auto& [name, term] : env) witness->bind(Variable{name}, term);
  }
  return true;
}

Degree naive_similarity(const SimilaritySignature& sig, const Term& t1, const Term& t2,
                        SimilarityMode mode) {
  // X ~1 X; a variable against anything else ~0.
  if (t1.is_var() && t2.is_var() && t1.name() == t2.name()) return 1.0;
  if (t1.is_var() || t2.is_var()) return 0.0;

  // Functor degree and positions: pairs (i, j) aligning t1's i with t2's j.
  Degree beta = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> aligned;
  if (t1.name() == t2.name() && t1.arity() == t2.arity()) {
    beta = 1.0;
    for (std::size_t i = 0; i < t1.arity(); ++i) aligned.emplace_back(i, i);
  } else {
    for (const SimilarityEntry& e : sig.entries()) {
      const bool forward = e.lo == t1.symbol() && e.hi == t2.symbol();
      const bool backward = e.lo == t2.symbol() && e.hi == t1.symbol();
      if (!forward && !backward) continue;
      beta = e.degree;
      for (std::size_t i = 0; i < e.mapping.size(); ++i) {
        const std::size_t j = e.mapping.images()[i] - 1;
        if (forward) {
          aligned.emplace_back(i, j);
        } else {
          aligned.emplace_back(j, i);
        }
      }
      break;
    }
  }
  if (beta == 0.0) return 0.0;
  if (mode == SimilarityMode::EqualArity && t1.arity() != t2.arity()) return 0.0;

  Degree degree = beta;
  for (const auto& [i, j] : aligned) {
    const Degree sub = naive_similarity(sig, t1.arg(i), t2.arg(j), mode);
    degree = sig.tnorm() == TNorm::Min ? std::min(degree, sub) : degree * sub;
  }
  return degree;
}

}  // namespace termlat::oracle
