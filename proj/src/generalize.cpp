#include "termlat/generalize.hpp"

#include <algorithm>

#include "termlat/syntax.hpp"

namespace termlat {

std::string_view to_string(GenMode mode) {
  switch (mode) {
    case GenMode::Crisp: return "crisp";
    case GenMode::FunctorWeak: return "weak";
    case GenMode::Full: return "full";
  }
  return "?";
}

std::string_view rule_name(GenRule rule) {
  switch (rule) {
    case GenRule::EqualVariables: return "Equal Variables";
    case GenRule::VariableTerm: return "Variable-Term";
    case GenRule::UnequalFunctors: return "Unequal Functors";
    case GenRule::EqualFunctors: return "Equal Functors";
    case GenRule::FuzzyEqualVariables: return "Fuzzy Equal Variables";
    case GenRule::FuzzyVariableTerm: return "Fuzzy Variable-Term";
    case GenRule::DissimilarFunctors: return "Dissimilar Functors";
    case GenRule::SimilarFunctors: return "Similar Functors";
    case GenRule::FunctorAritySimilarityLeft: return "Functor/Arity Similarity Left";
    case GenRule::FunctorAritySimilarityRight: return "Functor/Arity Similarity Right";
  }
  return "?";
}

void GenConfig::validate() const {
  if (mode != GenMode::FunctorWeak) return;
  for (const SimilarityEntry& e : signature.entries()) {
    if (e.lo.arity != e.hi.arity) {
      throw ConfigError("functor-weak generalization requires equal-arity similarities, but "
                        "the signature has '" + e.str() + "'");
    }
  }
}

std::pair<Term, Term> unapply(const Term& t1, const Term& t2, const Substitution& sigma1,
                              const Substitution& sigma2) {
  for (const Binding& b : sigma1) {
    if (!(b.term == t1)) continue;
    const Term* other = sigma2.find(b.var);
    if (other != nullptr && *other == t2) {
      Term x = Term::var(b.var);
      return {x, x};
    }
  }
  return {t1, t2};
}

std::pair<Term, Term> fuzzy_unapply(const Term& t1, const Term& t2, const Substitution& sigma1,
                                    const Substitution& sigma2, Degree alpha,
                                    const SimilaritySignature& sig, SimilarityMode mode) {
  for (const Binding& b : sigma1) {
    const Term* other = sigma2.find(b.var);
    if (other == nullptr) continue;
    if (term_similarity(sig, t1, b.term, mode) >= alpha &&
        term_similarity(sig, t2, *other, mode) >= alpha) {
      Term x = Term::var(b.var);
      return {x, x};
    }
  }
  return {t1, t2};
}

namespace {

class Generalizer {
 public:
  Generalizer(const GenConfig& cfg, FreshSupply& supply) : cfg_(cfg), supply_(supply) {}

  Term run(const Term& t1, const Term& t2) { return judge(t1, t2, false, 0); }

  Substitution sigma1;
  Substitution sigma2;
  Degree degree = 1.0;
  std::vector<GenStep> trace;
  std::vector<DroppedArgument> dropped;

 private:
  bool fuzzy() const { return cfg_.mode != GenMode::Crisp; }

  SimilarityMode similarity_mode() const {
    return cfg_.mode == GenMode::Full ? SimilarityMode::Mapped : SimilarityMode::EqualArity;
  }

  std::pair<Term, Term> unapply_pair(const Term& s, const Term& t) const {
    if (!fuzzy()) return unapply(s, t, sigma1, sigma2);
    return fuzzy_unapply(s, t, sigma1, sigma2, degree, cfg_.signature, similarity_mode());
  }

  std::size_t open_step(GenRule rule, const Term& s, const Term& t, bool unapplied,
                        std::size_t depth) {
    trace.push_back(GenStep{rule, depth, s, t, unapplied, s, degree, degree, {}});
    return trace.size() - 1;
  }

  Term close_step(std::size_t at, Term u) {
    trace[at].generalizer = u;
    trace[at].degree_after = degree;
    return u;
  }

  Term fresh_pair(GenRule rule, const Term& s, const Term& t, bool unapplied, std::size_t depth) {
    const std::size_t at = open_step(rule, s, t, unapplied, depth);
    const Variable x = supply_.next();
    sigma1.bind(x, s);
    sigma2.bind(x, t);
    return close_step(at, Term::var(x));
  }

  // Generalizes the argument pairs (s[k], t[k]) in order, each first
  // unapplied against the current substitutions.
  std::vector<Term> arguments(const std::vector<std::pair<Term, Term>>& pairs, std::size_t depth) {
    std::vector<Term> out;
    out.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
      auto [ua, ub] = unapply_pair(a, b);
      const bool hit = !ua.same_node(a) || !ub.same_node(b);
      out.push_back(judge(ua, ub, hit, depth + 1));
    }
    return out;
  }

  Term judge(const Term& s, const Term& t, bool unapplied, std::size_t depth) {
    if (s.is_var() && t.is_var() && s.name() == t.name()) {
      const std::size_t at = open_step(
          fuzzy() ? GenRule::FuzzyEqualVariables : GenRule::EqualVariables, s, t, unapplied, depth);
      return close_step(at, s);
    }
    if (s.is_var() || t.is_var()) {
      return fresh_pair(fuzzy() ? GenRule::FuzzyVariableTerm : GenRule::VariableTerm, s, t,
                        unapplied, depth);
    }
    if (!fuzzy()) {
      if (s.symbol() != t.symbol()) {
        return fresh_pair(GenRule::UnequalFunctors, s, t, unapplied, depth);
      }
      const std::size_t at = open_step(GenRule::EqualFunctors, s, t, unapplied, depth);
      std::vector<std::pair<Term, Term>> pairs;
      for (std::size_t i = 0; i < s.arity(); ++i) pairs.emplace_back(s.arg(i), t.arg(i));
      return close_step(at, Term::app(s.name(), arguments(pairs, depth)));
    }

    std::optional<SimilarityMatch> match;
    if (cfg_.mode == GenMode::Full || s.arity() == t.arity()) {
      match = cfg_.signature.lookup(s.symbol(), t.symbol());
    }
    if (!match) return fresh_pair(GenRule::DissimilarFunctors, s, t, unapplied, depth);

    GenRule rule = GenRule::SimilarFunctors;
    if (cfg_.mode == GenMode::Full) {
      rule = match->first_is_lower ? GenRule::FunctorAritySimilarityLeft
                                   : GenRule::FunctorAritySimilarityRight;
    }
    const std::size_t at = open_step(rule, s, t, unapplied, depth);
    degree = cfg_.signature.conj(degree, match->degree);

    // Left keeps s's functor and walks s's positions; Right keeps t's.
    const Term& kept = match->first_is_lower ? s : t;
    const Term& other = match->first_is_lower ? t : s;
    std::vector<bool> used(other.arity(), false);
    std::vector<std::pair<Term, Term>> pairs;
    for (std::size_t k = 1; k <= kept.arity(); ++k) {
      const std::size_t j = match->mapping.image(k);
      used[j - 1] = true;
      if (match->first_is_lower) {
        pairs.emplace_back(s.arg(k - 1), t.arg(j - 1));
      } else {
        pairs.emplace_back(s.arg(j - 1), t.arg(k - 1));
      }
    }
    for (std::size_t j = 0; j < used.size(); ++j) {
      if (!used[j]) {
        DroppedArgument d{other.symbol(), j + 1, other.arg(j)};
        trace[at].dropped.push_back(d);
        dropped.push_back(std::move(d));
      }
    }
    return close_step(at, Term::app(kept.name(), arguments(pairs, depth)));
  }

  const GenConfig& cfg_;
  FreshSupply& supply_;
};

bool share_variables(const Term& t1, const Term& t2) {
  const std::vector<Variable> left = vars_of(t1);
  for (const Variable& v : vars_of(t2)) {
    if (std::find(left.begin(), left.end(), v) != left.end()) return true;
  }
  return false;
}

}  // namespace

GenResult generalize(const Term& t1, const Term& t2, const GenConfig& cfg, FreshSupply& supply) {
  cfg.validate();
  supply.avoid(t1);
  supply.avoid(t2);
  Term second = t2;
  Substitution renaming;
  if (share_variables(t1, t2)) {
    switch (cfg.shared) {
      case SharedVariables::Reject:
        throw ConfigError("inputs share variables: '" + print_term(t1) + "' and '" +
                          print_term(t2) + "'");
      case SharedVariables::Rename: {
        RenamedPair renamed = rename_apart(t1, t2, supply);
        second = renamed.second;
        renaming = renamed.second_renaming;
        break;
      }
      case SharedVariables::Keep:
        break;
    }
  }

  Generalizer g(cfg, supply);
  Term u = g.run(t1, second);
  return GenResult{std::move(u),       std::move(g.sigma1), std::move(g.sigma2),
                   g.degree,           std::move(g.trace),  t1,
                   std::move(second),  std::move(renaming), std::move(g.dropped)};
}

GenResult generalize(const Term& t1, const Term& t2, const GenConfig& cfg) {
  FreshSupply supply;
  return generalize(t1, t2, cfg, supply);
}

}  // namespace termlat
