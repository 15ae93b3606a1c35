// Generalization (anti-unification) by generalization judgements.
//
// A judgement relates prior substitutions (sigma1, sigma2) and a degree to a
// pair of terms and yields a generalizer plus posterior substitutions and
// degree. Equal/Similar Functors rules thread the substitutions and the
// degree through their antecedents left to right, after first "unapplying"
// each argument pair: if some generalizer variable X is already bound to the
// pair (exactly in Crisp mode, up to the current degree of similarity in the
// fuzzy modes) the pair is replaced by (X, X).
//
//   Crisp       - Equal Variables, Variable-Term, Unequal Functors,
//                 Equal Functors (Reynolds / Plotkin).
//   FunctorWeak - Fuzzy Equal Variables, Fuzzy Variable-Term, Dissimilar
//                 Functors, Similar Functors; equal-arity similarities only.
//   Full        - FunctorWeak with Similar Functors replaced by Functor/Arity
//                 Similarity Left/Right. The generalizer node takes the
//                 lower-arity functor (Left on ties) and the other side's
//                 unmapped arguments are dropped.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termlat/signature.hpp"
#include "termlat/substitution.hpp"
#include "termlat/term.hpp"
#include "termlat/unify.hpp"

namespace termlat {

enum class GenMode { Crisp, FunctorWeak, Full };

std::string_view to_string(GenMode mode);

// What to do with variables occurring in both inputs.
enum class SharedVariables {
  // rename_apart the second input first (the default).
  Rename,
  // Keep them; each shared X generalizes to itself by Equal Variables.
  Keep,
  // Throw ConfigError.
  Reject,
};

struct GenConfig {
  GenMode mode = GenMode::Crisp;
  // Ignored in Crisp mode.
  SimilaritySignature signature;
  SharedVariables shared = SharedVariables::Rename;

  // Throws ConfigError when FunctorWeak is given unequal-arity similarities.
  void validate() const;
};

enum class GenRule {
  EqualVariables,
  VariableTerm,
  UnequalFunctors,
  EqualFunctors,
  FuzzyEqualVariables,
  FuzzyVariableTerm,
  DissimilarFunctors,
  SimilarFunctors,
  FunctorAritySimilarityLeft,
  FunctorAritySimilarityRight,
};

std::string_view rule_name(GenRule rule);

struct GenStep {
  GenRule rule;
  std::size_t depth = 0;
  // The pair the rule was applied to, after unapply.
  Term left;
  Term right;
  // The pair was replaced by a shared generalizer variable through unapply.
  bool unapplied = false;
  Term generalizer;
  Degree degree_before = 1.0;
  Degree degree_after = 1.0;
  std::vector<DroppedArgument> dropped;
};

struct GenResult {
  Term generalizer;
  Substitution sigma1;
  Substitution sigma2;
  Degree degree = 1.0;
  std::vector<GenStep> trace;
  // The inputs actually generalized (the second one possibly renamed) and
  // the renaming applied to it.
  Term input1;
  Term input2;
  Substitution renaming;
  std::vector<DroppedArgument> dropped;
};

GenResult generalize(const Term& t1, const Term& t2, const GenConfig& cfg);
GenResult generalize(const Term& t1, const Term& t2, const GenConfig& cfg, FreshSupply& supply);

// (X, X) for the first X in insertion order with sigma1(X) == t1 and
// sigma2(X) == t2, otherwise (t1, t2).
std::pair<Term, Term> unapply(const Term& t1, const Term& t2, const Substitution& sigma1,
                              const Substitution& sigma2);

// As unapply, but the witnesses only need term_similarity >= alpha on each
// side.
std::pair<Term, Term> fuzzy_unapply(const Term& t1, const Term& t2, const Substitution& sigma1,
                                    const Substitution& sigma2, Degree alpha,
                                    const SimilaritySignature& sig, SimilarityMode mode);

}  // namespace termlat
