// Brute-force reference procedures for checking the engines at desk scale.
//
// Nothing here goes through the unification or generalization rule
// machinery: every answer comes from exhaustive enumeration over a bounded
// term space, or from direct recursion on the definition of term similarity.
// Spaces larger than kMaxSpace are refused rather than truncated.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "termlat/signature.hpp"
#include "termlat/substitution.hpp"
#include "termlat/term.hpp"

namespace termlat::oracle {

inline constexpr double kMaxSpace = 1e6;

struct TermSpace {
  std::vector<Symbol> symbols;
  std::size_t max_depth = 1;
  std::vector<Variable> variables;
};

class SpaceTooLarge : public std::runtime_error {
 public:
  explicit SpaceTooLarge(double cardinality);
  double cardinality() const { return cardinality_; }

 private:
  double cardinality_;
};

// Number of terms of depth <= max_depth (leaves have depth 1).
double cardinality(const TermSpace& space);

// Every term of the space exactly once: by depth, then symbol order, then
// children lexicographically. Variables precede constants at depth 1.
std::vector<Term> enumerate_terms(const TermSpace& space);

// Every substitution over vars(t1) U vars(t2) with images drawn from `range`
// that makes the two terms structurally equal.
std::vector<Substitution> oracle_unifiers(const Term& t1, const Term& t2,
                                          const std::vector<Term>& range);
std::vector<Substitution> oracle_unifiers(const Term& t1, const Term& t2, const TermSpace& space);

struct Generalization {
  Term generalizer;
  Substitution delta1;
  Substitution delta2;
};

// Every u in the space with u delta1 = t1 and u delta2 = t2.
std::vector<Generalization> oracle_generalizers(const Term& t1, const Term& t2,
                                                const TermSpace& space);
std::vector<Generalization> oracle_generalizers(const Term& t1, const Term& t2,
                                                const std::vector<Term>& candidates);

// Term similarity computed straight from its recursive definition, looking
// functor pairs up by scanning the signature's entries.
Degree naive_similarity(const SimilaritySignature& sig, const Term& t1, const Term& t2,
                        SimilarityMode mode);

// Independent one-sided matcher.
bool naive_matches(const Term& general, const Term& specific, Substitution* witness = nullptr);

}  // namespace termlat::oracle
