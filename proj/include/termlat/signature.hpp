// Similarity signatures: a fuzzy relation on functors, each related pair
// carrying a degree in (0,1] and an injective argument-position mapping from
// the lower-arity functor into the higher-arity one.
//
// Reflexive pairs (f ~ f at degree 1, identity mapping) are implicit. Symmetry
// is implicit too: an equal-arity entry answers reverse lookups with the
// inverse mapping. For unequal arities the lookup reports which side is the
// lower-arity one and leaves the orientation to the caller.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termlat/term.hpp"

namespace termlat {

using Degree = double;

enum class TNorm { Min, Product };

Degree tnorm_and(TNorm tnorm, Degree x, Degree y);

// Injective map {1..m} -> {1..n}. Stored 1-based to match how mappings are
// written in signature files.
class ArgMapping {
 public:
  ArgMapping() = default;
  explicit ArgMapping(std::vector<std::size_t> images) : images_(std::move(images)) {}

  static ArgMapping identity(std::size_t arity);

  // Number of mapped (lower-arity) positions.
  std::size_t size() const { return images_.size(); }
  // 1-based position in the higher-arity functor for 1-based position i.
  std::size_t image(std::size_t i) const { return images_[i - 1]; }
  const std::vector<std::size_t>& images() const { return images_; }

  bool is_identity() const;
  bool is_injective() const;
  // Only meaningful for permutations.
  ArgMapping inverse() const;

  // "[1->2, 2->3]"
  std::string str() const;

  friend bool operator==(const ArgMapping&, const ArgMapping&) = default;

 private:
  std::vector<std::size_t> images_;
};

struct SimilarityEntry {
  Symbol lo;
  Symbol hi;
  Degree degree = 1.0;
  ArgMapping mapping;

  std::string str() const;
};

struct SimilarityMatch {
  Degree degree = 0.0;
  // Maps positions of the lower-arity side into the other side. With equal
  // arities it always maps positions of the first queried symbol.
  ArgMapping mapping;
  // The first queried symbol is the lower-arity side (always true for equal
  // arities).
  bool first_is_lower = true;
};

class SignatureError : public std::runtime_error {
 public:
  SignatureError(const std::string& message, std::size_t line, std::size_t column);

  // 1-based; 0 when the error is not tied to a file position.
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class SimilaritySignature {
 public:
  SimilaritySignature() = default;
  explicit SimilaritySignature(TNorm tnorm) : tnorm_(tnorm) {}

  // Validates and stores. Throws SignatureError naming the entry.
  void add(SimilarityEntry entry);

  std::optional<SimilarityMatch> lookup(const Symbol& f, const Symbol& g) const;

  TNorm tnorm() const { return tnorm_; }
  void set_tnorm(TNorm tnorm) { tnorm_ = tnorm; }
  Degree conj(Degree x, Degree y) const { return tnorm_and(tnorm_, x, y); }

  const std::vector<SimilarityEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // Every entry relates functors of equal arity.
  bool equal_arity_only() const;
  // Every entry relates functors of equal arity with the identity mapping.
  bool identity_mappings_only() const;

 private:
  TNorm tnorm_ = TNorm::Min;
  std::vector<SimilarityEntry> entries_;
  std::map<std::pair<Symbol, Symbol>, std::size_t> index_;
};

// Parses the line-oriented signature format:
//
//   # comment
//   tnorm min|product
//   sim NAME/ARITY NAME/ARITY : DEGREE [i->j, ...]
SimilaritySignature load_signature(std::string_view text);
SimilaritySignature load_signature_file(const std::string& path);

std::string print_signature(const SimilaritySignature& sig);

enum class SimilarityMode {
  // Related functors must have equal arity; anything else has degree 0.
  EqualArity,
  // Unequal arities align through the mapping; unmapped arguments of the
  // higher-arity term are ignored.
  Mapped,
};

Degree term_similarity(const SimilaritySignature& sig, const Term& t1, const Term& t2,
                       SimilarityMode mode);

struct TransitivityViolation {
  Symbol a;
  Symbol b;
  Symbol c;
  Degree ab = 0.0;
  Degree bc = 0.0;
  Degree ac = 0.0;
};

// Triples with sim(a,c) < min(sim(a,b), sim(b,c)).
std::vector<TransitivityViolation> transitivity_violations(const SimilaritySignature& sig);

}  // namespace termlat
