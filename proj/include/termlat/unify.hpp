// Unification as equation-system normalization.
//
// Three rule sets share one engine:
//   Crisp - Term Decomposition, Variable Erasure, Variable Elimination,
//           Equation Orientation (Herbrand / Martelli-Montanari).
//   Weak  - Term Decomposition relaxed to similar functors of equal arity
//           (Sessa's weak unification); the system carries a degree.
//   Full  - Weak with decomposition generalized to similar functors of any
//           arity through the argument mapping, plus Fuzzy Equation
//           Reorientation which puts the lower-arity side on the left.
//
// The default strategy picks the leftmost equation any rule applies to, and
// within one equation prefers Erasure > Orientation > Elimination >
// Reorientation > Decomposition. `applicable_rules` and `apply_rule` expose
// the individual rule instances so that callers can drive other strategies.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "termlat/signature.hpp"
#include "termlat/substitution.hpp"
#include "termlat/term.hpp"

namespace termlat {

enum class UnifyMode { Crisp, Weak, Full };
enum class UnifyStatus { Solved, Clash, OccursFail, DegreeZero };

std::string_view to_string(UnifyMode mode);
std::string_view to_string(UnifyStatus status);

struct Equation {
  Term lhs;
  Term rhs;

  std::string str() const;
  friend bool operator==(const Equation&, const Equation&) = default;
};

struct EquationSystem {
  std::vector<Equation> equations;
  Degree degree = 1.0;
};

enum class UnifyRule {
  TermDecomposition,
  FuzzyTermDecomposition,
  GenericWeakTermDecomposition,
  VariableErasure,
  VariableElimination,
  EquationOrientation,
  FuzzyEquationReorientation,
};

std::string_view rule_name(UnifyRule rule);

// An argument of the higher-arity side that has no counterpart under the
// argument mapping and was dropped by decomposition.
struct DroppedArgument {
  Symbol functor;
  std::size_t position = 0;  // 1-based
  Term term;
};

struct TraceStep {
  UnifyRule rule;
  Equation consumed;
  std::vector<Equation> produced;
  Degree degree_before = 1.0;
  Degree degree_after = 1.0;
  std::vector<DroppedArgument> dropped;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UnifyConfig {
  UnifyMode mode = UnifyMode::Crisp;
  bool occurs_check = true;
  // Ignored in Crisp mode.
  SimilaritySignature signature;

  // Throws ConfigError when Weak mode is given a signature relating functors
  // of different arities.
  void validate() const;
};

struct RuleInstance {
  std::size_t equation = 0;
  UnifyRule rule;
};

// Every rule instance applicable to `system`, in default-strategy order.
std::vector<RuleInstance> applicable_rules(const EquationSystem& system, const UnifyConfig& cfg);

// Fires one rule instance previously returned by applicable_rules.
std::pair<EquationSystem, TraceStep> apply_rule(const EquationSystem& system,
                                                const RuleInstance& instance,
                                                const UnifyConfig& cfg);

// One default-strategy step, or nothing when the system is in normal form.
std::optional<std::pair<EquationSystem, TraceStep>> step(const EquationSystem& system,
                                                         const UnifyConfig& cfg);

// Fuzzy Equation Reorientation: flips an equation between two non-variable
// terms whose left arity strictly exceeds the right one.
std::optional<Equation> reorient_check(const Equation& eq, const UnifyConfig& cfg);

struct UnifyOutcome {
  UnifyStatus status = UnifyStatus::Solved;
  // Solved only, in the order of the solved-form equations.
  Substitution substitution;
  // The accumulated degree when solved; 0 for every failure.
  Degree degree = 0.0;
  std::vector<TraceStep> trace;
  // Clash / DegreeZero: the stuck equation. OccursFail: X = t with X in t.
  std::optional<Equation> offending;
  std::vector<DroppedArgument> dropped;

  bool solved() const { return status == UnifyStatus::Solved; }
};

// Picks an index into the applicable rule instances.
using RuleChooser = std::function<std::size_t(const std::vector<RuleInstance>&)>;

UnifyOutcome unify(const Term& t1, const Term& t2, const UnifyConfig& cfg);
UnifyOutcome unify_with_strategy(const Term& t1, const Term& t2, const UnifyConfig& cfg,
                                 const RuleChooser& choose);

// Normalizes an arbitrary system; `unify` starts from {t1 = t2} at degree 1.
UnifyOutcome normalize(EquationSystem system, const UnifyConfig& cfg,
                       const RuleChooser& choose = {});

// Ceiling on derivation length: 10 * size^2 for a system of total size `size`.
std::size_t step_ceiling(std::size_t size);

}  // namespace termlat
