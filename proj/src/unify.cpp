#include "termlat/unify.hpp"

#include <algorithm>

#include "termlat/syntax.hpp"

namespace termlat {

std::string_view to_string(UnifyMode mode) {
  switch (mode) {
    case UnifyMode::Crisp: return "crisp";
    case UnifyMode::Weak: return "weak";
    case UnifyMode::Full: return "full";
  }
  return "?";
}

std::string_view to_string(UnifyStatus status) {
  switch (status) {
    case UnifyStatus::Solved: return "SOLVED";
    case UnifyStatus::Clash: return "CLASH";
    case UnifyStatus::OccursFail: return "OCCURS_FAIL";
    case UnifyStatus::DegreeZero: return "DEGREE_ZERO";
  }
  return "?";
}

std::string_view rule_name(UnifyRule rule) {
  switch (rule) {
    case UnifyRule::TermDecomposition: return "Term Decomposition";
    case UnifyRule::FuzzyTermDecomposition: return "Fuzzy Term Decomposition";
    case UnifyRule::GenericWeakTermDecomposition: return "Generic Weak Term Decomposition";
    case UnifyRule::VariableErasure: return "Variable Erasure";
    case UnifyRule::VariableElimination: return "Variable Elimination";
    case UnifyRule::EquationOrientation: return "Equation Orientation";
    case UnifyRule::FuzzyEquationReorientation: return "Fuzzy Equation Reorientation";
  }
  return "?";
}

std::string Equation::str() const { return print_term(lhs) + " = " + print_term(rhs); }

void UnifyConfig::validate() const {
  if (mode == UnifyMode::Weak && !signature.equal_arity_only()) {
    for (const SimilarityEntry& e : signature.entries()) {
      if (e.lo.arity != e.hi.arity) {
        throw ConfigError("weak mode requires equal-arity similarities, but the signature has '" +
                          e.str() + "'");
      }
    }
  }
}

std::size_t step_ceiling(std::size_t size) { return 10 * size * size; }

namespace {

bool occurs_elsewhere(const Variable& x, const EquationSystem& system, std::size_t skip) {
  for (std::size_t j = 0; j < system.equations.size(); ++j) {
    if (j == skip) continue;
    const Equation& e = system.equations[j];
    if (occurs_in(x, e.lhs) || occurs_in(x, e.rhs)) return true;
  }
  return false;
}

// Degree and argument alignment for decomposing lhs = rhs, if the functors
// are related under the mode. The mapping always maps lhs positions to rhs
// positions.
std::optional<SimilarityMatch> decomposition_match(const Equation& eq, const UnifyConfig& cfg) {
  const Symbol f = eq.lhs.symbol();
  const Symbol g = eq.rhs.symbol();
  switch (cfg.mode) {
    case UnifyMode::Crisp:
      if (f != g) return std::nullopt;
      return SimilarityMatch{1.0, ArgMapping::identity(f.arity), true};
    case UnifyMode::Weak: {
      if (f.arity != g.arity) return std::nullopt;
      return cfg.signature.lookup(f, g);
    }
    case UnifyMode::Full: {
      if (f.arity > g.arity) return std::nullopt;
      auto m = cfg.signature.lookup(f, g);
      if (m && !m->first_is_lower) return std::nullopt;
      return m;
    }
  }
  return std::nullopt;
}

UnifyRule decomposition_rule(UnifyMode mode) {
  switch (mode) {
    case UnifyMode::Crisp: return UnifyRule::TermDecomposition;
    case UnifyMode::Weak: return UnifyRule::FuzzyTermDecomposition;
    case UnifyMode::Full: return UnifyRule::GenericWeakTermDecomposition;
  }
  return UnifyRule::TermDecomposition;
}

// Appends the rules applicable to equation i in priority order. At most one
// rule ever applies to a given equation, but the loop shape keeps the
// priority list explicit.
void rules_for(const EquationSystem& system, std::size_t i, const UnifyConfig& cfg,
               std::vector<RuleInstance>& out) {
  const Equation& eq = system.equations[i];
  if (eq.lhs.is_var() && eq.rhs.is_var() && eq.lhs.name() == eq.rhs.name()) {
    out.push_back({i, UnifyRule::VariableErasure});
    return;
  }
  if (!eq.lhs.is_var() && eq.rhs.is_var()) {
    out.push_back({i, UnifyRule::EquationOrientation});
    return;
  }
  if (eq.lhs.is_var()) {
    const Variable x = eq.lhs.variable();
    // A cyclic binding is never propagated: with the occurs-check it is a
    // failure, without it elimination would not terminate.
    if (!occurs_in(x, eq.rhs) && occurs_elsewhere(x, system, i)) {
      out.push_back({i, UnifyRule::VariableElimination});
    }
    return;
  }
  if (reorient_check(eq, cfg)) {
    out.push_back({i, UnifyRule::FuzzyEquationReorientation});
    return;
  }
  if (decomposition_match(eq, cfg)) out.push_back({i, decomposition_rule(cfg.mode)});
}

}  // namespace

std::optional<Equation> reorient_check(const Equation& eq, const UnifyConfig& cfg) {
  if (cfg.mode != UnifyMode::Full || eq.lhs.is_var() || eq.rhs.is_var()) return std::nullopt;
  if (eq.lhs.arity() <= eq.rhs.arity()) return std::nullopt;
  return Equation{eq.rhs, eq.lhs};
}

std::vector<RuleInstance> applicable_rules(const EquationSystem& system, const UnifyConfig& cfg) {
  std::vector<RuleInstance> out;
  for (std::size_t i = 0; i < system.equations.size(); ++i) rules_for(system, i, cfg, out);
  return out;
}

std::pair<EquationSystem, TraceStep> apply_rule(const EquationSystem& system,
                                                const RuleInstance& instance,
                                                const UnifyConfig& cfg) {
  const std::size_t i = instance.equation;
  const Equation& eq = system.equations.at(i);
  TraceStep trace{instance.rule, eq, {}, system.degree, system.degree, {}};
  EquationSystem next;
  next.degree = system.degree;

  auto copy_except = [&](std::size_t skip, const std::vector<Equation>& insert) {
    next.equations.reserve(system.equations.size() + insert.size());
    for (std::size_t j = 0; j < system.equations.size(); ++j) {
      if (j == skip) {
        next.equations.insert(next.equations.end(), insert.begin(), insert.end());
      } else {
        next.equations.push_back(system.equations[j]);
      }
    }
  };

  switch (instance.rule) {
    case UnifyRule::VariableErasure:
      copy_except(i, {});
      break;

    case UnifyRule::EquationOrientation:
    case UnifyRule::FuzzyEquationReorientation:
      trace.produced = {Equation{eq.rhs, eq.lhs}};
      copy_except(i, trace.produced);
      break;

    case UnifyRule::VariableElimination: {
      Substitution s;
      s.bind(eq.lhs.variable(), eq.rhs);
      next.equations.reserve(system.equations.size());
      for (std::size_t j = 0; j < system.equations.size(); ++j) {
        if (j == i) {
          next.equations.push_back(eq);
          continue;
        }
        const Equation& other = system.equations[j];
        Equation rewritten{apply(s, other.lhs), apply(s, other.rhs)};
        if (!rewritten.lhs.same_node(other.lhs) || !rewritten.rhs.same_node(other.rhs)) {
          trace.produced.push_back(rewritten);
        }
        next.equations.push_back(std::move(rewritten));
      }
      trace.produced.push_back(eq);
      break;
    }

    case UnifyRule::TermDecomposition:
    case UnifyRule::FuzzyTermDecomposition:
    case UnifyRule::GenericWeakTermDecomposition: {
      auto match = decomposition_match(eq, cfg);
      if (!match) throw std::logic_error("decomposition applied to unrelated functors");
      const std::size_t m = eq.lhs.arity();
      std::vector<bool> used(eq.rhs.arity(), false);
      for (std::size_t k = 1; k <= m; ++k) {
        const std::size_t j = match->mapping.image(k);
        used[j - 1] = true;
        trace.produced.push_back({eq.lhs.arg(k - 1), eq.rhs.arg(j - 1)});
      }
      for (std::size_t j = 0; j < used.size(); ++j) {
        if (!used[j]) trace.dropped.push_back({eq.rhs.symbol(), j + 1, eq.rhs.arg(j)});
      }
      if (cfg.mode != UnifyMode::Crisp) {
        next.degree = cfg.signature.conj(system.degree, match->degree);
      }
      copy_except(i, trace.produced);
      break;
    }
  }
  trace.degree_after = next.degree;
  return {std::move(next), std::move(trace)};
}

std::optional<std::pair<EquationSystem, TraceStep>> step(const EquationSystem& system,
                                                         const UnifyConfig& cfg) {
  std::vector<RuleInstance> rules;
  for (std::size_t i = 0; i < system.equations.size() && rules.empty(); ++i) {
    rules_for(system, i, cfg, rules);
  }
  if (rules.empty()) return std::nullopt;
  return apply_rule(system, rules.front(), cfg);
}

namespace {

std::size_t system_size(const EquationSystem& system) {
  std::size_t n = 0;
  for (const Equation& e : system.equations) n += e.lhs.size() + e.rhs.size();
  return n;
}

void diagnose(const EquationSystem& system, const UnifyConfig& cfg, UnifyOutcome& out) {
  for (const Equation& e : system.equations) {
    if (!e.lhs.is_var() && !e.rhs.is_var()) {
      // With no similarity entries a fuzzy mode is crisp unification.
      const bool fuzzy = cfg.mode != UnifyMode::Crisp && !cfg.signature.entries().empty();
      out.status = fuzzy ? UnifyStatus::DegreeZero : UnifyStatus::Clash;
      out.offending = e;
      out.degree = 0.0;
      return;
    }
  }
  std::vector<Variable> lhs_vars;
  bool distinct = true;
  for (const Equation& e : system.equations) {
    const Variable x = e.lhs.variable();
    if (std::find(lhs_vars.begin(), lhs_vars.end(), x) != lhs_vars.end()) distinct = false;
    lhs_vars.push_back(x);
    if (cfg.occurs_check && occurs_in(x, e.rhs)) {
      out.status = UnifyStatus::OccursFail;
      out.offending = e;
      out.degree = 0.0;
      return;
    }
  }
  if (!distinct) {
    // Only reachable without the occurs-check: two cyclic bindings of the
    // same variable, which needs rational-term unification.
    for (const Equation& e : system.equations) {
      if (occurs_in(e.lhs.variable(), e.rhs)) {
        out.status = UnifyStatus::OccursFail;
        out.offending = e;
        out.degree = 0.0;
        return;
      }
    }
  }
  out.status = UnifyStatus::Solved;
  out.degree = system.degree;
  for (const Equation& e : system.equations) out.substitution.bind(e.lhs.variable(), e.rhs);
}

}  // namespace

UnifyOutcome normalize(EquationSystem system, const UnifyConfig& cfg, const RuleChooser& choose) {
  cfg.validate();
  UnifyOutcome out;
  const std::size_t ceiling = std::max<std::size_t>(step_ceiling(system_size(system)), 16);
  for (;;) {
    std::optional<std::pair<EquationSystem, TraceStep>> next;
    if (choose) {
      std::vector<RuleInstance> rules = applicable_rules(system, cfg);
      if (!rules.empty()) {
        const std::size_t k = choose(rules);
        next = apply_rule(system, rules.at(k), cfg);
      }
    } else {
      next = step(system, cfg);
    }
    if (!next) break;
    system = std::move(next->first);
    TraceStep& t = next->second;
    out.dropped.insert(out.dropped.end(), t.dropped.begin(), t.dropped.end());
    out.trace.push_back(std::move(t));
    if (out.trace.size() > ceiling) {
      throw std::logic_error("unification exceeded " + std::to_string(ceiling) + " steps");
    }
  }
  diagnose(system, cfg, out);
  return out;
}

UnifyOutcome unify(const Term& t1, const Term& t2, const UnifyConfig& cfg) {
  return normalize(EquationSystem{{Equation{t1, t2}}, 1.0}, cfg);
}

UnifyOutcome unify_with_strategy(const Term& t1, const Term& t2, const UnifyConfig& cfg,
                                 const RuleChooser& choose) {
  return normalize(EquationSystem{{Equation{t1, t2}}, 1.0}, cfg, choose);
}

}  // namespace termlat
