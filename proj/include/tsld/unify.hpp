#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsld/term.hpp"

namespace tsld {

// An equation set under rewriting, with the flag tracking whether the terms
// may still be unifiable. Once the flag drops to false it never returns to
// true, and the outcome can only be False or Wrong.
struct EquationSystem {
  std::vector<std::pair<Term, Term>> equations;
  bool flag = true;
};

std::string to_string(const EquationSystem& s);

// Tri-valued unifier result: a most general unifier, plain non-unifiability,
// or a type error (the terms can never have the same type).
struct UnificationOutcome {
  struct Mgu {
    Substitution subst;
  };
  struct False {};
  struct Wrong {};

  std::variant<Mgu, False, Wrong> value;

  bool is_mgu() const { return std::holds_alternative<Mgu>(value); }
  bool is_false() const { return std::holds_alternative<False>(value); }
  bool is_wrong() const { return std::holds_alternative<Wrong>(value); }
  const Substitution& mgu() const { return std::get<Mgu>(value).subst; }

  static UnificationOutcome make_mgu(Substitution s) { return {Mgu{std::move(s)}}; }
  static UnificationOutcome make_false() { return {False{}}; }
  static UnificationOutcome make_wrong() { return {Wrong{}}; }
};

std::string to_string(const UnificationOutcome& o);

// One rewrite step: which rule (1-11) fired, the equation it consumed, and
// the system after the step. A step ending in wrong has halted_wrong set and
// no meaningful `after` equations.
struct UnifTrace {
  struct Step {
    int rule;
    std::pair<Term, Term> equation;
    EquationSystem after;
    bool halted_wrong = false;
  };
  EquationSystem initial;
  std::vector<Step> steps;
};

// Renders the paper-style trace notation ({...}, true) ->k ({...}, false).
std::string to_string(const UnifTrace& t);

// The 11-rule typed unification algorithm. Deterministic strategy: the
// leftmost equation to which any rule applies, with the lowest-numbered
// applicable rule. Rules 2, 5, 6 and 7 halt with Wrong; termination with the
// flag down yields False; otherwise the solved set is returned as an mgu.
std::pair<UnificationOutcome, UnifTrace> typed_unify(const Term& t1, const Term& t2);

// Unifies two atoms' argument tuples as one equation system. Differing
// predicate symbols or arities yield False; the engine never pairs those.
std::pair<UnificationOutcome, UnifTrace> typed_unify_atoms(const PredAtom& a, const PredAtom& b);

// Classical Martelli-Montanari unification with occurs check. Kept
// independent of typed_unify; it is the differential-testing oracle.
std::optional<Substitution> mm_unify(const Term& t1, const Term& t2);
std::optional<Substitution> mm_unify_atoms(const PredAtom& a, const PredAtom& b);

// True iff some substitution gives both terms the same ground type. Shared
// variables are tracked, so f(X,X) vs f(1,a) is rejected.
bool same_type_possible(const Term& t1, const Term& t2);

}  // namespace tsld
