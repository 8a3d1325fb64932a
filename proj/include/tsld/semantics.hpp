#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tsld/engine.hpp"
#include "tsld/kleene.hpp"
#include "tsld/term.hpp"

namespace tsld {

// Semantic values are free trees over typed constants, so ground terms act as
// their own denotations and ground types as the semantic domains.
using SemValue = Term;       // ground terms only
using SemDomain = GroundType;

// The domain a value belongs to.
SemDomain domain_of(const SemValue& v);

// A state maps variables to semantic values.
using State = std::map<std::string, SemValue>;

// A context assigns a domain to each variable.
using Context = std::map<std::string, SemDomain>;

struct PredKey {
  std::string pred;
  std::size_t arity;
  auto operator<=>(const PredKey&) const = default;
};

// Per-predicate domain signature (a union of domain tuples) plus the set of
// value tuples mapped to true. A tuple inside the signature but outside the
// truth set is false; a tuple outside the signature is wrong.
struct Interpretation {
  struct PredInterp {
    std::set<std::vector<SemDomain>> signature;
    std::set<std::vector<SemValue>> truth;
  };
  std::map<PredKey, PredInterp> preds;
};

// Ground atoms produced by fixpoint iteration; `truncated` is set when an
// enumeration or iteration bound was hit.
struct AtomSet {
  std::set<PredAtom> atoms;  // all ground
  bool truncated = false;
};

// Enumeration bounds for the desk-scale checkers. Value pools are the
// canonical constants below plus every constant in the program, and tree
// values over the program's functors up to `tree_depth`.
struct EnumBounds {
  int int_min = -2;
  int int_max = 2;
  std::vector<std::string> float_lexemes{"-1.0", "0.0", "1.5"};
  std::vector<std::string> atom_names{"a", "b", "c"};
  std::vector<std::string> string_lexemes{"s", "t"};
  int tree_depth = 2;
  std::size_t max_tree_values = 64;     // per pool
  std::size_t max_states = 100000;      // per model check
  std::size_t max_interpretations = 4096;
  int tp_iter_bound = 32;
};

// The ground-value pool derived from a program and bounds.
struct ValuePool {
  std::vector<SemValue> values;
  std::vector<SemDomain> domains;  // deduplicated domains of the values
  bool truncated = false;
};

ValuePool build_value_pool(const Program& p, const EnumBounds& bounds);

// Evaluation. eval_term throws on a variable not covered by the state.
SemValue eval_term(const Term& t, const State& s);
TruthValue eval_atom(const PredAtom& a, const Interpretation& i, const State& s);
TruthValue eval_query(const Query& q, const Interpretation& i, const State& s);
TruthValue eval_clause(const Clause& c, const Interpretation& i, const State& s);

// Sigma complies with Delta: every bound value lies in the variable's domain.
bool complies(const State& s, const Context& d);

// True iff every pool-enumerated state complying with the context evaluates
// the expression to true. Desk-scale approximation of the model relation.
bool models(const Interpretation& i, const Clause& c, const Context& d, const ValuePool& pool);
bool models(const Interpretation& i, const Query& q, const Context& d, const ValuePool& pool);

// Ground immediate consequence operator over the bounded term pool.
AtomSet tp_step(const Program& p, const AtomSet& s, const ValuePool& pool);
AtomSet tp_fixpoint(const Program& p, const EnumBounds& bounds);
AtomSet tp_fixpoint(const Program& p, const ValuePool& pool, int iter_bound);

// Interpretation whose truth set is exactly the atom set and whose signature
// is the minimal cover of its atoms. extra_sigs widens predicates absent from
// the atom set.
Interpretation derived_interpretation(
    const AtomSet& s,
    const std::map<PredKey, Interpretation::PredInterp>& extra_sigs = {});

enum class TypedVerdict { IllTyped, WellTyped, Unknown };

const char* to_string(TypedVerdict v);

struct TypedCheckResult {
  TypedVerdict verdict;
  // Witness when WellTyped: the modeling interpretation and per-clause
  // contexts. When IllTyped, a clause id that no candidate could model.
  std::optional<Interpretation> witness;
  std::map<int, Context> witness_contexts;
  std::optional<int> violated_clause;
  bool truncated = false;
};

TypedCheckResult is_ill_typed_program(const Program& p, const EnumBounds& bounds);
TypedCheckResult is_ill_typed_query(const Program& p, const Query& q, const EnumBounds& bounds);

// T1 subset of T2, and on equality F1 subset of F2, with the false sets read
// off the signatures over the pool.
bool is_smaller(const Interpretation& i1, const Interpretation& i2, const ValuePool& pool);

// Blamed-clause property: some body atom of the clause mismatches every
// fixpoint atom of its predicate in some argument position, for every
// enumerated state. `corrected` selects the "!=" reading of the mismatch; the
// literal "==" reading is kept selectable.
bool check_lemma_blamed_clause(const Program& p, int blamed_id, const EnumBounds& bounds,
                               bool corrected = true);

// Every enumerated (interpretation, context) modeling P also models each
// resultant of the derivation, with the resultant's own variables given some
// enumerated context.
bool check_resultant_soundness(const Program& p, const Derivation& d, const EnumBounds& bounds);

struct SoundnessReport {
  bool success_clause_ok = true;   // answers are modeled by every model of P
  bool program_clause_ok = true;   // operational program error implies not well-typed
  bool query_clause_ok = true;     // operational query error implies not well-typed
  std::vector<std::string> violations;

  bool ok() const { return success_clause_ok && program_clause_ok && query_clause_ok; }
};

SoundnessReport check_soundness_theorem(const Program& p, const Query& q,
                                        const EnumBounds& bounds);

}  // namespace tsld
