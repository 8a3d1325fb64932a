#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "tsld/term.hpp"
#include "tsld/unify.hpp"

namespace tsld {

// Result of resolving the selected atom of a query against one clause.
struct StepResult {
  struct Progress {
    Query next;
    int clause_id;
    Substitution mgu;
  };
  // The unifier returned False: the selected atom is dropped, the body is not
  // inserted and no substitution is applied; the next query carries the marker.
  struct FalseProgress {
    Query next;
    int clause_id;
  };
  struct WrongHalt {
    int clause_id;
  };
  struct NoApplicableClause {};

  std::variant<Progress, FalseProgress, WrongHalt, NoApplicableClause> value;

  bool is_progress() const { return std::holds_alternative<Progress>(value); }
  bool is_false_progress() const { return std::holds_alternative<FalseProgress>(value); }
  bool is_wrong_halt() const { return std::holds_alternative<WrongHalt>(value); }
  const Progress& progress() const { return std::get<Progress>(value); }
  const FalseProgress& false_progress() const { return std::get<FalseProgress>(value); }
};

enum class DerivationOutcome { Success, Failed, Erroneous, DepthExceeded };

struct Derivation {
  std::vector<std::pair<Query, StepResult>> steps;
  DerivationOutcome outcome;
  // Composition of the step mgus restricted to the original query's
  // variables; meaningful for Success.
  Substitution answer;
};

// One-element holder so a node can own children of its own (still incomplete)
// type by value.
template <typename T>
class Box {
 public:
  Box() : items_(1) {}
  Box(T t) { items_.push_back(std::move(t)); }
  Box& operator=(T t) {
    items_.clear();
    items_.push_back(std::move(t));
    return *this;
  }
  T& get() { return items_.front(); }
  const T& get() const { return items_.front(); }
  operator T&() { return items_.front(); }
  operator const T&() const { return items_.front(); }

 private:
  std::vector<T> items_;
};

// TSLD search tree under the leftmost selection rule. A node is either a
// query with one child per applicable clause, or a terminal.
struct TsldTree {
  enum class Terminal { None, Success, False, Wrong, Depth };

  struct Edge {
    int clause_id;
    bool has_mgu;       // Progress edges carry the step's mgu
    Substitution mgu;
    Box<TsldTree> child;
  };

  Terminal terminal = Terminal::None;
  Query query;               // valid for non-terminal nodes
  int selected_index = -1;   // atom chosen by the selection rule
  std::vector<Edge> children;

  bool is_terminal() const { return terminal != Terminal::None; }
};

enum class TreeClassification { Successful, FinitelyErroneous, FinitelyFailed, DepthBounded };

const char* to_string(TreeClassification c);

enum class DiagnosisVerdict { TypeErrorInProgram, TypeErrorInQuery, NoTypeError, UnknownDepthBounded };

const char* to_string(DiagnosisVerdict v);

struct Diagnosis {
  std::set<int> blamed;
  DiagnosisVerdict verdict;
  std::vector<std::string> evidence;  // rendered derivations supporting the verdict
};

// theta(Q1) <- Q2 for a Progress step Q1 => theta(Q2).
struct Resultant {
  Query head;
  Query body;
};

std::string to_string(const Resultant& r);

// Leftmost selection; the false marker is never selected. Throws on an empty
// query.
std::size_t select_atom(const Query& q);

// Ids of clauses whose head matches the atom's predicate symbol and arity,
// in program order.
std::vector<int> applicable_clauses(const Program& p, const PredAtom& a);

// One TSLD-derivation step of q against the given clause (renamed apart from
// q first). Throws std::invalid_argument if the clause is not applicable.
StepResult tsld_step(const Program& p, const Query& q, int clause_id);

// Iterates tsld_step along the given clause choices until the empty query,
// the terminal false, wrong, exhausted choices, or the depth bound.
Derivation derive(const Program& p, const Query& q, const std::vector<int>& clause_choice,
                  int depth_bound);

// Breadth-complete expansion under leftmost selection; nodes past the bound
// become Depth terminals. An atom with no applicable clause is a False
// terminal.
TsldTree build_tree(const Program& p, const Query& q, int depth_bound);

TreeClassification classify(const TsldTree& t);

// One fresh-variable atom per head predicate, in first-head-occurrence order.
Query generic_query(const Program& p);

// A clause is blamed iff it labels at least one edge and every root-to-leaf
// branch through one of its edges ends in wrong. The tree must have no Depth
// terminals.
std::set<int> blamed_clauses(const TsldTree& t);

Diagnosis diagnose_program(const Program& p, int depth_bound);
Diagnosis diagnose_query(const Program& p, const Query& q, int depth_bound);

// One resultant per step; the derivation must contain only Progress steps.
std::vector<Resultant> resultants(const Derivation& d);

struct SolveResult {
  std::vector<Substitution> answers;
  TreeClassification classification;
  Diagnosis diagnosis;
  TsldTree tree;
};

// Depth-first left-to-right answer collection plus diagnosis.
SolveResult solve(const Program& p, const Query& q, int depth_bound, int max_answers);

}  // namespace tsld
