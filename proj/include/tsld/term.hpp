#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace tsld {

// Base types of constants, determined by lexical class.
enum class BaseType { Int, Float, Atom, String };

const char* to_string(BaseType t);

// Ground types: a base type or a tree type f(s1,...,sn), n >= 1.
struct GroundType;

struct GroundTypeTree {
  std::string functor;
  std::vector<GroundType> children;  // vector tolerates the incomplete type
};

struct GroundType {
  using Tree = GroundTypeTree;
  std::variant<BaseType, Tree> node;

  bool is_base() const { return std::holds_alternative<BaseType>(node); }
  BaseType base() const { return std::get<BaseType>(node); }
  const Tree& tree() const { return std::get<Tree>(node); }

  static GroundType base_type(BaseType b);
  static GroundType tree_type(std::string functor, std::vector<GroundType> children);
};

int compare(const GroundType& a, const GroundType& b);
bool operator==(const GroundType& a, const GroundType& b);
inline bool operator!=(const GroundType& a, const GroundType& b) { return !(a == b); }
inline bool operator<(const GroundType& a, const GroundType& b) { return compare(a, b) < 0; }

std::string to_string(const GroundType& t);

// Terms: variables, typed constants, and compound terms f(t1,...,tn), n >= 1.
// Arity-0 functors are constants. Two constants are equal iff both lexeme and
// base type are equal, so 1 (int) and 1.0 (float) are distinct.
struct Term {
  struct Var {
    std::string name;
  };
  struct Const {
    std::string lexeme;
    BaseType type;
  };
  struct Compound {
    std::string functor;
    std::vector<Term> args;  // non-empty
  };

  std::variant<Var, Const, Compound> node;

  bool is_var() const { return std::holds_alternative<Var>(node); }
  bool is_const() const { return std::holds_alternative<Const>(node); }
  bool is_compound() const { return std::holds_alternative<Compound>(node); }

  const Var& var() const { return std::get<Var>(node); }
  const Const& constant() const { return std::get<Const>(node); }
  const Compound& compound() const { return std::get<Compound>(node); }

  static Term make_var(std::string name);
  static Term make_const(std::string lexeme, BaseType type);
  static Term make_compound(std::string functor, std::vector<Term> args);

  // Lexical-class shorthands used all over the tests.
  static Term integer(long long v);
  static Term atom(std::string name);
};

int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
inline bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

bool is_ground(const Term& t);
std::size_t term_size(const Term& t);
bool occurs_in(const std::string& var, const Term& t);
void collect_vars(const Term& t, std::vector<std::string>& out);  // first-occurrence order
std::set<std::string> vars_of(const Term& t);

std::string to_string(const Term& t);

// The type of a ground term. Throws std::invalid_argument on variables.
GroundType ground_type_of(const Term& t);

// A finite map from variables to terms. No binding X -> X is stored.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<std::string, Term> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<std::string, Term>& bindings() const { return bindings_; }

  const Term* lookup(const std::string& var) const;
  void bind(const std::string& var, Term t);  // drops X -> X

  bool operator==(const Substitution& other) const { return bindings_ == other.bindings_; }

 private:
  std::map<std::string, Term> bindings_;
};

std::string to_string(const Substitution& s);

// Simultaneous application; unbound variables are left unchanged.
Term apply(const Substitution& s, const Term& t);

// compose(eta, theta) is eta . theta: apply(compose(eta, theta), t) ==
// apply(eta, apply(theta, t)).
Substitution compose(const Substitution& eta, const Substitution& theta);

// Predicate atoms p(t1,...,tn); arity 0 is allowed.
struct PredAtom {
  std::string pred;
  std::vector<Term> args;
};

int compare(const PredAtom& a, const PredAtom& b);
bool operator==(const PredAtom& a, const PredAtom& b);
inline bool operator!=(const PredAtom& a, const PredAtom& b) { return !(a == b); }
inline bool operator<(const PredAtom& a, const PredAtom& b) { return compare(a, b) < 0; }

PredAtom apply(const Substitution& s, const PredAtom& a);
bool is_ground(const PredAtom& a);
std::set<std::string> vars_of(const PredAtom& a);
std::string to_string(const PredAtom& a);

// A clause H :- B1,...,Bn. Facts have an empty body. Ids are 1-based source
// positions, rendered "c1", "c2", ...
struct Clause {
  int id = 0;
  PredAtom head;
  std::vector<PredAtom> body;
};

bool operator==(const Clause& a, const Clause& b);
std::set<std::string> vars_of(const Clause& c);
Clause apply(const Substitution& s, const Clause& c);
std::string to_string(const Clause& c);

// A query: a sequence of atoms plus the false marker recording that a FALSE
// unification outcome occurred earlier in the derivation. Empty atoms with
// marker unset is the empty query (success); with marker set it is `false`.
struct Query {
  std::vector<PredAtom> atoms;
  bool false_marker = false;

  bool is_empty_success() const { return atoms.empty() && !false_marker; }
  bool is_terminal_false() const { return atoms.empty() && false_marker; }
};

bool operator==(const Query& a, const Query& b);
Query apply(const Substitution& s, const Query& q);
std::set<std::string> vars_of(const Query& q);
std::string to_string(const Query& q);

struct Program {
  std::vector<Clause> clauses;

  const Clause* clause_by_id(int id) const;
};

bool operator==(const Program& a, const Program& b);
std::string to_string(const Program& p);

// Restrict a substitution to a set of variables.
Substitution restrict_to(const Substitution& s, const std::set<std::string>& vars);

// Rename the clause's variables so that none is in `avoid`. Fresh names are
// original name + "_k" with the counter skipping collisions.
Clause rename_apart(const Clause& c, const std::set<std::string>& avoid);

}  // namespace tsld
