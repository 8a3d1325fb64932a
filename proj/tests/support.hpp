#pragma once

// Shared randomized generators and reference oracles for the test suites.
// Everything is seeded deterministically so failures reproduce.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "tsld/engine.hpp"
#include "tsld/parser.hpp"
#include "tsld/semantics.hpp"
#include "tsld/term.hpp"
#include "tsld/unify.hpp"

namespace testsupport {

using tsld::BaseType;
using tsld::Term;

inline const std::vector<std::string> kVarNames = {"X", "Y", "Z", "W"};
inline const std::vector<std::string> kFunctors = {"f", "g", "h"};

inline Term random_const(std::mt19937& rng) {
  switch (rng() % 4) {
    case 0: return Term::integer(static_cast<long long>(rng() % 5) - 2);
    case 1: return Term::make_const(rng() % 2 ? "1.5" : "0.0", BaseType::Float);
    case 2: return Term::atom(std::string(1, static_cast<char>('a' + rng() % 3)));
    default: return Term::make_const(rng() % 2 ? "s" : "t", BaseType::String);
  }
}

// Random term with depth <= max_depth, variables drawn from kVarNames.
inline Term random_term(std::mt19937& rng, int max_depth) {
  unsigned pick = rng() % 10;
  if (max_depth <= 0 || pick < 3) return random_const(rng);
  if (pick < 6) return Term::make_var(kVarNames[rng() % kVarNames.size()]);
  std::size_t arity = 1 + rng() % 3;
  std::vector<Term> args;
  for (std::size_t i = 0; i < arity; ++i) args.push_back(random_term(rng, max_depth - 1));
  return Term::make_compound(kFunctors[rng() % kFunctors.size()], std::move(args));
}

inline tsld::Substitution random_substitution(std::mt19937& rng) {
  tsld::Substitution s;
  std::size_t n = rng() % (kVarNames.size() + 1);
  for (std::size_t i = 0; i < n; ++i) {
    Term t = rng() % 4 == 0 ? Term::make_var(kVarNames[rng() % kVarNames.size()])
                            : random_term(rng, 2);
    if (rng() % 4 == 0) t = random_const(rng);
    s.bind(kVarNames[rng() % kVarNames.size()], t);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Reference SLD engine (untyped, Martelli-Montanari based): depth-first,
// leftmost selection, clause order. Serves as an independent answer oracle.
inline void sld_solve(const tsld::Program& p, const tsld::Query& q,
                      const tsld::Substitution& acc, const std::set<std::string>& query_vars,
                      int depth, std::vector<std::string>& answers) {
  if (q.atoms.empty()) {
    answers.push_back(to_string(restrict_to(acc, query_vars)));
    return;
  }
  if (depth <= 0) return;
  const tsld::PredAtom& sel = q.atoms.front();
  for (const tsld::Clause& c : p.clauses) {
    if (c.head.pred != sel.pred || c.head.args.size() != sel.args.size()) continue;
    tsld::Clause renamed = rename_apart(c, vars_of(q));
    auto mgu = tsld::mm_unify_atoms(sel, renamed.head);
    if (!mgu) continue;
    tsld::Query next;
    for (const tsld::PredAtom& b : renamed.body) next.atoms.push_back(apply(*mgu, b));
    for (std::size_t i = 1; i < q.atoms.size(); ++i) next.atoms.push_back(apply(*mgu, q.atoms[i]));
    sld_solve(p, next, compose(*mgu, acc), query_vars, depth - 1, answers);
  }
}

inline std::vector<std::string> sld_answers(const tsld::Program& p, const tsld::Query& q,
                                            int depth) {
  std::vector<std::string> out;
  sld_solve(p, q, tsld::Substitution{}, vars_of(q), depth, out);
  return out;
}

inline bool tree_has_wrong(const tsld::TsldTree& t) {
  if (t.is_terminal()) return t.terminal == tsld::TsldTree::Terminal::Wrong;
  for (const auto& e : t.children)
    if (tree_has_wrong(e.child)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Random program generator. Predicates are ordered, every predicate gets at
// least one clause, and bodies only call earlier predicates, so every search
// tree is finite. `typed_positions` fixes one base type per predicate
// position, which keeps most programs free of type clashes.
inline tsld::Program random_program(std::mt19937& rng, bool typed_positions,
                                    bool allow_functors) {
  struct GenPred {
    std::string name;
    std::size_t arity;
  };
  std::vector<GenPred> preds;
  std::size_t npreds = 2 + rng() % 2;
  for (std::size_t i = 0; i < npreds; ++i)
    preds.push_back({std::string(1, static_cast<char>('p' + i)), rng() % 3});

  auto position_const = [&](std::size_t pred, std::size_t pos) -> Term {
    unsigned which = typed_positions ? (pred * 3 + pos) % 3 : rng() % 3;
    switch (which) {
      case 0: return Term::integer(static_cast<long long>(rng() % 3));
      case 1: return Term::atom(std::string(1, static_cast<char>('a' + rng() % 2)));
      default: return Term::make_const("1.5", BaseType::Float);
    }
  };

  const std::vector<std::string> vars = {"X", "Y", "Z"};
  auto make_arg = [&](std::size_t pred, std::size_t pos) -> Term {
    unsigned pick = rng() % 10;
    if (pick < 4) return Term::make_var(vars[rng() % vars.size()]);
    if (allow_functors && pick == 9)
      return Term::make_compound("f", {position_const(pred, pos)});
    return position_const(pred, pos);
  };

  tsld::Program p;
  std::size_t extras = rng() % 3;
  std::size_t nclauses = npreds + extras;  // at most 5
  for (std::size_t i = 0; i < nclauses; ++i) {
    std::size_t hi = i < npreds ? i : rng() % npreds;
    tsld::Clause c;
    c.id = static_cast<int>(i) + 1;
    c.head.pred = preds[hi].name;
    for (std::size_t j = 0; j < preds[hi].arity; ++j) c.head.args.push_back(make_arg(hi, j));
    if (hi > 0) {
      std::size_t nbody = rng() % 3;
      for (std::size_t b = 0; b < nbody; ++b) {
        std::size_t bi = rng() % hi;  // strictly earlier predicate
        tsld::PredAtom atom{preds[bi].name, {}};
        for (std::size_t j = 0; j < preds[bi].arity; ++j) atom.args.push_back(make_arg(bi, j));
        c.body.push_back(std::move(atom));
      }
    }
    p.clauses.push_back(std::move(c));
  }
  return p;
}

inline tsld::Query random_ground_query(std::mt19937& rng, const tsld::Program& p) {
  tsld::Query q;
  if (p.clauses.empty()) return q;
  const tsld::Clause& c = p.clauses[rng() % p.clauses.size()];
  tsld::PredAtom a{c.head.pred, {}};
  for (std::size_t j = 0; j < c.head.args.size(); ++j) {
    switch (rng() % 3) {
      case 0: a.args.push_back(Term::integer(static_cast<long long>(rng() % 3))); break;
      case 1:
        a.args.push_back(Term::atom(std::string(1, static_cast<char>('a' + rng() % 2))));
        break;
      default: a.args.push_back(Term::make_const("1.5", BaseType::Float)); break;
    }
  }
  q.atoms.push_back(std::move(a));
  return q;
}

// Reduced enumeration bounds that keep the model search fast on the random
// corpus.
inline tsld::EnumBounds small_bounds() {
  tsld::EnumBounds b;
  b.int_min = 0;
  b.int_max = 2;
  b.float_lexemes = {"1.5"};
  b.atom_names = {"a", "b"};
  b.string_lexemes = {};
  b.tree_depth = 1;
  return b;
}

// Twelve ground terms covering every base type plus small trees, for the
// brute-force refutation of "some substitution equalizes the types".
inline const std::vector<Term>& ground_pool() {
  static const std::vector<Term> pool = {
      Term::integer(0),
      Term::integer(1),
      Term::make_const("0.0", BaseType::Float),
      Term::make_const("1.5", BaseType::Float),
      Term::atom("a"),
      Term::atom("b"),
      Term::make_const("s", BaseType::String),
      Term::make_const("t", BaseType::String),
      tsld::parse_term("f(1)"),
      tsld::parse_term("f(a)"),
      tsld::parse_term("g(1,a)"),
      tsld::parse_term("h(f(1))"),
  };
  return pool;
}

// Does any pool-valued substitution for the terms' variables give both terms
// the same ground type?
inline bool equalizing_substitution_exists(const Term& t1, const Term& t2) {
  std::vector<std::string> names;
  {
    std::set<std::string> vars = vars_of(t1);
    for (const auto& v : vars_of(t2)) vars.insert(v);
    names.assign(vars.begin(), vars.end());
  }
  const auto& pool = ground_pool();
  std::vector<std::size_t> odo(names.size(), 0);
  for (;;) {
    tsld::Substitution theta;
    for (std::size_t i = 0; i < names.size(); ++i) theta.bind(names[i], pool[odo[i]]);
    Term g1 = apply(theta, t1);
    Term g2 = apply(theta, t2);
    if (is_ground(g1) && is_ground(g2) &&
        tsld::ground_type_of(g1) == tsld::ground_type_of(g2))
      return true;
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      if (++odo[i] < pool.size()) break;
      odo[i] = 0;
    }
    if (i == names.size() || names.empty()) return false;
  }
}

}  // namespace testsupport
