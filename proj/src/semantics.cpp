#include "tsld/semantics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tsld {

const char* to_string(TypedVerdict v) {
  switch (v) {
    case TypedVerdict::IllTyped: return "ill-typed";
    case TypedVerdict::WellTyped: return "well-typed";
    default: return "unknown";
  }
}

SemDomain domain_of(const SemValue& v) { return ground_type_of(v); }

namespace {

void collect_program_terms(const Program& p, std::vector<const Term*>& out) {
  std::function<void(const Term&)> walk = [&](const Term& t) {
    out.push_back(&t);
    if (t.is_compound())
      for (const Term& a : t.compound().args) walk(a);
  };
  for (const Clause& c : p.clauses) {
    for (const Term& t : c.head.args) walk(t);
    for (const PredAtom& a : c.body)
      for (const Term& t : a.args) walk(t);
  }
}

}  // namespace

ValuePool build_value_pool(const Program& p, const EnumBounds& bounds) {
  ValuePool pool;
  std::set<Term> seen;
  auto add = [&](Term t) {
    if (seen.insert(t).second) pool.values.push_back(std::move(t));
  };

  for (int i = bounds.int_min; i <= bounds.int_max; ++i) add(Term::integer(i));
  for (const auto& f : bounds.float_lexemes) add(Term::make_const(f, BaseType::Float));
  for (const auto& a : bounds.atom_names) add(Term::atom(a));
  for (const auto& s : bounds.string_lexemes) add(Term::make_const(s, BaseType::String));

  std::vector<const Term*> terms;
  collect_program_terms(p, terms);
  std::set<std::pair<std::string, std::size_t>> functors;
  for (const Term* t : terms) {
    if (t->is_const()) add(*t);
    if (t->is_compound()) functors.emplace(t->compound().functor, t->compound().args.size());
  }

  // Tree values over the program's functors, built level by level.
  std::size_t level_start = 0;
  std::size_t level_end = pool.values.size();
  std::size_t trees = 0;
  for (int depth = 1; depth <= bounds.tree_depth && !functors.empty(); ++depth) {
    std::size_t before = pool.values.size();
    for (const auto& [name, arity] : functors) {
      std::vector<std::size_t> odo(arity, 0);
      bool done = false;
      while (!done) {
        bool uses_new_level = depth == 1;
        for (std::size_t i = 0; i < arity && !uses_new_level; ++i)
          uses_new_level = odo[i] >= level_start;
        if (uses_new_level) {
          if (trees >= bounds.max_tree_values) {
            pool.truncated = true;
            break;
          }
          std::vector<Term> args;
          args.reserve(arity);
          for (std::size_t i = 0; i < arity; ++i) args.push_back(pool.values[odo[i]]);
          add(Term::make_compound(name, std::move(args)));
          ++trees;
        }
        for (std::size_t i = 0;; ++i) {
          if (i == arity) {
            done = true;
            break;
          }
          if (++odo[i] < level_end) break;
          odo[i] = 0;
        }
      }
      if (pool.truncated) break;
    }
    level_start = level_end == pool.values.size() ? level_start : level_end;
    level_end = pool.values.size();
    if (before == pool.values.size()) break;
  }

  std::set<SemDomain> doms;
  for (const SemValue& v : pool.values)
    if (doms.insert(domain_of(v)).second) pool.domains.push_back(domain_of(v));
  return pool;
}

SemValue eval_term(const Term& t, const State& s) {
  if (t.is_var()) {
    auto it = s.find(t.var().name);
    if (it == s.end())
      throw std::invalid_argument("eval_term: unbound variable " + t.var().name);
    return it->second;
  }
  if (t.is_const()) return t;
  std::vector<Term> args;
  args.reserve(t.compound().args.size());
  for (const Term& a : t.compound().args) args.push_back(eval_term(a, s));
  return Term::make_compound(t.compound().functor, std::move(args));
}

TruthValue eval_atom(const PredAtom& a, const Interpretation& i, const State& s) {
  std::vector<SemValue> values;
  std::vector<SemDomain> domains;
  values.reserve(a.args.size());
  for (const Term& t : a.args) {
    values.push_back(eval_term(t, s));
    domains.push_back(domain_of(values.back()));
  }
  auto it = i.preds.find(PredKey{a.pred, a.args.size()});
  if (it == i.preds.end() || !it->second.signature.count(domains)) return TruthValue::Wrong;
  return it->second.truth.count(values) ? TruthValue::True : TruthValue::False;
}

TruthValue eval_query(const Query& q, const Interpretation& i, const State& s) {
  TruthValue acc = TruthValue::True;
  for (const PredAtom& a : q.atoms) acc = kleene::conj(acc, eval_atom(a, i, s));
  return acc;
}

TruthValue eval_clause(const Clause& c, const Interpretation& i, const State& s) {
  Query body{c.body, false};
  return kleene::implies(eval_query(body, i, s), eval_atom(c.head, i, s));
}

bool complies(const State& s, const Context& d) {
  for (const auto& [x, v] : s) {
    auto it = d.find(x);
    if (it == d.end() || domain_of(v) != it->second) return false;
  }
  return true;
}

namespace {

struct CheckOutcome {
  bool holds;
  bool truncated;
};

// Enumerate every state over `vars` complying with the context and require
// `eval` to return true on each. A variable missing from the context, or a
// domain with no pool values, leaves no complying state: vacuously true.
CheckOutcome for_all_complying_states(const std::set<std::string>& vars, const Context& ctx,
                                      const ValuePool& pool, std::size_t max_states,
                                      const std::function<TruthValue(const State&)>& eval) {
  std::vector<std::string> names(vars.begin(), vars.end());
  std::vector<std::vector<const SemValue*>> choices(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto it = ctx.find(names[i]);
    if (it == ctx.end()) return {true, false};
    for (const SemValue& v : pool.values)
      if (domain_of(v) == it->second) choices[i].push_back(&v);
    if (choices[i].empty()) return {true, false};
  }

  std::vector<std::size_t> odo(names.size(), 0);
  std::size_t count = 0;
  for (;;) {
    if (++count > max_states) return {true, true};
    State s;
    for (std::size_t i = 0; i < names.size(); ++i) s.emplace(names[i], *choices[i][odo[i]]);
    if (eval(s) != TruthValue::True) return {false, false};
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      if (++odo[i] < choices[i].size()) break;
      odo[i] = 0;
    }
    if (i == names.size()) break;
    if (names.empty()) break;
  }
  return {true, false};
}

CheckOutcome models_clause_impl(const Interpretation& i, const Clause& c, const Context& d,
                                const ValuePool& pool, std::size_t max_states) {
  return for_all_complying_states(vars_of(c), d, pool, max_states,
                                  [&](const State& s) { return eval_clause(c, i, s); });
}

CheckOutcome models_query_impl(const Interpretation& i, const Query& q, const Context& d,
                               const ValuePool& pool, std::size_t max_states) {
  return for_all_complying_states(vars_of(q), d, pool, max_states,
                                  [&](const State& s) { return eval_query(q, i, s); });
}

}  // namespace

bool models(const Interpretation& i, const Clause& c, const Context& d, const ValuePool& pool) {
  return models_clause_impl(i, c, d, pool, EnumBounds{}.max_states).holds;
}

bool models(const Interpretation& i, const Query& q, const Context& d, const ValuePool& pool) {
  return models_query_impl(i, q, d, pool, EnumBounds{}.max_states).holds;
}

AtomSet tp_step(const Program& p, const AtomSet& s, const ValuePool& pool) {
  AtomSet out;
  out.atoms = s.atoms;
  out.truncated = s.truncated;

  for (const Clause& c : p.clauses) {
    std::set<std::string> vars = vars_of(c);
    std::vector<std::string> names(vars.begin(), vars.end());

    std::size_t combos = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
      combos *= pool.values.size();
      if (combos > 200000) {
        overflow = true;
        break;
      }
    }
    if (overflow) {
      out.truncated = true;
      continue;
    }

    std::vector<std::size_t> odo(names.size(), 0);
    for (;;) {
      Substitution theta;
      for (std::size_t i = 0; i < names.size(); ++i) theta.bind(names[i], pool.values[odo[i]]);
      bool body_holds = true;
      for (const PredAtom& b : c.body) {
        if (!s.atoms.count(apply(theta, b))) {
          body_holds = false;
          break;
        }
      }
      if (body_holds) out.atoms.insert(apply(theta, c.head));
      std::size_t i = 0;
      for (; i < names.size(); ++i) {
        if (++odo[i] < pool.values.size()) break;
        odo[i] = 0;
      }
      if (i == names.size()) break;
    }
  }
  return out;
}

AtomSet tp_fixpoint(const Program& p, const ValuePool& pool, int iter_bound) {
  AtomSet cur;
  cur.truncated = pool.truncated;
  for (int i = 0; i < iter_bound; ++i) {
    AtomSet next = tp_step(p, cur, pool);
    if (next.atoms == cur.atoms) {
      cur.truncated = cur.truncated || next.truncated;
      return cur;
    }
    cur = std::move(next);
  }
  cur.truncated = true;
  return cur;
}

AtomSet tp_fixpoint(const Program& p, const EnumBounds& bounds) {
  return tp_fixpoint(p, build_value_pool(p, bounds), bounds.tp_iter_bound);
}

Interpretation derived_interpretation(
    const AtomSet& s, const std::map<PredKey, Interpretation::PredInterp>& extra_sigs) {
  Interpretation out;
  for (const PredAtom& a : s.atoms) {
    if (!is_ground(a)) throw std::invalid_argument("derived_interpretation: non-ground atom");
    auto& pi = out.preds[PredKey{a.pred, a.args.size()}];
    std::vector<SemDomain> doms;
    doms.reserve(a.args.size());
    for (const Term& t : a.args) doms.push_back(domain_of(t));
    pi.signature.insert(std::move(doms));
    pi.truth.insert(a.args);
  }
  for (const auto& [key, pi] : extra_sigs)
    if (!out.preds.count(key)) out.preds.emplace(key, pi);
  return out;
}

namespace {

std::set<PredKey> predicates_of(const Program& p) {
  std::set<PredKey> out;
  for (const Clause& c : p.clauses) {
    out.insert(PredKey{c.head.pred, c.head.args.size()});
    for (const PredAtom& a : c.body) out.insert(PredKey{a.pred, a.args.size()});
  }
  return out;
}

// Widening options for one predicate absent from the fixpoint: one domain
// tuple as signature, with the truth set either empty or the full set of pool
// tuples in that signature.
std::vector<Interpretation::PredInterp> widening_options(const PredKey& key,
                                                         const ValuePool& pool) {
  std::vector<std::vector<SemDomain>> sigs;
  if (key.arity == 0) {
    sigs.push_back({});
  } else {
    std::vector<std::size_t> odo(key.arity, 0);
    for (;;) {
      std::vector<SemDomain> tuple;
      for (std::size_t i = 0; i < key.arity; ++i) tuple.push_back(pool.domains[odo[i]]);
      sigs.push_back(std::move(tuple));
      std::size_t i = 0;
      for (; i < key.arity; ++i) {
        if (++odo[i] < pool.domains.size()) break;
        odo[i] = 0;
      }
      if (i == key.arity) break;
    }
  }

  std::vector<Interpretation::PredInterp> out;
  for (auto& sig : sigs) {
    Interpretation::PredInterp empty_truth;
    empty_truth.signature.insert(sig);
    out.push_back(empty_truth);

    Interpretation::PredInterp full_truth;
    full_truth.signature.insert(sig);
    if (key.arity == 0) {
      full_truth.truth.insert({});
    } else {
      std::vector<std::vector<const SemValue*>> choices(key.arity);
      for (std::size_t i = 0; i < key.arity; ++i)
        for (const SemValue& v : pool.values)
          if (domain_of(v) == sig[i]) choices[i].push_back(&v);
      bool nonempty = true;
      for (const auto& ch : choices) nonempty = nonempty && !ch.empty();
      if (nonempty) {
        std::vector<std::size_t> odo(key.arity, 0);
        for (;;) {
          std::vector<SemValue> tuple;
          for (std::size_t i = 0; i < key.arity; ++i) tuple.push_back(*choices[i][odo[i]]);
          full_truth.truth.insert(std::move(tuple));
          std::size_t i = 0;
          for (; i < key.arity; ++i) {
            if (++odo[i] < choices[i].size()) break;
            odo[i] = 0;
          }
          if (i == key.arity) break;
        }
      }
    }
    out.push_back(std::move(full_truth));
  }
  return out;
}

struct ModelSearch {
  ValuePool pool;
  AtomSet fixpoint;
  std::vector<Interpretation> candidates;
  bool truncated = false;
};

ModelSearch prepare_search(const Program& p, const EnumBounds& bounds,
                           const std::set<PredKey>& extra_keys) {
  ModelSearch ms;
  ms.pool = build_value_pool(p, bounds);
  ms.fixpoint = tp_fixpoint(p, ms.pool, bounds.tp_iter_bound);
  ms.truncated = ms.fixpoint.truncated;

  std::set<PredKey> absent;
  for (const PredKey& key : predicates_of(p))
    absent.insert(key);
  for (const PredKey& key : extra_keys) absent.insert(key);
  for (const PredAtom& a : ms.fixpoint.atoms) absent.erase(PredKey{a.pred, a.args.size()});

  std::vector<std::pair<PredKey, std::vector<Interpretation::PredInterp>>> options;
  for (const PredKey& key : absent) options.emplace_back(key, widening_options(key, ms.pool));

  // Cartesian product over the per-predicate options, plus the bare derived
  // interpretation with no widening at all.
  ms.candidates.push_back(derived_interpretation(ms.fixpoint));
  if (!options.empty()) {
    std::vector<std::size_t> odo(options.size(), 0);
    for (;;) {
      if (ms.candidates.size() >= bounds.max_interpretations) {
        ms.truncated = true;
        break;
      }
      std::map<PredKey, Interpretation::PredInterp> extra;
      for (std::size_t i = 0; i < options.size(); ++i)
        extra.emplace(options[i].first, options[i].second[odo[i]]);
      ms.candidates.push_back(derived_interpretation(ms.fixpoint, extra));
      std::size_t i = 0;
      for (; i < options.size(); ++i) {
        if (++odo[i] < options[i].second.size()) break;
        odo[i] = 0;
      }
      if (i == options.size()) break;
    }
  }
  return ms;
}

// Every context assignment vars -> pool.domains, capped.
bool for_each_context(const std::set<std::string>& vars, const ValuePool& pool, std::size_t cap,
                      bool& truncated, const std::function<bool(const Context&)>& fn) {
  std::vector<std::string> names(vars.begin(), vars.end());
  if (names.empty()) {
    return fn(Context{});
  }
  if (pool.domains.empty()) return false;
  std::vector<std::size_t> odo(names.size(), 0);
  std::size_t count = 0;
  for (;;) {
    if (++count > cap) {
      truncated = true;
      return false;
    }
    Context ctx;
    for (std::size_t i = 0; i < names.size(); ++i) ctx.emplace(names[i], pool.domains[odo[i]]);
    if (fn(ctx)) return true;
    std::size_t i = 0;
    for (; i < names.size(); ++i) {
      if (++odo[i] < pool.domains.size()) break;
      odo[i] = 0;
    }
    if (i == names.size()) return false;
  }
}

// Does I model P in some enumerated per-clause context? Clauses are variable
// disjoint, so contexts are found clause by clause.
bool models_program(const Interpretation& i, const Program& p, const ModelSearch& ms,
                    const EnumBounds& bounds, std::map<int, Context>* contexts_out,
                    bool& truncated) {
  std::map<int, Context> found;
  for (const Clause& c : p.clauses) {
    Context good;
    bool ok = for_each_context(vars_of(c), ms.pool, bounds.max_interpretations, truncated,
                               [&](const Context& ctx) {
                                 auto r = models_clause_impl(i, c, ctx, ms.pool, bounds.max_states);
                                 if (r.truncated) truncated = true;
                                 if (r.holds && !r.truncated) {
                                   good = ctx;
                                   return true;
                                 }
                                 return false;
                               });
    if (!ok) return false;
    found.emplace(c.id, good);
  }
  if (contexts_out) *contexts_out = std::move(found);
  return true;
}

bool models_query_somewhere(const Interpretation& i, const Query& q, const ModelSearch& ms,
                            const EnumBounds& bounds, bool& truncated) {
  return for_each_context(vars_of(q), ms.pool, bounds.max_interpretations, truncated,
                          [&](const Context& ctx) {
                            auto r = models_query_impl(i, q, ctx, ms.pool, bounds.max_states);
                            if (r.truncated) truncated = true;
                            return r.holds && !r.truncated;
                          });
}

}  // namespace

TypedCheckResult is_ill_typed_program(const Program& p, const EnumBounds& bounds) {
  TypedCheckResult res;
  ModelSearch ms = prepare_search(p, bounds, {});
  res.truncated = ms.truncated;

  std::set<int> modeled_somewhere;
  for (const Interpretation& i : ms.candidates) {
    std::map<int, Context> contexts;
    if (models_program(i, p, ms, bounds, &contexts, res.truncated)) {
      res.verdict = TypedVerdict::WellTyped;
      res.witness = i;
      res.witness_contexts = std::move(contexts);
      return res;
    }
  }

  // Record a clause nothing could model, for the report.
  for (const Clause& c : p.clauses) {
    bool modeled = false;
    for (const Interpretation& i : ms.candidates) {
      bool trunc = false;
      if (for_each_context(vars_of(c), ms.pool, bounds.max_interpretations, trunc,
                           [&](const Context& ctx) {
                             return models_clause_impl(i, c, ctx, ms.pool, bounds.max_states).holds;
                           })) {
        modeled = true;
        break;
      }
    }
    if (!modeled) {
      res.violated_clause = c.id;
      break;
    }
  }

  res.verdict = res.truncated ? TypedVerdict::Unknown : TypedVerdict::IllTyped;
  return res;
}

TypedCheckResult is_ill_typed_query(const Program& p, const Query& q, const EnumBounds& bounds) {
  TypedCheckResult res;
  std::set<PredKey> query_keys;
  for (const PredAtom& a : q.atoms) query_keys.insert(PredKey{a.pred, a.args.size()});
  ModelSearch ms = prepare_search(p, bounds, query_keys);
  res.truncated = ms.truncated;

  for (const Interpretation& i : ms.candidates) {
    if (!models_program(i, p, ms, bounds, nullptr, res.truncated)) continue;
    if (models_query_somewhere(i, q, ms, bounds, res.truncated)) {
      res.verdict = TypedVerdict::WellTyped;
      res.witness = i;
      return res;
    }
  }
  res.verdict = res.truncated ? TypedVerdict::Unknown : TypedVerdict::IllTyped;
  return res;
}

bool is_smaller(const Interpretation& i1, const Interpretation& i2, const ValuePool& pool) {
  using Entry = std::pair<PredKey, std::vector<SemValue>>;
  auto truth_set = [](const Interpretation& i) {
    std::set<Entry> out;
    for (const auto& [key, pi] : i.preds)
      for (const auto& tuple : pi.truth) out.emplace(key, tuple);
    return out;
  };
  auto false_set = [&](const Interpretation& i) {
    std::set<Entry> out;
    for (const auto& [key, pi] : i.preds) {
      for (const auto& sig : pi.signature) {
        std::vector<std::vector<const SemValue*>> choices(sig.size());
        bool nonempty = true;
        for (std::size_t j = 0; j < sig.size(); ++j) {
          for (const SemValue& v : pool.values)
            if (domain_of(v) == sig[j]) choices[j].push_back(&v);
          nonempty = nonempty && !choices[j].empty();
        }
        if (sig.empty()) {
          if (!pi.truth.count({})) out.emplace(key, std::vector<SemValue>{});
          continue;
        }
        if (!nonempty) continue;
        std::vector<std::size_t> odo(sig.size(), 0);
        for (;;) {
          std::vector<SemValue> tuple;
          for (std::size_t j = 0; j < sig.size(); ++j) tuple.push_back(*choices[j][odo[j]]);
          if (!pi.truth.count(tuple)) out.emplace(key, std::move(tuple));
          std::size_t j = 0;
          for (; j < sig.size(); ++j) {
            if (++odo[j] < choices[j].size()) break;
            odo[j] = 0;
          }
          if (j == sig.size()) break;
        }
      }
    }
    return out;
  };

  auto t1 = truth_set(i1), t2 = truth_set(i2);
  if (!std::includes(t2.begin(), t2.end(), t1.begin(), t1.end())) return false;
  if (t1 != t2) return true;
  auto f1 = false_set(i1), f2 = false_set(i2);
  return std::includes(f2.begin(), f2.end(), f1.begin(), f1.end());
}

bool check_lemma_blamed_clause(const Program& p, int blamed_id, const EnumBounds& bounds,
                               bool corrected) {
  Diagnosis diag = diagnose_program(p, 64);
  if (!diag.blamed.count(blamed_id))
    throw std::invalid_argument("check_lemma_blamed_clause: clause is not blamed");
  const Clause* c = p.clause_by_id(blamed_id);

  ValuePool pool = build_value_pool(p, bounds);
  AtomSet s = tp_fixpoint(p, pool, bounds.tp_iter_bound);

  for (const PredAtom& body_atom : c->body) {
    std::vector<const PredAtom*> matching;
    for (const PredAtom& a : s.atoms)
      if (a.pred == body_atom.pred && a.args.size() == body_atom.args.size())
        matching.push_back(&a);

    bool atom_qualifies = true;
    for (const PredAtom* sa : matching) {
      // For every enumerated state there must be a position with mismatched
      // ("==" under the literal reading) domains.
      std::set<std::string> vars = vars_of(body_atom);
      bool all_states_mismatch = true;
      // Enumerate states directly: each variable over the whole pool.
      std::vector<std::string> names(vars.begin(), vars.end());
      std::vector<std::size_t> odo(names.size(), 0);
      for (;;) {
        State st;
        for (std::size_t i = 0; i < names.size(); ++i) st.emplace(names[i], pool.values[odo[i]]);
        bool exists_position = false;
        for (std::size_t j = 0; j < body_atom.args.size(); ++j) {
          SemDomain dt = domain_of(eval_term(body_atom.args[j], st));
          SemDomain ds = domain_of(sa->args[j]);
          bool hit = corrected ? dt != ds : dt == ds;
          if (hit) {
            exists_position = true;
            break;
          }
        }
        if (!exists_position) {
          all_states_mismatch = false;
          break;
        }
        if (names.empty()) break;
        std::size_t i = 0;
        for (; i < names.size(); ++i) {
          if (++odo[i] < pool.values.size()) break;
          odo[i] = 0;
        }
        if (i == names.size()) break;
      }
      if (!all_states_mismatch) {
        atom_qualifies = false;
        break;
      }
    }
    if (atom_qualifies && !c->body.empty()) return true;
  }
  return false;
}

namespace {

CheckOutcome models_resultant_impl(const Interpretation& i, const Resultant& r, const Context& d,
                                   const ValuePool& pool, std::size_t max_states) {
  std::set<std::string> vars = vars_of(r.head);
  for (const auto& v : vars_of(r.body)) vars.insert(v);
  return for_all_complying_states(vars, d, pool, max_states, [&](const State& s) {
    return kleene::implies(eval_query(r.body, i, s), eval_query(r.head, i, s));
  });
}

}  // namespace

bool check_resultant_soundness(const Program& p, const Derivation& d, const EnumBounds& bounds) {
  std::vector<Resultant> rs = resultants(d);
  ModelSearch ms = prepare_search(p, bounds, {});

  for (const Interpretation& i : ms.candidates) {
    bool trunc = false;
    if (!models_program(i, p, ms, bounds, nullptr, trunc)) continue;
    for (const Resultant& r : rs) {
      std::set<std::string> vars = vars_of(r.head);
      for (const auto& v : vars_of(r.body)) vars.insert(v);
      bool t2 = false;
      bool ok = for_each_context(vars, ms.pool, bounds.max_interpretations, t2,
                                 [&](const Context& ctx) {
                                   return models_resultant_impl(i, r, ctx, ms.pool,
                                                                bounds.max_states)
                                       .holds;
                                 });
      if (!ok) return false;
    }
  }
  return true;
}

SoundnessReport check_soundness_theorem(const Program& p, const Query& q,
                                        const EnumBounds& bounds) {
  SoundnessReport report;
  SolveResult solved = solve(p, q, 64, 64);

  std::set<PredKey> query_keys;
  for (const PredAtom& a : q.atoms) query_keys.insert(PredKey{a.pred, a.args.size()});
  ModelSearch ms = prepare_search(p, bounds, query_keys);

  // (1) every model of P models each computed answer instance of Q.
  for (const Substitution& theta : solved.answers) {
    Query instance = apply(theta, q);
    for (const Interpretation& i : ms.candidates) {
      bool trunc = false;
      if (!models_program(i, p, ms, bounds, nullptr, trunc)) continue;
      bool t2 = false;
      if (!models_query_somewhere(i, instance, ms, bounds, t2) && !t2) {
        report.success_clause_ok = false;
        report.violations.push_back("model of program does not model answer instance " +
                                    to_string(instance));
      }
    }
  }

  // (2) operational program error implies not well-typed.
  Diagnosis dp = diagnose_program(p, 64);
  if (dp.verdict == DiagnosisVerdict::TypeErrorInProgram) {
    TypedCheckResult r = is_ill_typed_program(p, bounds);
    if (r.verdict == TypedVerdict::WellTyped) {
      report.program_clause_ok = false;
      report.violations.push_back("engine reports a program type error but a model exists");
    }
  }

  // (3) operational query error implies not well-typed.
  Diagnosis dq = diagnose_query(p, q, 64);
  if (dq.verdict == DiagnosisVerdict::TypeErrorInQuery) {
    TypedCheckResult r = is_ill_typed_query(p, q, bounds);
    if (r.verdict == TypedVerdict::WellTyped) {
      report.query_clause_ok = false;
      report.violations.push_back("engine reports a query type error but " + to_string(q) +
                                  " has a model consistent with the program");
    }
  }
  return report;
}

}  // namespace tsld
