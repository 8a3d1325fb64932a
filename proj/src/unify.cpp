#include "tsld/unify.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace tsld {

std::string to_string(const EquationSystem& s) {
  std::ostringstream os;
  os << "({";
  for (std::size_t i = 0; i < s.equations.size(); ++i) {
    if (i) os << ", ";
    os << to_string(s.equations[i].first) << " = " << to_string(s.equations[i].second);
  }
  os << "}, " << (s.flag ? "true" : "false") << ")";
  return os.str();
}

std::string to_string(const UnificationOutcome& o) {
  if (o.is_wrong()) return "wrong";
  if (o.is_false()) return "false";
  return "mgu " + to_string(o.mgu());
}

std::string to_string(const UnifTrace& t) {
  std::ostringstream os;
  os << to_string(t.initial);
  for (const auto& step : t.steps) {
    os << " ->" << step.rule << ' ';
    if (step.halted_wrong)
      os << "wrong";
    else
      os << to_string(step.after);
  }
  return os.str();
}

namespace {

bool occurs_in_rest(const std::string& var, const std::vector<std::pair<Term, Term>>& eqs,
                    std::size_t skip) {
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (i == skip) continue;
    if (occurs_in(var, eqs[i].first) || occurs_in(var, eqs[i].second)) return true;
  }
  return false;
}

// Lowest-numbered rule applicable to equation i, or 0 if none.
int applicable_rule(const EquationSystem& s, std::size_t i) {
  const auto& [l, r] = s.equations[i];
  if (l.is_compound() && r.is_compound()) {
    const auto& cl = l.compound();
    const auto& cr = r.compound();
    return (cl.functor == cr.functor && cl.args.size() == cr.args.size()) ? 1 : 2;
  }
  if (l.is_const() && r.is_const()) {
    if (l == r) return 3;
    return l.constant().type == r.constant().type ? 4 : 5;
  }
  if (l.is_const() && r.is_compound()) return 6;
  if (l.is_compound() && r.is_const()) return 7;
  if (l.is_var() && r.is_var() && l.var().name == r.var().name) return 8;
  if (!l.is_var() && r.is_var()) return 9;
  if (l.is_var()) {
    const std::string& x = l.var().name;
    if (!occurs_in(x, r)) {
      if (occurs_in_rest(x, s.equations, i)) return 10;
      return 0;  // solved equation
    }
    if (!(r.is_var() && r.var().name == x)) return 11;
  }
  return 0;
}

std::pair<UnificationOutcome, UnifTrace> run(EquationSystem system) {
  UnifTrace trace;
  trace.initial = system;

  std::size_t initial_size = 0;
  for (const auto& [l, r] : system.equations) initial_size += term_size(l) + term_size(r);
  const std::size_t step_limit = 10 * (initial_size + 2) * (initial_size + 2);

  for (std::size_t steps = 0;; ++steps) {
    if (steps > step_limit) throw std::logic_error("typed_unify: step limit exceeded");

    std::size_t idx = system.equations.size();
    int rule = 0;
    for (std::size_t i = 0; i < system.equations.size(); ++i) {
      if (int k = applicable_rule(system, i); k != 0) {
        idx = i;
        rule = k;
        break;
      }
    }
    if (rule == 0) break;

    auto eq = system.equations[idx];
    const auto& [l, r] = eq;
    bool wrong = false;
    switch (rule) {
      case 1: {
        const auto& cl = l.compound();
        const auto& cr = r.compound();
        std::vector<std::pair<Term, Term>> expanded;
        for (std::size_t k = 0; k < cl.args.size(); ++k)
          expanded.emplace_back(cl.args[k], cr.args[k]);
        system.equations.erase(system.equations.begin() + idx);
        system.equations.insert(system.equations.begin() + idx, expanded.begin(), expanded.end());
        break;
      }
      case 2:
      case 5:
      case 6:
      case 7:
        wrong = true;
        break;
      case 3:
      case 8:
        system.equations.erase(system.equations.begin() + idx);
        break;
      case 4:
        system.equations.erase(system.equations.begin() + idx);
        system.flag = false;
        break;
      case 9:
        system.equations[idx] = {r, l};
        break;
      case 10: {
        Substitution bind;
        bind.bind(l.var().name, r);
        for (std::size_t i = 0; i < system.equations.size(); ++i) {
          if (i == idx) continue;
          system.equations[i].first = apply(bind, system.equations[i].first);
          system.equations[i].second = apply(bind, system.equations[i].second);
        }
        break;
      }
      case 11:
        system.equations.erase(system.equations.begin() + idx);
        system.flag = false;
        break;
    }

    UnifTrace::Step step{rule, eq, system, wrong};
    trace.steps.push_back(std::move(step));
    if (wrong) return {UnificationOutcome::make_wrong(), std::move(trace)};
  }

  if (!system.flag) return {UnificationOutcome::make_false(), std::move(trace)};

  Substitution solved;
  for (const auto& [l, r] : system.equations) solved.bind(l.var().name, r);
  return {UnificationOutcome::make_mgu(std::move(solved)), std::move(trace)};
}

}  // namespace

std::pair<UnificationOutcome, UnifTrace> typed_unify(const Term& t1, const Term& t2) {
  EquationSystem s;
  s.equations.emplace_back(t1, t2);
  return run(std::move(s));
}

std::pair<UnificationOutcome, UnifTrace> typed_unify_atoms(const PredAtom& a, const PredAtom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size())
    return {UnificationOutcome::make_false(), UnifTrace{}};
  EquationSystem s;
  for (std::size_t i = 0; i < a.args.size(); ++i) s.equations.emplace_back(a.args[i], b.args[i]);
  return run(std::move(s));
}

namespace {

bool mm_rec(const Term& a0, const Term& b0, Substitution& s) {
  Term a = apply(s, a0);
  Term b = apply(s, b0);
  if (a.is_var()) {
    if (b.is_var() && b.var().name == a.var().name) return true;
    if (occurs_in(a.var().name, b)) return false;
    Substitution bind;
    bind.bind(a.var().name, b);
    Substitution updated;
    for (const auto& [v, t] : s.bindings()) updated.bind(v, apply(bind, t));
    updated.bind(a.var().name, b);
    s = std::move(updated);
    return true;
  }
  if (b.is_var()) return mm_rec(b, a, s);
  if (a.is_const() || b.is_const()) return a == b;
  const auto& ca = a.compound();
  const auto& cb = b.compound();
  if (ca.functor != cb.functor || ca.args.size() != cb.args.size()) return false;
  for (std::size_t i = 0; i < ca.args.size(); ++i)
    if (!mm_rec(ca.args[i], cb.args[i], s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> mm_unify(const Term& t1, const Term& t2) {
  Substitution s;
  if (!mm_rec(t1, t2, s)) return std::nullopt;
  return s;
}

std::optional<Substitution> mm_unify_atoms(const PredAtom& a, const PredAtom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!mm_rec(a.args[i], b.args[i], s)) return std::nullopt;
  return s;
}

namespace {

// Type skeletons: the ground type of a term with one type variable per term
// variable. same_type_possible is first-order unification over these.
struct TypeTerm {
  struct TVar {
    std::string name;  // the originating term variable
  };
  struct Node {
    std::string functor;
    std::vector<TypeTerm> children;
  };
  std::variant<TVar, BaseType, Node> v;
};

TypeTerm skeleton(const Term& t) {
  if (t.is_var()) return {TypeTerm::TVar{t.var().name}};
  if (t.is_const()) return {t.constant().type};
  TypeTerm::Node n{t.compound().functor, {}};
  for (const Term& a : t.compound().args) n.children.push_back(skeleton(a));
  return {std::move(n)};
}

using TypeBindings = std::map<std::string, TypeTerm>;

const TypeTerm& resolve(const TypeTerm& t, const TypeBindings& b) {
  const TypeTerm* cur = &t;
  while (std::holds_alternative<TypeTerm::TVar>(cur->v)) {
    auto it = b.find(std::get<TypeTerm::TVar>(cur->v).name);
    if (it == b.end()) break;
    cur = &it->second;
  }
  return *cur;
}

bool tvar_occurs(const std::string& name, const TypeTerm& t, const TypeBindings& b) {
  const TypeTerm& r = resolve(t, b);
  if (const auto* v = std::get_if<TypeTerm::TVar>(&r.v)) return v->name == name;
  if (const auto* n = std::get_if<TypeTerm::Node>(&r.v)) {
    for (const TypeTerm& c : n->children)
      if (tvar_occurs(name, c, b)) return true;
  }
  return false;
}

bool type_unify(const TypeTerm& a0, const TypeTerm& b0, TypeBindings& b) {
  const TypeTerm a = resolve(a0, b);
  const TypeTerm t = resolve(b0, b);
  if (const auto* va = std::get_if<TypeTerm::TVar>(&a.v)) {
    if (const auto* vb = std::get_if<TypeTerm::TVar>(&t.v); vb && vb->name == va->name)
      return true;
    if (tvar_occurs(va->name, t, b)) return false;  // ground types are finite
    b.emplace(va->name, t);
    return true;
  }
  if (std::holds_alternative<TypeTerm::TVar>(t.v)) return type_unify(t, a, b);
  if (const auto* ba = std::get_if<BaseType>(&a.v)) {
    const auto* bb = std::get_if<BaseType>(&t.v);
    return bb && *ba == *bb;
  }
  const auto* na = std::get_if<TypeTerm::Node>(&a.v);
  const auto* nb = std::get_if<TypeTerm::Node>(&t.v);
  if (!na || !nb) return false;
  if (na->functor != nb->functor || na->children.size() != nb->children.size()) return false;
  for (std::size_t i = 0; i < na->children.size(); ++i)
    if (!type_unify(na->children[i], nb->children[i], b)) return false;
  return true;
}

}  // namespace

bool same_type_possible(const Term& t1, const Term& t2) {
  TypeBindings b;
  return type_unify(skeleton(t1), skeleton(t2), b);
}

}  // namespace tsld
