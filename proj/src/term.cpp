#include "tsld/term.hpp"

#include <sstream>
#include <stdexcept>

namespace tsld {

const char* to_string(BaseType t) {
  switch (t) {
    case BaseType::Int: return "int";
    case BaseType::Float: return "float";
    case BaseType::Atom: return "atom";
    default: return "string";
  }
}

GroundType GroundType::base_type(BaseType b) { return GroundType{b}; }

GroundType GroundType::tree_type(std::string functor, std::vector<GroundType> children) {
  if (children.empty()) throw std::invalid_argument("tree type needs arity >= 1");
  return GroundType{Tree{std::move(functor), std::move(children)}};
}

int compare(const GroundType& a, const GroundType& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  if (a.is_base()) {
    int x = static_cast<int>(a.base()), y = static_cast<int>(b.base());
    return x == y ? 0 : (x < y ? -1 : 1);
  }
  const auto& ta = a.tree();
  const auto& tb = b.tree();
  if (int c = ta.functor.compare(tb.functor); c != 0) return c < 0 ? -1 : 1;
  if (ta.children.size() != tb.children.size())
    return ta.children.size() < tb.children.size() ? -1 : 1;
  for (std::size_t i = 0; i < ta.children.size(); ++i)
    if (int c = compare(ta.children[i], tb.children[i]); c != 0) return c;
  return 0;
}

bool operator==(const GroundType& a, const GroundType& b) { return compare(a, b) == 0; }

std::string to_string(const GroundType& t) {
  if (t.is_base()) return to_string(t.base());
  std::ostringstream os;
  os << t.tree().functor << '(';
  for (std::size_t i = 0; i < t.tree().children.size(); ++i) {
    if (i) os << ',';
    os << to_string(t.tree().children[i]);
  }
  os << ')';
  return os.str();
}

Term Term::make_var(std::string name) { return Term{Var{std::move(name)}}; }

Term Term::make_const(std::string lexeme, BaseType type) {
  return Term{Const{std::move(lexeme), type}};
}

Term Term::make_compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("compound term needs arity >= 1");
  return Term{Compound{std::move(functor), std::move(args)}};
}

Term Term::integer(long long v) { return make_const(std::to_string(v), BaseType::Int); }

Term Term::atom(std::string name) { return make_const(std::move(name), BaseType::Atom); }

int compare(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return a.node.index() < b.node.index() ? -1 : 1;
  if (a.is_var()) {
    int c = a.var().name.compare(b.var().name);
    return c == 0 ? 0 : (c < 0 ? -1 : 1);
  }
  if (a.is_const()) {
    if (int c = a.constant().lexeme.compare(b.constant().lexeme); c != 0) return c < 0 ? -1 : 1;
    int x = static_cast<int>(a.constant().type), y = static_cast<int>(b.constant().type);
    return x == y ? 0 : (x < y ? -1 : 1);
  }
  const auto& ca = a.compound();
  const auto& cb = b.compound();
  if (int c = ca.functor.compare(cb.functor); c != 0) return c < 0 ? -1 : 1;
  if (ca.args.size() != cb.args.size()) return ca.args.size() < cb.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < ca.args.size(); ++i)
    if (int c = compare(ca.args[i], cb.args[i]); c != 0) return c;
  return 0;
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }

bool is_ground(const Term& t) {
  if (t.is_var()) return false;
  if (t.is_const()) return true;
  for (const Term& a : t.compound().args)
    if (!is_ground(a)) return false;
  return true;
}

std::size_t term_size(const Term& t) {
  if (!t.is_compound()) return 1;
  std::size_t n = 1;
  for (const Term& a : t.compound().args) n += term_size(a);
  return n;
}

bool occurs_in(const std::string& var, const Term& t) {
  if (t.is_var()) return t.var().name == var;
  if (t.is_const()) return false;
  for (const Term& a : t.compound().args)
    if (occurs_in(var, a)) return true;
  return false;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_var()) {
    for (const auto& v : out)
      if (v == t.var().name) return;
    out.push_back(t.var().name);
  } else if (t.is_compound()) {
    for (const Term& a : t.compound().args) collect_vars(a, out);
  }
}

std::set<std::string> vars_of(const Term& t) {
  std::vector<std::string> v;
  collect_vars(t, v);
  return {v.begin(), v.end()};
}

static void escape_string(std::ostream& os, const std::string& s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

static void print_term(std::ostream& os, const Term& t) {
  if (t.is_var()) {
    os << t.var().name;
  } else if (t.is_const()) {
    if (t.constant().type == BaseType::String)
      escape_string(os, t.constant().lexeme);
    else
      os << t.constant().lexeme;
  } else {
    os << t.compound().functor << '(';
    for (std::size_t i = 0; i < t.compound().args.size(); ++i) {
      if (i) os << ',';
      print_term(os, t.compound().args[i]);
    }
    os << ')';
  }
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

GroundType ground_type_of(const Term& t) {
  if (t.is_var())
    throw std::invalid_argument("ground_type_of: term contains variable " + t.var().name);
  if (t.is_const()) return GroundType::base_type(t.constant().type);
  std::vector<GroundType> children;
  children.reserve(t.compound().args.size());
  for (const Term& a : t.compound().args) children.push_back(ground_type_of(a));
  return GroundType::tree_type(t.compound().functor, std::move(children));
}

Substitution::Substitution(std::map<std::string, Term> bindings) : bindings_(std::move(bindings)) {
  for (auto it = bindings_.begin(); it != bindings_.end();) {
    if (it->second.is_var() && it->second.var().name == it->first)
      it = bindings_.erase(it);
    else
      ++it;
  }
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term t) {
  if (t.is_var() && t.var().name == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(t));
}

std::string to_string(const Substitution& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) os << ", ";
    first = false;
    os << v << " -> " << to_string(t);
  }
  os << '}';
  return os.str();
}

Term apply(const Substitution& s, const Term& t) {
  if (t.is_var()) {
    const Term* bound = s.lookup(t.var().name);
    return bound ? *bound : t;
  }
  if (t.is_const()) return t;
  std::vector<Term> args;
  args.reserve(t.compound().args.size());
  for (const Term& a : t.compound().args) args.push_back(apply(s, a));
  return Term::make_compound(t.compound().functor, std::move(args));
}

Substitution compose(const Substitution& eta, const Substitution& theta) {
  Substitution out;
  for (const auto& [x, t] : theta.bindings()) out.bind(x, apply(eta, t));
  for (const auto& [y, t] : eta.bindings())
    if (!theta.lookup(y)) out.bind(y, t);
  return out;
}

int compare(const PredAtom& a, const PredAtom& b) {
  if (int c = a.pred.compare(b.pred); c != 0) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size()) return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i]); c != 0) return c;
  return 0;
}

bool operator==(const PredAtom& a, const PredAtom& b) { return compare(a, b) == 0; }

PredAtom apply(const Substitution& s, const PredAtom& a) {
  PredAtom out{a.pred, {}};
  out.args.reserve(a.args.size());
  for (const Term& t : a.args) out.args.push_back(apply(s, t));
  return out;
}

bool is_ground(const PredAtom& a) {
  for (const Term& t : a.args)
    if (!is_ground(t)) return false;
  return true;
}

std::set<std::string> vars_of(const PredAtom& a) {
  std::set<std::string> out;
  for (const Term& t : a.args) {
    auto v = vars_of(t);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::string to_string(const PredAtom& a) {
  if (a.args.empty()) return a.pred;
  std::ostringstream os;
  os << a.pred << '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) os << ',';
    os << to_string(a.args[i]);
  }
  os << ')';
  return os.str();
}

bool operator==(const Clause& a, const Clause& b) {
  return a.id == b.id && a.head == b.head && a.body == b.body;
}

std::set<std::string> vars_of(const Clause& c) {
  std::set<std::string> out = vars_of(c.head);
  for (const PredAtom& a : c.body) {
    auto v = vars_of(a);
    out.insert(v.begin(), v.end());
  }
  return out;
}

Clause apply(const Substitution& s, const Clause& c) {
  Clause out{c.id, apply(s, c.head), {}};
  out.body.reserve(c.body.size());
  for (const PredAtom& a : c.body) out.body.push_back(apply(s, a));
  return out;
}

std::string to_string(const Clause& c) {
  std::ostringstream os;
  os << to_string(c.head);
  if (!c.body.empty()) {
    os << " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) os << ", ";
      os << to_string(c.body[i]);
    }
  }
  os << '.';
  return os.str();
}

bool operator==(const Query& a, const Query& b) {
  return a.false_marker == b.false_marker && a.atoms == b.atoms;
}

Query apply(const Substitution& s, const Query& q) {
  Query out{{}, q.false_marker};
  out.atoms.reserve(q.atoms.size());
  for (const PredAtom& a : q.atoms) out.atoms.push_back(apply(s, a));
  return out;
}

std::set<std::string> vars_of(const Query& q) {
  std::set<std::string> out;
  for (const PredAtom& a : q.atoms) {
    auto v = vars_of(a);
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::string to_string(const Query& q) {
  std::ostringstream os;
  if (q.false_marker) os << "false";
  for (std::size_t i = 0; i < q.atoms.size(); ++i) {
    if (i || q.false_marker) os << ',';
    os << to_string(q.atoms[i]);
  }
  if (q.atoms.empty() && !q.false_marker) os << "□";  // the empty query
  return os.str();
}

const Clause* Program::clause_by_id(int id) const {
  for (const Clause& c : clauses)
    if (c.id == id) return &c;
  return nullptr;
}

bool operator==(const Program& a, const Program& b) { return a.clauses == b.clauses; }

std::string to_string(const Program& p) {
  std::ostringstream os;
  for (const Clause& c : p.clauses) os << to_string(c) << '\n';
  return os.str();
}

Substitution restrict_to(const Substitution& s, const std::set<std::string>& vars) {
  Substitution out;
  for (const auto& [v, t] : s.bindings())
    if (vars.count(v)) out.bind(v, t);
  return out;
}

Clause rename_apart(const Clause& c, const std::set<std::string>& avoid) {
  std::vector<std::string> ordered;
  for (const Term& t : c.head.args) collect_vars(t, ordered);
  for (const PredAtom& a : c.body)
    for (const Term& t : a.args) collect_vars(t, ordered);
  std::set<std::string> taken = avoid;
  for (const auto& v : ordered) taken.insert(v);

  Substitution renaming;
  for (const auto& v : ordered) {
    if (!avoid.count(v)) continue;
    int k = 1;
    std::string fresh;
    do {
      fresh = v + "_" + std::to_string(k++);
    } while (taken.count(fresh));
    taken.insert(fresh);
    renaming.bind(v, Term::make_var(fresh));
  }
  return renaming.empty() ? c : apply(renaming, c);
}

}  // namespace tsld
