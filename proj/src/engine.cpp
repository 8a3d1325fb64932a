#include "tsld/engine.hpp"

#include <sstream>
#include <stdexcept>

namespace tsld {

const char* to_string(TreeClassification c) {
  switch (c) {
    case TreeClassification::Successful: return "successful";
    case TreeClassification::FinitelyErroneous: return "finitely erroneous";
    case TreeClassification::FinitelyFailed: return "finitely failed";
    default: return "depth bounded";
  }
}

const char* to_string(DiagnosisVerdict v) {
  switch (v) {
    case DiagnosisVerdict::TypeErrorInProgram: return "type error in program";
    case DiagnosisVerdict::TypeErrorInQuery: return "type error in query";
    case DiagnosisVerdict::NoTypeError: return "no type error";
    default: return "unknown (depth bounded)";
  }
}

std::string to_string(const Resultant& r) {
  return to_string(r.head) + " <- " + to_string(r.body);
}

std::size_t select_atom(const Query& q) {
  if (q.atoms.empty()) throw std::invalid_argument("select_atom: empty query");
  return 0;
}

std::vector<int> applicable_clauses(const Program& p, const PredAtom& a) {
  std::vector<int> out;
  for (const Clause& c : p.clauses)
    if (c.head.pred == a.pred && c.head.args.size() == a.args.size()) out.push_back(c.id);
  return out;
}

StepResult tsld_step(const Program& p, const Query& q, int clause_id) {
  std::size_t sel = select_atom(q);
  const PredAtom& atom = q.atoms[sel];
  const Clause* clause = p.clause_by_id(clause_id);
  if (!clause || clause->head.pred != atom.pred || clause->head.args.size() != atom.args.size())
    throw std::invalid_argument("tsld_step: clause not applicable to selected atom");

  Clause renamed = rename_apart(*clause, vars_of(q));
  auto [outcome, trace] = typed_unify_atoms(atom, renamed.head);

  if (outcome.is_wrong()) return {StepResult::WrongHalt{clause_id}};

  if (outcome.is_false()) {
    Query next{{}, true};
    next.atoms.reserve(q.atoms.size() - 1);
    for (std::size_t i = 0; i < q.atoms.size(); ++i)
      if (i != sel) next.atoms.push_back(q.atoms[i]);
    return {StepResult::FalseProgress{std::move(next), clause_id}};
  }

  const Substitution& theta = outcome.mgu();
  Query next{{}, q.false_marker};
  next.atoms.reserve(q.atoms.size() - 1 + renamed.body.size());
  for (std::size_t i = 0; i < sel; ++i) next.atoms.push_back(apply(theta, q.atoms[i]));
  for (const PredAtom& b : renamed.body) next.atoms.push_back(apply(theta, b));
  for (std::size_t i = sel + 1; i < q.atoms.size(); ++i)
    next.atoms.push_back(apply(theta, q.atoms[i]));
  return {StepResult::Progress{std::move(next), clause_id, theta}};
}

Derivation derive(const Program& p, const Query& q, const std::vector<int>& clause_choice,
                  int depth_bound) {
  Derivation d;
  Substitution acc;
  std::set<std::string> query_vars = vars_of(q);
  Query cur = q;
  std::size_t used = 0;

  for (;;) {
    if (cur.is_empty_success()) {
      d.outcome = DerivationOutcome::Success;
      d.answer = restrict_to(acc, query_vars);
      return d;
    }
    if (cur.is_terminal_false()) {
      d.outcome = DerivationOutcome::Failed;
      return d;
    }
    if (used >= clause_choice.size() || static_cast<int>(used) >= depth_bound) {
      d.outcome = DerivationOutcome::DepthExceeded;
      return d;
    }
    StepResult step = tsld_step(p, cur, clause_choice[used++]);
    Query next;
    bool wrong = false;
    if (step.is_progress()) {
      acc = compose(step.progress().mgu, acc);
      next = step.progress().next;
    } else if (step.is_false_progress()) {
      next = step.false_progress().next;
    } else {
      wrong = true;
    }
    d.steps.emplace_back(cur, std::move(step));
    if (wrong) {
      d.outcome = DerivationOutcome::Erroneous;
      return d;
    }
    cur = std::move(next);
  }
}

namespace {

TsldTree terminal_node(TsldTree::Terminal t) {
  TsldTree n;
  n.terminal = t;
  return n;
}

TsldTree expand(const Program& p, const Query& q, int depth_remaining) {
  if (q.is_empty_success()) return terminal_node(TsldTree::Terminal::Success);
  if (q.is_terminal_false()) return terminal_node(TsldTree::Terminal::False);
  if (depth_remaining <= 0) return terminal_node(TsldTree::Terminal::Depth);

  std::size_t sel = select_atom(q);
  std::vector<int> ids = applicable_clauses(p, q.atoms[sel]);
  if (ids.empty()) return terminal_node(TsldTree::Terminal::False);

  TsldTree node;
  node.query = q;
  node.selected_index = static_cast<int>(sel);
  for (int id : ids) {
    StepResult step = tsld_step(p, q, id);
    TsldTree::Edge edge;
    edge.clause_id = id;
    edge.has_mgu = false;
    if (step.is_wrong_halt()) {
      edge.child = terminal_node(TsldTree::Terminal::Wrong);
    } else if (step.is_false_progress()) {
      edge.child = expand(p, step.false_progress().next, depth_remaining - 1);
    } else {
      edge.has_mgu = true;
      edge.mgu = step.progress().mgu;
      edge.child = expand(p, step.progress().next, depth_remaining - 1);
    }
    node.children.push_back(std::move(edge));
  }
  return node;
}

void leaf_kinds(const TsldTree& t, std::vector<TsldTree::Terminal>& out) {
  if (t.is_terminal()) {
    out.push_back(t.terminal);
    return;
  }
  for (const auto& e : t.children) leaf_kinds(e.child, out);
}

void collect_blame(const TsldTree& t, std::vector<int>& path, std::map<int, bool>& all_wrong) {
  if (t.is_terminal()) {
    bool wrong = t.terminal == TsldTree::Terminal::Wrong;
    for (int id : path) {
      auto [it, inserted] = all_wrong.emplace(id, wrong);
      if (!inserted) it->second = it->second && wrong;
    }
    return;
  }
  for (const auto& e : t.children) {
    path.push_back(e.clause_id);
    collect_blame(e.child, path, all_wrong);
    path.pop_back();
  }
}

void erroneous_branches(const TsldTree& t, std::vector<std::string>& path,
                        std::vector<std::string>& out) {
  if (t.is_terminal()) {
    if (t.terminal == TsldTree::Terminal::Wrong) {
      std::string s;
      for (const auto& part : path) s += part + " => ";
      out.push_back(s + "wrong");
    }
    return;
  }
  path.push_back(to_string(t.query));
  for (const auto& e : t.children) erroneous_branches(e.child, path, out);
  path.pop_back();
}

}  // namespace

TsldTree build_tree(const Program& p, const Query& q, int depth_bound) {
  if (depth_bound < 1) throw std::invalid_argument("build_tree: depth_bound must be >= 1");
  return expand(p, q, depth_bound);
}

TreeClassification classify(const TsldTree& t) {
  std::vector<TsldTree::Terminal> leaves;
  leaf_kinds(t, leaves);
  bool any_success = false, any_depth = false, all_wrong = true;
  for (auto k : leaves) {
    if (k == TsldTree::Terminal::Success) any_success = true;
    if (k == TsldTree::Terminal::Depth) any_depth = true;
    if (k != TsldTree::Terminal::Wrong) all_wrong = false;
  }
  if (any_success) return TreeClassification::Successful;
  if (any_depth) return TreeClassification::DepthBounded;
  if (all_wrong && !leaves.empty()) return TreeClassification::FinitelyErroneous;
  return TreeClassification::FinitelyFailed;
}

Query generic_query(const Program& p) {
  Query q;
  std::set<std::pair<std::string, std::size_t>> seen;
  int counter = 1;
  for (const Clause& c : p.clauses) {
    auto key = std::make_pair(c.head.pred, c.head.args.size());
    if (!seen.insert(key).second) continue;
    PredAtom a{c.head.pred, {}};
    for (std::size_t i = 0; i < c.head.args.size(); ++i)
      a.args.push_back(Term::make_var("X" + std::to_string(counter++)));
    q.atoms.push_back(std::move(a));
  }
  return q;
}

std::set<int> blamed_clauses(const TsldTree& t) {
  std::map<int, bool> all_wrong;
  std::vector<int> path;
  collect_blame(t, path, all_wrong);
  std::set<int> out;
  for (const auto& [id, wrong] : all_wrong)
    if (wrong) out.insert(id);
  return out;
}

namespace {

bool has_depth_leaf(const TsldTree& t) {
  if (t.is_terminal()) return t.terminal == TsldTree::Terminal::Depth;
  for (const auto& e : t.children)
    if (has_depth_leaf(e.child)) return true;
  return false;
}

}  // namespace

Diagnosis diagnose_program(const Program& p, int depth_bound) {
  Diagnosis d;
  Query gq = generic_query(p);
  if (gq.atoms.empty()) {
    d.verdict = DiagnosisVerdict::NoTypeError;
    return d;
  }
  TsldTree tree = build_tree(p, gq, depth_bound);
  d.blamed = blamed_clauses(tree);
  if (!d.blamed.empty()) {
    d.verdict = DiagnosisVerdict::TypeErrorInProgram;
    std::vector<std::string> path;
    erroneous_branches(tree, path, d.evidence);
  } else if (has_depth_leaf(tree)) {
    d.verdict = DiagnosisVerdict::UnknownDepthBounded;
  } else {
    d.verdict = DiagnosisVerdict::NoTypeError;
  }
  return d;
}

Diagnosis diagnose_query(const Program& p, const Query& q, int depth_bound) {
  Diagnosis dp = diagnose_program(p, depth_bound);
  if (dp.verdict != DiagnosisVerdict::NoTypeError) return dp;

  Diagnosis d;
  TsldTree tree = build_tree(p, q, depth_bound);
  switch (classify(tree)) {
    case TreeClassification::FinitelyErroneous: {
      d.verdict = DiagnosisVerdict::TypeErrorInQuery;
      std::vector<std::string> path;
      erroneous_branches(tree, path, d.evidence);
      break;
    }
    case TreeClassification::DepthBounded:
      d.verdict = DiagnosisVerdict::UnknownDepthBounded;
      break;
    default:
      d.verdict = DiagnosisVerdict::NoTypeError;
      break;
  }
  return d;
}

std::vector<Resultant> resultants(const Derivation& d) {
  std::vector<Resultant> out;
  for (const auto& [query, step] : d.steps) {
    if (!step.is_progress())
      throw std::invalid_argument("resultants: derivation contains a non-unifying step");
    Resultant r;
    r.head = apply(step.progress().mgu, query);
    r.head.false_marker = false;
    r.body = step.progress().next;
    r.body.false_marker = false;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

void collect_answers(const TsldTree& t, const Substitution& acc,
                     const std::set<std::string>& query_vars, int max_answers,
                     std::vector<Substitution>& out) {
  if (static_cast<int>(out.size()) >= max_answers) return;
  if (t.is_terminal()) {
    if (t.terminal == TsldTree::Terminal::Success) out.push_back(restrict_to(acc, query_vars));
    return;
  }
  for (const auto& e : t.children) {
    Substitution next = e.has_mgu ? compose(e.mgu, acc) : acc;
    collect_answers(e.child, next, query_vars, max_answers, out);
  }
}

}  // namespace

SolveResult solve(const Program& p, const Query& q, int depth_bound, int max_answers) {
  SolveResult r;
  r.tree = build_tree(p, q, depth_bound);
  collect_answers(r.tree, Substitution{}, vars_of(q), max_answers, r.answers);
  r.classification = classify(r.tree);
  r.diagnosis = diagnose_query(p, q, depth_bound);
  return r;
}

}  // namespace tsld
