#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "tsld/engine.hpp"
#include "tsld/parser.hpp"

using namespace tsld;

namespace {

const char* kThreeFacts = "p(0).\np(1).\np(a).\n";                       // Fig. 1
const char* kPairFact = "p(X,X).\n";                                     // Ex. 4/5
const char* kRChain = "p(1).\np(2).\nq(1).\nq(a).\nr(X) :- p(X),q(X).\n";  // Ex. 6
const char* kSelfApply = "p(X,X).\nq(X) :- p(1,a).\n";                   // Ex. 7
const char* kBlamed = "p(1).\nq(a).\nq(X) :- p(a).\n";                   // Ex. 8/9
const char* kQueryErr = "p(1).\nq(a).\nq(X) :- p(X).\n";                 // Ex. 10

std::vector<TsldTree::Terminal> leaves(const TsldTree& t) {
  std::vector<TsldTree::Terminal> out;
  if (t.is_terminal()) return {t.terminal};
  for (const auto& e : t.children) {
    auto sub = leaves(e.child);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

int node_count(const TsldTree& t) {
  int n = 1;
  for (const auto& e : t.children) n += node_count(e.child);
  return n;
}

}  // namespace

TEST_CASE("three-fact program, query p(1): false/success/wrong children in clause order") {
  Program p = parse_program(kThreeFacts);
  TsldTree t = build_tree(p, parse_query("p(1)."), 16);
  REQUIRE(t.children.size() == 3);
  CHECK(t.selected_index == 0);
  CHECK(t.children[0].clause_id == 1);
  CHECK(t.children[0].child.get().terminal == TsldTree::Terminal::False);
  CHECK(t.children[1].clause_id == 2);
  CHECK(t.children[1].child.get().terminal == TsldTree::Terminal::Success);
  CHECK(t.children[2].clause_id == 3);
  CHECK(t.children[2].child.get().terminal == TsldTree::Terminal::Wrong);
  CHECK(node_count(t) == 4);
  CHECK(classify(t) == TreeClassification::Successful);

  SolveResult r = solve(p, parse_query("p(1)."), 16, 10);
  REQUIRE(r.answers.size() == 1);
  CHECK(r.answers[0].empty());
  CHECK(r.diagnosis.verdict == DiagnosisVerdict::NoTypeError);
}

TEST_CASE("selection is leftmost and applicable clauses are matched by symbol/arity") {
  Program p = parse_program(kBlamed);
  CHECK(select_atom(parse_query("p(2),q(b).")) == 0);
  CHECK_THROWS_AS(select_atom(Query{}), std::invalid_argument);
  CHECK(applicable_clauses(p, parse_query("q(b).").atoms[0]) == std::vector<int>{2, 3});
  CHECK(applicable_clauses(p, parse_query("p(2).").atoms[0]) == std::vector<int>{1});
  CHECK(applicable_clauses(p, parse_query("r(2).").atoms[0]).empty());
}

TEST_CASE("p(X,X): wrong halts immediately for p(1,a),p(1,2)") {
  Program p = parse_program(kPairFact);
  StepResult s = tsld_step(p, parse_query("p(1,a),p(1,2)."), 1);
  CHECK(s.is_wrong_halt());

  Derivation d = derive(p, parse_query("p(1,a),p(1,2)."), {1}, 16);
  CHECK(d.outcome == DerivationOutcome::Erroneous);
  CHECK(d.steps.size() == 1);
}

TEST_CASE("p(X,X): false is carried, not terminal, for p(1,2),p(1,a)") {
  Program p = parse_program(kPairFact);
  StepResult s = tsld_step(p, parse_query("p(1,2),p(1,a)."), 1);
  REQUIRE(s.is_false_progress());
  CHECK(to_string(s.false_progress().next) == "false,p(1,a)");

  Derivation d = derive(p, parse_query("p(1,2),p(1,a)."), {1, 1}, 16);
  CHECK(d.outcome == DerivationOutcome::Erroneous);
  REQUIRE(d.steps.size() == 2);
  CHECK(to_string(d.steps[1].first) == "false,p(1,a)");

  Derivation d2 = derive(p, parse_query("p(1,2),p(1,1)."), {1, 1}, 16);
  CHECK(d2.outcome == DerivationOutcome::Failed);
  REQUIRE(d2.steps.size() == 2);
  CHECK(to_string(d2.steps[1].first) == "false,p(1,1)");
}

TEST_CASE("r(1) search tree matches the five-clause example: leaves {□,wrong,false,wrong}") {
  Program p = parse_program(kRChain);
  TsldTree t = build_tree(p, parse_query("r(1)."), 16);
  CHECK(node_count(t) == 8);  // root + 7

  auto ls = leaves(t);
  std::vector<TsldTree::Terminal> expected = {
      TsldTree::Terminal::Success, TsldTree::Terminal::Wrong, TsldTree::Terminal::False,
      TsldTree::Terminal::Wrong};
  CHECK(ls == expected);
  CHECK(classify(t) == TreeClassification::Successful);

  // Shape: r(1) => p(1),q(1); then c1 gives q(1), c2 gives false,q(1).
  REQUIRE(t.children.size() == 1);
  const TsldTree& mid = t.children[0].child;
  CHECK(to_string(mid.query) == "p(1),q(1)");
  REQUIRE(mid.children.size() == 2);
  CHECK(to_string(mid.children[0].child.get().query) == "q(1)");
  CHECK(to_string(mid.children[1].child.get().query) == "false,q(1)");
}

TEST_CASE("derivation step example: r(1) via the rule clause binds X to 1") {
  Program p = parse_program(kRChain);
  StepResult s = tsld_step(p, parse_query("r(1)."), 5);
  REQUIRE(s.is_progress());
  CHECK(to_string(s.progress().next) == "p(1),q(1)");
  CHECK_THROWS_AS(tsld_step(p, parse_query("r(1)."), 1), std::invalid_argument);
}

TEST_CASE("generic query takes one fresh atom per head predicate in first-occurrence order") {
  CHECK(to_string(generic_query(parse_program(kQueryErr))) == "p(X1),q(X2)");
  CHECK(to_string(generic_query(parse_program(kSelfApply))) == "p(X1,X2),q(X3)");
  CHECK(generic_query(parse_program("")).atoms.empty());
}

TEST_CASE("generic derivation through the clause with an ill-typed body goes wrong") {
  Program p = parse_program(kSelfApply);
  Derivation d = derive(p, parse_query("p(X1,X2),q(X3)."), {1, 2, 1}, 16);
  CHECK(d.outcome == DerivationOutcome::Erroneous);
  REQUIRE(d.steps.size() == 3);
  CHECK(to_string(d.steps[1].first) == "q(X3)");
  CHECK(to_string(d.steps[2].first) == "p(1,a)");
}

TEST_CASE("blamed clauses: c3 blamed, c1 exonerated by the failed branch") {
  Program p = parse_program(kBlamed);
  TsldTree t = build_tree(p, parse_query("p(2),q(b)."), 16);
  CHECK(classify(t) == TreeClassification::FinitelyFailed);
  std::set<int> blamed = blamed_clauses(t);
  CHECK(blamed == std::set<int>{3});

  // Both generic-query atom orders agree on the blame.
  TsldTree g1 = build_tree(p, parse_query("p(X1),q(X2)."), 16);
  TsldTree g2 = build_tree(p, parse_query("q(X1),p(X2)."), 16);
  CHECK(blamed_clauses(g1) == std::set<int>{3});
  CHECK(blamed_clauses(g2) == std::set<int>{3});
}

TEST_CASE("program diagnosis: blamed clause reported with evidence") {
  Diagnosis d = diagnose_program(parse_program(kBlamed), 16);
  CHECK(d.verdict == DiagnosisVerdict::TypeErrorInProgram);
  CHECK(d.blamed == std::set<int>{3});
  CHECK(!d.evidence.empty());

  CHECK(diagnose_program(parse_program(kQueryErr), 16).verdict == DiagnosisVerdict::NoTypeError);
  CHECK(diagnose_program(parse_program(""), 16).verdict == DiagnosisVerdict::NoTypeError);
}

TEST_CASE("query diagnosis: q(1.1) is a type error in the query, not the program") {
  Program p = parse_program(kQueryErr);
  TsldTree t = build_tree(p, parse_query("q(1.1)."), 16);
  auto ls = leaves(t);
  CHECK(ls == std::vector<TsldTree::Terminal>{TsldTree::Terminal::Wrong,
                                              TsldTree::Terminal::Wrong});
  CHECK(classify(t) == TreeClassification::FinitelyErroneous);

  Diagnosis d = diagnose_query(p, parse_query("q(1.1)."), 16);
  CHECK(d.verdict == DiagnosisVerdict::TypeErrorInQuery);

  CHECK(diagnose_query(p, parse_query("q(1)."), 16).verdict == DiagnosisVerdict::NoTypeError);
  // A program error shadows any query-level report.
  CHECK(diagnose_query(parse_program(kBlamed), parse_query("q(b)."), 16).verdict ==
        DiagnosisVerdict::TypeErrorInProgram);
}

TEST_CASE("answers are composed step mgus restricted to the query variables") {
  Program p = parse_program(kRChain);
  SolveResult r = solve(p, parse_query("r(X)."), 16, 10);
  CHECK(r.classification == TreeClassification::Successful);
  REQUIRE(r.answers.size() == 1);
  CHECK(*r.answers[0].lookup("X") == Term::integer(1));
  // Only the query variable appears in the answer.
  CHECK(r.answers[0].size() == 1);

  SolveResult multi = solve(parse_program("p(1).\np(2).\n"), parse_query("p(X)."), 16, 10);
  REQUIRE(multi.answers.size() == 2);
  CHECK(*multi.answers[0].lookup("X") == Term::integer(1));
  CHECK(*multi.answers[1].lookup("X") == Term::integer(2));
  CHECK(solve(parse_program("p(1).\np(2).\n"), parse_query("p(X)."), 16, 1).answers.size() == 1);
}

TEST_CASE("depth bounding marks the tree and the diagnosis as inconclusive") {
  Program loop = parse_program("p(X) :- p(X).\n");
  TsldTree t = build_tree(loop, parse_query("p(1)."), 8);
  CHECK(classify(t) == TreeClassification::DepthBounded);
  CHECK(diagnose_program(loop, 8).verdict == DiagnosisVerdict::UnknownDepthBounded);
  CHECK_THROWS_AS(build_tree(loop, parse_query("p(1)."), 0), std::invalid_argument);

  // Derivations report exhaustion separately.
  Derivation d = derive(loop, parse_query("p(1)."), {1, 1, 1}, 2);
  CHECK(d.outcome == DerivationOutcome::DepthExceeded);
}

TEST_CASE("an atom with no applicable clause fails finitely") {
  Program p = parse_program(kThreeFacts);
  TsldTree t = build_tree(p, parse_query("r(1)."), 8);
  CHECK(t.terminal == TsldTree::Terminal::False);
  CHECK(classify(t) == TreeClassification::FinitelyFailed);
}

TEST_CASE("resultants of a successful derivation") {
  Program p = parse_program(kRChain);
  Derivation d = derive(p, parse_query("r(X)."), {5, 1, 3}, 16);
  REQUIRE(d.outcome == DerivationOutcome::Success);
  std::vector<Resultant> rs = resultants(d);
  REQUIRE(rs.size() == 3);
  // First resultant: instantiated query head implied by the first body.
  CHECK(to_string(rs[0].head) == to_string(apply(d.steps[0].second.progress().mgu,
                                                 parse_query("r(X)."))));
  CHECK(to_string(rs[2].body) == "\xE2\x96\xA1");

  Derivation bad = derive(parse_program(kPairFact), parse_query("p(1,2),p(1,1)."), {1, 1}, 16);
  CHECK_THROWS_AS(resultants(bad), std::invalid_argument);
}

TEST_CASE("step rename keeps clause variables disjoint from the query") {
  Program p = parse_program("q(X) :- p(X,Y).\n");
  StepResult s = tsld_step(p, parse_query("q(Y)."), 1);
  REQUIRE(s.is_progress());
  // The clause's own Y was renamed away, so the two body arguments remain
  // distinct variables instead of being conflated with the query's Y.
  const Query& next = s.progress().next;
  REQUIRE(next.atoms.size() == 1);
  CHECK(next.atoms[0].pred == "p");
  REQUIRE(next.atoms[0].args[0].is_var());
  REQUIRE(next.atoms[0].args[1].is_var());
  CHECK(next.atoms[0].args[0] != next.atoms[0].args[1]);
}
