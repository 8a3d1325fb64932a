#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tsld/parser.hpp"
#include "tsld/term.hpp"

using namespace tsld;

TEST_CASE("constants are typed by lexical class and compared by lexeme+type") {
  Program p = parse_program("p(1).\np(a).\n");
  REQUIRE(p.clauses.size() == 2);
  const Term& one = p.clauses[0].head.args[0];
  const Term& a = p.clauses[1].head.args[0];
  CHECK(one == Term::make_const("1", BaseType::Int));
  CHECK(a == Term::make_const("a", BaseType::Atom));
  CHECK(one != a);
  // 1 the int and 1.0 the float are different constants.
  CHECK(Term::make_const("1", BaseType::Int) != Term::make_const("1.0", BaseType::Float));
  CHECK(parse_term("1.1") == Term::make_const("1.1", BaseType::Float));
  CHECK(parse_term("-2") == Term::make_const("-2", BaseType::Int));
  CHECK(parse_term("\"s\"") == Term::make_const("s", BaseType::String));
}

TEST_CASE("clause and query parsing with ids in source order") {
  Program p = parse_program("p(1).\nq(a).\nq(X) :- p(X).\n% comment\n");
  REQUIRE(p.clauses.size() == 3);
  CHECK(p.clauses[0].id == 1);
  CHECK(p.clauses[2].id == 3);
  CHECK(p.clauses[2].head.pred == "q");
  REQUIRE(p.clauses[2].body.size() == 1);
  CHECK(p.clauses[2].body[0].args[0] == Term::make_var("X"));
  CHECK(p.clause_by_id(2)->head.pred == "q");
  CHECK(p.clause_by_id(9) == nullptr);

  Query q = parse_query("p(1,2),p(1,a).");
  REQUIRE(q.atoms.size() == 2);
  CHECK(q.atoms[1].args[1] == Term::atom("a"));
  CHECK_FALSE(q.false_marker);

  Query r = parse_query("r(1).");
  CHECK(r.atoms.size() == 1);
}

TEST_CASE("zero-ary predicates, nested terms, parse errors carry locations") {
  Program p = parse_program("p.\nq() :- p.\nr(f(g(X),1)).\n");
  CHECK(p.clauses[0].head.args.empty());
  CHECK(p.clauses[1].head.args.empty());
  const Term& t = p.clauses[2].head.args[0];
  REQUIRE(t.is_compound());
  CHECK(t.compound().functor == "f");
  CHECK(t.compound().args[0].compound().functor == "g");

  CHECK_THROWS_AS(parse_program("p(1)"), ParseError);
  CHECK_THROWS_AS(parse_query("p(X"), ParseError);
  try {
    parse_program("p(1).\nq(,).\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    Term t = testsupport::random_term(rng, 4);
    Term back = parse_term(to_string(t));
    CHECK(back == t);
  }
  Program p = parse_program("p(1).\nq(a).\nq(X) :- p(X), q(f(X,\"s\")).\n");
  CHECK(parse_program(to_string(p)) == p);
}

TEST_CASE("substitution application and lookup basics") {
  Substitution s;
  s.bind("X", Term::integer(1));
  s.bind("Y", Term::make_var("Y"));  // identity binding is dropped
  CHECK(s.size() == 1);
  CHECK(apply(s, parse_term("f(X,Y)")) == parse_term("f(1,Y)"));
  CHECK(apply(s, parse_term("g(Z)")) == parse_term("g(Z)"));

  Query q = parse_query("p(X),q(X,Y).");
  Query qs = apply(s, q);
  CHECK(qs.atoms[0].args[0] == Term::integer(1));
  CHECK(qs.atoms[1].args[1] == Term::make_var("Y"));
}

TEST_CASE("compose satisfies the application law on 10^4 random cases") {
  std::mt19937 rng(11);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Substitution eta = testsupport::random_substitution(rng);
    Substitution theta = testsupport::random_substitution(rng);
    Term t = testsupport::random_term(rng, 3);
    Substitution both = compose(eta, theta);
    CHECK(apply(both, t) == apply(eta, apply(theta, t)));
    ++checked;
  }
  CHECK(checked == 10000);

  // Identity laws.
  Substitution id;
  Substitution s;
  s.bind("X", parse_term("f(Y,1)"));
  CHECK(compose(id, s) == s);
  CHECK(compose(s, id) == s);
}

TEST_CASE("variable collection is first-occurrence ordered") {
  Term t = parse_term("f(Y,g(X,Y),Z)");
  std::vector<std::string> out;
  collect_vars(t, out);
  CHECK(out == std::vector<std::string>{"Y", "X", "Z"});
  CHECK(vars_of(t) == std::set<std::string>{"X", "Y", "Z"});
  CHECK(is_ground(parse_term("f(1,g(a))")));
  CHECK_FALSE(is_ground(t));
}

TEST_CASE("ground types of terms") {
  CHECK(ground_type_of(parse_term("1")) == GroundType::base_type(BaseType::Int));
  CHECK(ground_type_of(parse_term("abc")) == GroundType::base_type(BaseType::Atom));
  GroundType ft = ground_type_of(parse_term("f(1,a)"));
  REQUIRE(!ft.is_base());
  CHECK(ft.tree().functor == "f");
  CHECK(ft.tree().children[0] == GroundType::base_type(BaseType::Int));
  CHECK(ft.tree().children[1] == GroundType::base_type(BaseType::Atom));
  CHECK(ground_type_of(parse_term("f(1,a)")) != ground_type_of(parse_term("f(a,1)")));
  CHECK_THROWS_AS(ground_type_of(parse_term("f(X)")), std::invalid_argument);
}

TEST_CASE("rename_apart produces a fresh alpha-equivalent clause") {
  Program p = parse_program("q(X,Y) :- p(X,Z), p(Z,Y).\n");
  const Clause& c = p.clauses[0];
  std::set<std::string> avoid = {"X", "Z", "X_1"};
  Clause r = rename_apart(c, avoid);
  // No renamed variable collides with the avoid set.
  for (const auto& v : vars_of(r)) CHECK(avoid.count(v) == 0);
  CHECK(vars_of(r).size() == vars_of(c).size());
  // Renaming is a consistent variable-for-variable mapping: mapping the fresh
  // names back by position must reproduce the original clause.
  std::vector<std::string> orig, fresh;
  for (const Term& t : c.head.args) collect_vars(t, orig);
  for (const auto& b : c.body)
    for (const Term& t : b.args) collect_vars(t, orig);
  for (const Term& t : r.head.args) collect_vars(t, fresh);
  for (const auto& b : r.body)
    for (const Term& t : b.args) collect_vars(t, fresh);
  REQUIRE(orig.size() == fresh.size());
  Substitution back;
  for (std::size_t i = 0; i < fresh.size(); ++i) back.bind(fresh[i], Term::make_var(orig[i]));
  Clause restored = apply(back, r);
  restored.id = c.id;
  CHECK(restored == c);
}

TEST_CASE("query printing includes the false marker") {
  Query q;
  CHECK(to_string(q) == "\xE2\x96\xA1");
  q.false_marker = true;
  CHECK(to_string(q) == "false");
  q.atoms.push_back(parse_query("p(1,a).").atoms[0]);
  CHECK(to_string(q) == "false,p(1,a)");
}
