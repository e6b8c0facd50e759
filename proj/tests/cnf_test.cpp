#include "doctest.h"

#include "wkc/cnf.hpp"
#include "wkc/errors.hpp"
#include "wkc/parser.hpp"

#include "support.hpp"

using namespace wkc;
using namespace wkc::testing;

TEST_CASE("clauses dedup literals and detect tautologies") {
    Clause c({Literal(Variable("a"), true), Literal(Variable("a"), true),
              Literal(Variable("b"), false)});
    CHECK(c.lits().size() == 2);
    CHECK_FALSE(c.tautological());

    Clause t({Literal(Variable("a"), true), Literal(Variable("a"), false)});
    CHECK(t.tautological());
}

TEST_CASE("terms reject contradictory literal pairs") {
    CHECK_THROWS_AS(Term({Literal(Variable("a"), true), Literal(Variable("a"), false)}),
                    DomainError);
    Term t({Literal(Variable("a"), true), Literal(Variable("b"), false),
            Literal(Variable("a"), true)});
    CHECK(t.lits().size() == 2);
}

TEST_CASE("to_cnf preserves the truth table") {
    Rng rng(default_seed() + 2);
    std::vector<Variable> vars = test_vars(5);
    auto scope = make_scope(vars);
    for (int i = 0; i < 200; ++i) {
        Formula f = random_formula(rng, vars, 4);
        Cnf c = to_cnf(f);
        for (const World& w : all_worlds(scope)) CHECK(eval(f, w) == eval(c, w));
    }
}

TEST_CASE("to_cnf drops tautological clauses") {
    Cnf c = to_cnf(parse_formula("a | ~a"));
    CHECK(c.clauses().empty());
    Cnf d = to_cnf(Formula::constant(false));
    CHECK(d.clauses().size() == 1);
    CHECK(d.clauses()[0].lits().empty());
}

TEST_CASE("parse_term_list builds partial assignments") {
    Term t = parse_term_list("a, ~b ,c");
    CHECK(t.lits().size() == 3);
    CHECK(t.str() == "a & ~b & c");
    CHECK(parse_term_list("").lits().empty());
    CHECK_THROWS_AS(parse_term_list("a, a & b"), ParseError);
    CHECK_THROWS_AS(parse_term_list("a, ~a"), DomainError);
}

TEST_CASE("dimacs reader validates the header and clause terminators") {
    DimacsProblem p = read_dimacs("c comment\np cnf 3 2\n1 -2 0\n2 3 0\n", "mem");
    CHECK(p.scope->size() == 3);
    CHECK(p.cnf.clauses().size() == 2);
    CHECK(p.scope->var(0).name() == "v1");

    CHECK_THROWS_AS(read_dimacs("p cnf 2 1\n1 0\n1 0\n", "mem"), ParseError); // extra clause
    CHECK_THROWS_AS(read_dimacs("p cnf 2 2\n1 0\n", "mem"), ParseError);      // missing clause
    CHECK_THROWS_AS(read_dimacs("p cnf 2 1\n3 0\n", "mem"), ParseError);      // var out of range
    CHECK_THROWS_AS(read_dimacs("p cnf 2 1\n1 2\n", "mem"), ParseError);      // missing 0
    CHECK_THROWS_AS(read_dimacs("1 0\n", "mem"), ParseError);                 // no header
}

TEST_CASE("term_from_formula accepts conjunctions of literals only") {
    Term t = term_from_formula(parse_formula("a & ~b"));
    CHECK(t.str() == "a & ~b");
    CHECK_THROWS_AS(term_from_formula(parse_formula("a | b")), DomainError);
}
