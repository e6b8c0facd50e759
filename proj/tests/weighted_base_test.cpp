#include "doctest.h"

#include "wkc/errors.hpp"
#include "wkc/parser.hpp"
#include "wkc/weighted_base.hpp"

#include "support.hpp"

using namespace wkc;
using namespace wkc::testing;

namespace {

WeightedBase ab_base() {
    std::vector<WeightedConstraint> cs{
        {parse_formula("a & b"), Weight::finite(2)},
        {parse_formula("~b"), Weight::finite(1)},
    };
    return WeightedBase(std::move(cs));
}

} // namespace

TEST_CASE("scope is declared vars then remaining vars lexicographically") {
    std::vector<WeightedConstraint> cs{{parse_formula("c | a"), Weight::finite(1)}};
    WeightedBase base(cs, {Variable("b")});
    std::vector<std::string> names;
    for (const auto& v : base.scope()->vars()) names.push_back(v.name());
    CHECK(names == std::vector<std::string>{"b", "a", "c"});
}

TEST_CASE("world weights sum the violated constraints") {
    WeightedBase base = ab_base();
    auto scope = base.scope();
    REQUIRE(scope->size() == 2);
    // rank order over (a, b): both true first
    CHECK(world_weight(base, world_from_rank(scope, 0)) == Weight::finite(1));
    CHECK(world_weight(base, world_from_rank(scope, 1)) == Weight::finite(2));
    CHECK(world_weight(base, world_from_rank(scope, 2)) == Weight::finite(3));
    CHECK(world_weight(base, world_from_rank(scope, 3)) == Weight::finite(2));
}

TEST_CASE("hard constraints force infinite weight when violated") {
    std::vector<WeightedConstraint> cs{
        {parse_formula("a"), Weight::infinity()},
        {parse_formula("b"), Weight::finite(1)},
    };
    WeightedBase base(cs);
    auto scope = base.scope();
    CHECK(world_weight(base, world_from_rank(scope, 0)) == Weight::zero());
    CHECK(world_weight(base, world_from_rank(scope, 2)).is_infinite());
    CHECK(hard_part(base) == parse_formula("a"));
}

TEST_CASE("zero-weight soft constraints are dropped with a warning") {
    std::vector<std::string> warnings;
    std::vector<WeightedConstraint> cs{
        {parse_formula("a"), Weight::zero()},
        {parse_formula("b"), Weight::finite(1)},
    };
    WeightedBase base(cs, {}, &warnings);
    CHECK(base.constraints().size() == 1);
    REQUIRE(warnings.size() == 1);
    // the scope still covers the dropped constraint's variables
    CHECK(base.scope()->contains("a"));
}

TEST_CASE("wb reader handles comments, blank lines and a vars line") {
    std::string text =
        "# two constraints\n"
        "vars a b\n"
        "\n"
        "2 ; a & b\n"
        "1 ; ~b\n";
    WeightedBase base = read_wb(text, "mem");
    CHECK(base.constraints().size() == 2);
    CHECK(base.scope()->size() == 2);
    CHECK(base.constraints()[0].weight == Weight::finite(2));
}

TEST_CASE("wb reader reports malformed lines with their position") {
    CHECK_THROWS_AS(read_wb("2 a & b\n", "mem"), ParseError);      // missing ';'
    CHECK_THROWS_AS(read_wb("x ; a\n", "mem"), ParseError);        // bad weight
    CHECK_THROWS_AS(read_wb("1 ; a &\n", "mem"), ParseError);      // bad formula
    CHECK_THROWS_AS(read_wb("1 ; a\nvars a\n", "mem"), ParseError); // vars not first
    try {
        read_wb("1 ; a\n2 ; b &\n", "mem");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
    }
}

TEST_CASE("declared scope must cover every constraint variable mentioned") {
    // vars line fixes the universe; extra names in formulas extend it after
    std::string text = "vars a\n1 ; a | b\n";
    WeightedBase base = read_wb(text, "mem");
    CHECK(base.scope()->size() == 2);
    CHECK(base.scope()->var(0).name() == "a");
    CHECK(base.scope()->var(1).name() == "b");
}

TEST_CASE("slurp_file fails loudly for missing paths") {
    CHECK_THROWS_AS(slurp_file("/nonexistent/definitely/absent.wb"), ParseError);
}
