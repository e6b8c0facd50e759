#include "doctest.h"

#include <cmath>
#include <filesystem>

#include "wkc/diagnosis.hpp"
#include "wkc/errors.hpp"
#include "wkc/parser.hpp"

#include "support.hpp"

using namespace wkc;
using namespace wkc::testing;

namespace {

const char* kInverters =
    "# two-inverter chain: y = ~x, z = ~y when both gates work\n"
    "inf ; ok1 -> (y <-> ~x)\n"
    "inf ; ok2 -> (z <-> ~y)\n"
    "ok ok1 0.1\n"
    "ok ok2 0.2\n";

DiagnosticSystem inverters() { return read_sys(kInverters, "mem"); }

} // namespace

TEST_CASE("sys reader builds the system and validates its pieces") {
    DiagnosticSystem sys = inverters();
    REQUIRE(sys.components.size() == 2);
    CHECK(sys.components[0].var.name() == "ok1");
    CHECK(sys.components[0].failure_probability == doctest::Approx(0.1));
    // scope is lexicographic over vars(SD)
    std::vector<std::string> names;
    for (const auto& v : sys.scope->vars()) names.push_back(v.name());
    CHECK(names == std::vector<std::string>{"ok1", "ok2", "x", "y", "z"});

    CHECK_THROWS_AS(read_sys("2 ; a\nok a 0.1\n", "mem"), ParseError);   // finite weight
    CHECK_THROWS_AS(read_sys("inf ; a\nok a 0\n", "mem"), ParseError);   // p out of range
    CHECK_THROWS_AS(read_sys("inf ; a\nok a 1\n", "mem"), ParseError);
    CHECK_THROWS_AS(read_sys("inf ; a\nok b 0.1\n", "mem"), ParseError); // unused health var
    CHECK_THROWS_AS(read_sys("inf ; a\nok a 0.1\nok a 0.2\n", "mem"), ParseError); // dup
    CHECK_THROWS_AS(read_sys("inf ; a &\nok a 0.1\n", "mem"), ParseError);
}

TEST_CASE("the inverter chain ranks its diagnoses by posterior") {
    DiagnosisSession session(inverters());
    DiagnosisReport rep = session.diagnose(parse_term_list("x,~z"));

    CHECK_FALSE(rep.inconsistent);
    REQUIRE(rep.ranked.size() == 3);
    CHECK(rep.ranked[0].term.str() == "ok1 & ~ok2");
    CHECK(rep.ranked[1].term.str() == "~ok1 & ok2");
    CHECK(rep.ranked[2].term.str() == "~ok1 & ~ok2");
    CHECK(rep.ranked[0].probability == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(rep.ranked[1].probability == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(rep.ranked[2].probability == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(rep.k.value() == doctest::Approx(-std::log(0.18)).epsilon(1e-12));
    CHECK(rep.log_probability == doctest::Approx(std::log(0.18)).epsilon(1e-12));

    REQUIRE(rep.top.size() == 1);
    CHECK(rep.top[0].str() == "ok1 & ~ok2");
}

TEST_CASE("fault-set scoring changes scores but not the winner here") {
    DiagnosisSession session(inverters());
    DiagnosisReport rep = session.diagnose(parse_term_list("x,~z"), DiagnosisMode::FaultsOnly);

    REQUIRE(rep.ranked.size() == 3);
    CHECK(rep.ranked[0].term.str() == "ok1 & ~ok2");
    CHECK(rep.ranked[0].score.value() == doctest::Approx(-std::log(0.2)).epsilon(1e-12));
    CHECK(rep.ranked[1].score.value() == doctest::Approx(-std::log(0.1)).epsilon(1e-12));
    CHECK(rep.ranked[2].score.value() ==
          doctest::Approx(-std::log(0.1) - std::log(0.2)).epsilon(1e-12));
    REQUIRE(rep.top.size() == 1);
    CHECK(rep.top[0].str() == "ok1 & ~ok2");
}

TEST_CASE("consistent observations keep the all-healthy diagnosis on top") {
    DiagnosisSession session(inverters());
    DiagnosisReport rep = session.diagnose(parse_term_list("x,z"));
    // x and z=x is exactly the healthy behavior... of a faulty chain: healthy
    // gives z = x after double inversion, so all-ok is consistent
    REQUIRE(!rep.ranked.empty());
    CHECK(rep.ranked[0].term.str() == "ok1 & ok2");
    CHECK(rep.ranked[0].probability == doctest::Approx(0.9 * 0.8).epsilon(1e-12));
}

TEST_CASE("ties order healthy-first component by component") {
    // two components, equal probabilities, observation blaming either one
    DiagnosticSystem sys = read_sys(
        "inf ; ok1 -> x\n"
        "inf ; ok2 -> ~x\n"
        "ok ok1 0.5\n"
        "ok ok2 0.5\n",
        "mem");
    DiagnosisSession session(sys);
    DiagnosisReport rep = session.diagnose(Term(), DiagnosisMode::FaultsOnly);
    // single-fault candidates (ok1,~ok2) and (~ok1,ok2) tie; (~ok1,~ok2) trails
    REQUIRE(rep.ranked.size() == 3);
    CHECK(rep.ranked[0].term.str() == "ok1 & ~ok2");
    CHECK(rep.ranked[1].term.str() == "~ok1 & ok2");
    CHECK(rep.ranked[2].term.str() == "~ok1 & ~ok2");
    CHECK(rep.top.size() == 2);
}

TEST_CASE("observations conflicting with every candidate are flagged") {
    DiagnosticSystem sys = read_sys("inf ; x\ninf ; ok1 -> y\nok ok1 0.1\n", "mem");
    DiagnosisSession session(sys);
    DiagnosisReport rep = session.diagnose(parse_term_list("~x"));
    CHECK(rep.inconsistent);
    CHECK(rep.ranked.empty());
    CHECK(rep.top.empty());
    CHECK(rep.k.is_infinite());
}

TEST_CASE("observations must avoid health variables and stay in scope") {
    DiagnosisSession session(inverters());
    CHECK_THROWS_AS(session.diagnose(parse_term_list("ok1")), DomainError);
    CHECK_THROWS_AS(session.diagnose(parse_term_list("nope")), DomainError);
}

TEST_CASE("a session answers many observations without recompiling") {
    CompileStats st;
    DiagnosisSession session(inverters(), "", &st);
    uint64_t calls_after_build = st.compile_calls;
    CHECK(calls_after_build > 0);

    DiagnosisReport a = session.diagnose(parse_term_list("x,~z"));
    DiagnosisReport b = session.diagnose(parse_term_list("~x,~z"));
    CHECK(st.compile_calls == calls_after_build); // conditioning only
    CHECK(a.ranked.size() == 3);
    // ~x,~z is the healthy behavior: y = ~x = true, z = ~y = false
    CHECK(b.ranked[0].term.str() == "ok1 & ok2");

    // fresh sessions agree with the long-lived one
    DiagnosisSession fresh(inverters());
    DiagnosisReport a2 = fresh.diagnose(parse_term_list("x,~z"));
    REQUIRE(a2.ranked.size() == a.ranked.size());
    for (size_t i = 0; i < a.ranked.size(); ++i) {
        CHECK(a2.ranked[i].term.str() == a.ranked[i].term.str());
        CHECK(a2.ranked[i].score == a.ranked[i].score);
    }
}

TEST_CASE("the disk cache skips compilation on the second session") {
    std::string dir = "diag_cache_tmp";
    std::filesystem::remove_all(dir);

    CompileStats first_stats;
    DiagnosisSession first(inverters(), dir, &first_stats);
    CHECK_FALSE(first.loaded_from_cache());
    CHECK(first_stats.compile_calls > 0);
    DiagnosisReport a = first.diagnose(parse_term_list("x,~z"));

    CompileStats second_stats;
    DiagnosisSession second(inverters(), dir, &second_stats);
    CHECK(second.loaded_from_cache());
    CHECK(second_stats.compile_calls == 0);
    CHECK(second.circuit() == first.circuit());

    DiagnosisReport b = second.diagnose(parse_term_list("x,~z"));
    REQUIRE(b.ranked.size() == a.ranked.size());
    for (size_t i = 0; i < a.ranked.size(); ++i) {
        CHECK(b.ranked[i].term.str() == a.ranked[i].term.str());
        CHECK(b.ranked[i].score == a.ranked[i].score);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("health variables eliminated by conditioning are still charged") {
    // conditioning on x makes ok1 -> x vacuous; ok1 must still appear in the
    // candidate ranking with its healthy state preferred
    DiagnosticSystem sys = read_sys("inf ; ok1 -> x\nok ok1 0.1\n", "mem");
    DiagnosisSession session(sys);
    DiagnosisReport rep = session.diagnose(parse_term_list("x"));
    REQUIRE(rep.ranked.size() == 2);
    CHECK(rep.ranked[0].term.str() == "ok1");
    CHECK(rep.ranked[0].probability == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(rep.ranked[1].term.str() == "~ok1");
    REQUIRE(rep.top.size() == 1);
    CHECK(rep.top[0].str() == "ok1");

    // whereas ~x pins the fault
    DiagnosisReport rep2 = session.diagnose(parse_term_list("~x"));
    REQUIRE(rep2.ranked.size() == 1);
    CHECK(rep2.ranked[0].term.str() == "~ok1");
    CHECK(rep2.ranked[0].probability == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("exact scores are the negated log posteriors of the fault pattern") {
    Rng rng(default_seed() + 20);
    // random 3-component systems with random gate constraints; brute force the
    // posterior of every consistent candidate and compare
    for (int round = 0; round < 25; ++round) {
        std::vector<Variable> io = {Variable("u"), Variable("w")};
        std::vector<WeightedConstraint> dummy; // build SD textually instead
        std::string text;
        const char* oks[3] = {"ok1", "ok2", "ok3"};
        double ps[3] = {0.1, 0.3, 0.45};
        for (int i = 0; i < 3; ++i) {
            Formula body = random_formula(rng, io, 2);
            text += "inf ; " + std::string(oks[i]) + " -> (" + body.str() + ")\n";
        }
        for (int i = 0; i < 3; ++i)
            text += "ok " + std::string(oks[i]) + " " + std::to_string(ps[i]) + "\n";
        DiagnosticSystem sys = read_sys(text, "mem");

        DiagnosisSession session(sys);
        DiagnosisReport rep = session.diagnose(Term());

        // brute force over the full scope
        auto scope = sys.scope;
        std::map<std::vector<bool>, bool> consistent;
        for (const World& w : all_worlds(scope)) {
            if (!eval(sys.sd, w)) continue;
            std::vector<bool> key;
            for (const auto& c : sys.components) key.push_back(w.value(c.var));
            consistent[key] = true;
        }
        REQUIRE(rep.ranked.size() == consistent.size());
        for (const auto& d : rep.ranked) {
            std::vector<bool> key = d.ok_values;
            REQUIRE(consistent.count(key) == 1);
            double post = 1.0;
            for (size_t i = 0; i < key.size(); ++i)
                post *= key[i] ? 1.0 - ps[i] : ps[i];
            CHECK(d.probability == doctest::Approx(post).epsilon(1e-9));
        }
        // ranked is sorted by score
        for (size_t i = 1; i < rep.ranked.size(); ++i)
            CHECK(rep.ranked[i - 1].score <= rep.ranked[i].score);
        // top contains exactly the minimal-score terms
        if (!rep.ranked.empty()) {
            size_t tied = 0;
            while (tied < rep.ranked.size() && rep.ranked[tied].score == rep.k) ++tied;
            CHECK(rep.top.size() == tied);
        }
    }
}

TEST_CASE("fault-set and posterior scoring usually crown the same diagnosis") {
    // With every failure probability below 1/2 the two scores are both sums of
    // positive per-fault charges (-log p versus the log odds), so they often
    // share a winner -- but not always: many near-1/2 faults are cheap on the
    // odds scale yet expensive on -log p. Disagreements are legitimate; this
    // test measures them and reports instead of failing.
    Rng rng(default_seed() + 31);
    const char* oks[3] = {"ok1", "ok2", "ok3"};
    int compared = 0, disagreed = 0;

    for (int round = 0; round < 40; ++round) {
        std::vector<Variable> io = {Variable("u"), Variable("w")};
        double ps[3] = {0.05 + 0.01 * static_cast<double>(rng.below(40)),
                        0.05 + 0.01 * static_cast<double>(rng.below(40)),
                        0.05 + 0.01 * static_cast<double>(rng.below(40))};
        std::string text;
        for (int i = 0; i < 3; ++i) {
            Formula body = random_formula(rng, io, 2);
            text += "inf ; " + std::string(oks[i]) + " -> (" + body.str() + ")\n";
        }
        for (int i = 0; i < 3; ++i)
            text += "ok " + std::string(oks[i]) + " " + std::to_string(ps[i]) + "\n";
        DiagnosisSession session(read_sys(text, "mem"));

        DiagnosisReport faults = session.diagnose(Term(), DiagnosisMode::FaultsOnly);
        DiagnosisReport exact = session.diagnose(Term(), DiagnosisMode::Exact);
        REQUIRE(faults.ranked.size() == exact.ranked.size());
        if (faults.ranked.empty()) continue;

        // skip rounds where either mode's winner is tied: order among equals
        // is a convention, not a claim
        auto tied = [](const DiagnosisReport& r) {
            return r.ranked.size() > r.top.size() &&
                   r.ranked[r.top.size()].score.value() <= r.k.value() + 1e-9;
        };
        if (tied(faults) || tied(exact) || faults.top.size() != 1 || exact.top.size() != 1)
            continue;

        ++compared;
        if (faults.top[0].str() != exact.top[0].str()) ++disagreed;
    }

    CHECK(compared > 20);
    WARN_MESSAGE(disagreed == 0, "fault-set and posterior winners differed in ",
                 disagreed, " of ", compared, " tie-free rounds (all p < 1/2)");

    // Uniform probabilities are the clean case: both scores are then monotone
    // in the fault count alone, so the winners provably coincide.
    for (int round = 0; round < 15; ++round) {
        std::vector<Variable> io = {Variable("u"), Variable("w")};
        std::string text;
        for (int i = 0; i < 3; ++i) {
            Formula body = random_formula(rng, io, 2);
            text += "inf ; " + std::string(oks[i]) + " -> (" + body.str() + ")\n";
        }
        for (int i = 0; i < 3; ++i)
            text += "ok " + std::string(oks[i]) + " 0.2\n";
        DiagnosisSession session(read_sys(text, "mem"));
        DiagnosisReport faults = session.diagnose(Term(), DiagnosisMode::FaultsOnly);
        DiagnosisReport exact = session.diagnose(Term(), DiagnosisMode::Exact);
        std::set<std::string> ft, et;
        for (const Term& t : faults.top) ft.insert(t.str());
        for (const Term& t : exact.top) et.insert(t.str());
        CHECK(ft == et);
    }
}
