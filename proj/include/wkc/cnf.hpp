#pragma once

#include <string>
#include <vector>

#include "wkc/formula.hpp"
#include "wkc/world.hpp"

namespace wkc {

// Disjunction of literals, kept sorted and duplicate-free. A clause holding a
// complementary pair is a tautology; to_cnf drops such clauses.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Literal> lits);

    bool empty() const { return lits_.empty(); }  // empty clause == false
    const std::vector<Literal>& lits() const { return lits_; }
    bool tautological() const;

    friend bool operator==(const Clause& a, const Clause& b) { return a.lits_ == b.lits_; }
    friend bool operator<(const Clause& a, const Clause& b) { return a.lits_ < b.lits_; }

    std::string str() const;

private:
    std::vector<Literal> lits_;
};

// Conjunction of literals. Construction rejects a literal together with its
// negation (contradiction signal).
class Term {
public:
    Term() = default;  // empty term == true
    explicit Term(std::vector<Literal> lits);

    bool empty() const { return lits_.empty(); }
    const std::vector<Literal>& lits() const { return lits_; }
    // +1 entailed true, -1 entailed false, 0 unconstrained.
    int sign_of(const Variable& v) const;

    std::string str() const;

private:
    std::vector<Literal> lits_;
};

// Conjunction of clauses; empty Cnf == true.
class Cnf {
public:
    Cnf() = default;
    explicit Cnf(std::vector<Clause> clauses);

    bool empty() const { return clauses_.empty(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    bool has_empty_clause() const;

    std::set<Variable> vars() const;
    std::string str() const;

private:
    std::vector<Clause> clauses_;
};

// Distribution-based transformation: the result is logically equivalent to f
// over vars(f), not merely equisatisfiable. Worst-case exponential; inputs in
// this toolkit are desk-scale.
Cnf to_cnf(const Formula& f);

bool eval(const Clause& c, const World& w);
bool eval(const Term& t, const World& w);
bool eval(const Cnf& c, const World& w);

// Interprets a formula that is syntactically a conjunction of literals.
// Throws DomainError otherwise.
Term term_from_formula(const Formula& f);

// Comma-separated literal list, e.g. "x,~z". Whitespace around items ignored.
Term parse_term_list(const std::string& text);

// DIMACS "p cnf <vars> <clauses>". Variables are named v1..vn in header
// order; the returned scope covers all declared variables.
struct DimacsProblem {
    Cnf cnf;
    ScopePtr scope;
};
DimacsProblem read_dimacs(const std::string& text, const std::string& source = "");

} // namespace wkc
