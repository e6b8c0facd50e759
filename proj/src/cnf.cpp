#include "wkc/cnf.hpp"

#include <algorithm>
#include <sstream>

#include "wkc/errors.hpp"

namespace wkc {

Clause::Clause(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
}

bool Clause::tautological() const {
    for (size_t i = 1; i < lits_.size(); ++i)
        if (lits_[i].var() == lits_[i - 1].var()) return true;
    return false;
}

std::string Clause::str() const {
    if (lits_.empty()) return "false";
    std::string out;
    for (size_t i = 0; i < lits_.size(); ++i) {
        if (i) out += " | ";
        out += lits_[i].str();
    }
    return out;
}

Term::Term(std::vector<Literal> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end());
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (size_t i = 1; i < lits_.size(); ++i)
        if (lits_[i].var() == lits_[i - 1].var())
            throw DomainError("contradictory term: " + lits_[i].var().name() +
                              " occurs with both polarities");
}

int Term::sign_of(const Variable& v) const {
    for (const auto& l : lits_)
        if (l.var() == v) return l.positive() ? 1 : -1;
    return 0;
}

std::string Term::str() const {
    if (lits_.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < lits_.size(); ++i) {
        if (i) out += " & ";
        out += lits_[i].str();
    }
    return out;
}

Cnf::Cnf(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()), clauses_.end());
}

bool Cnf::has_empty_clause() const {
    for (const auto& c : clauses_)
        if (c.empty()) return true;
    return false;
}

std::set<Variable> Cnf::vars() const {
    std::set<Variable> out;
    for (const auto& c : clauses_)
        for (const auto& l : c.lits()) out.insert(l.var());
    return out;
}

std::string Cnf::str() const {
    if (clauses_.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < clauses_.size(); ++i) {
        if (i) out += " & ";
        out += "(" + clauses_[i].str() + ")";
    }
    return out;
}

namespace {

// Negation normal form with connectives eliminated and constants folded.
Formula to_nnf(const Formula& f, bool positive) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Constant:
        return Formula::constant(f.const_value() == positive);
    case K::Lit:
        return Formula::lit(positive ? f.literal() : f.literal().negated());
    case K::Not:
        return to_nnf(f.children()[0], !positive);
    case K::And:
    case K::Or: {
        bool conj = (f.kind() == K::And) == positive;
        std::vector<Formula> parts;
        parts.reserve(f.children().size());
        for (const auto& c : f.children()) parts.push_back(to_nnf(c, positive));
        return conj ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case K::Implies: {
        const Formula& a = f.children()[0];
        const Formula& b = f.children()[1];
        if (positive)
            return Formula::disj({to_nnf(a, false), to_nnf(b, true)});
        return Formula::conj({to_nnf(a, true), to_nnf(b, false)});
    }
    case K::Iff: {
        const Formula& a = f.children()[0];
        const Formula& b = f.children()[1];
        if (positive)
            return Formula::conj({Formula::disj({to_nnf(a, false), to_nnf(b, true)}),
                                  Formula::disj({to_nnf(b, false), to_nnf(a, true)})});
        return Formula::disj({Formula::conj({to_nnf(a, true), to_nnf(b, false)}),
                              Formula::conj({to_nnf(b, true), to_nnf(a, false)})});
    }
    }
    return Formula::constant(false);  // unreachable
}

using ClauseList = std::vector<std::vector<Literal>>;

// f must be in NNF. Returns the clause set of f by distributing Or over And.
ClauseList distribute(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Constant:
        return f.const_value() ? ClauseList{} : ClauseList{{}};
    case K::Lit:
        return {{f.literal()}};
    case K::And: {
        ClauseList all;
        for (const auto& c : f.children()) {
            ClauseList part = distribute(c);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    case K::Or: {
        ClauseList acc{{}};
        for (const auto& c : f.children()) {
            ClauseList part = distribute(c);
            ClauseList next;
            next.reserve(acc.size() * part.size());
            for (const auto& a : acc)
                for (const auto& p : part) {
                    std::vector<Literal> merged = a;
                    merged.insert(merged.end(), p.begin(), p.end());
                    next.push_back(std::move(merged));
                }
            acc = std::move(next);
        }
        return acc;
    }
    default:
        throw DomainError("distribute: formula not in NNF");
    }
}

} // namespace

Cnf to_cnf(const Formula& f) {
    ClauseList raw = distribute(to_nnf(f, true));
    std::vector<Clause> clauses;
    clauses.reserve(raw.size());
    for (auto& lits : raw) {
        Clause cl(std::move(lits));
        if (!cl.tautological()) clauses.push_back(std::move(cl));
    }
    return Cnf(std::move(clauses));
}

bool eval(const Clause& c, const World& w) {
    for (const auto& l : c.lits())
        if (w.value(l.var()) == l.positive()) return true;
    return false;
}

bool eval(const Term& t, const World& w) {
    for (const auto& l : t.lits())
        if (w.value(l.var()) != l.positive()) return false;
    return true;
}

bool eval(const Cnf& c, const World& w) {
    for (const auto& cl : c.clauses())
        if (!eval(cl, w)) return false;
    return true;
}

Term term_from_formula(const Formula& f) {
    std::vector<Literal> lits;
    std::vector<const Formula*> stack{&f};
    while (!stack.empty()) {
        const Formula* g = stack.back();
        stack.pop_back();
        switch (g->kind()) {
        case Formula::Kind::Constant:
            if (!g->const_value()) throw DomainError("term must not contain 'false'");
            break;
        case Formula::Kind::Lit:
            lits.push_back(g->literal());
            break;
        case Formula::Kind::Not:
            if (g->children()[0].kind() != Formula::Kind::Lit)
                throw DomainError("not a term: negation of a non-literal");
            lits.push_back(g->children()[0].literal().negated());
            break;
        case Formula::Kind::And:
            for (const auto& c : g->children()) stack.push_back(&c);
            break;
        default:
            throw DomainError("not a term: " + g->str());
        }
    }
    return Term(std::move(lits));
}

Term parse_term_list(const std::string& text) {
    std::vector<Literal> lits;
    std::string item;
    std::stringstream in(text);
    while (std::getline(in, item, ',')) {
        size_t b = item.find_first_not_of(" \t");
        size_t e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        item = item.substr(b, e - b + 1);
        bool positive = true;
        while (!item.empty() && item[0] == '~') {
            positive = !positive;
            item = item.substr(1);
        }
        if (!Variable::valid_name(item))
            throw ParseError("malformed literal in term list: '" + item + "'");
        lits.emplace_back(Variable(item), positive);
    }
    return Term(std::move(lits));
}

DimacsProblem read_dimacs(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    long var_count = -1, clause_count = -1;
    std::vector<Clause> clauses;
    std::vector<Literal> current;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            std::istringstream hdr(line);
            std::string p, fmt;
            if (!(hdr >> p >> fmt >> var_count >> clause_count) || fmt != "cnf" ||
                var_count < 0 || clause_count < 0)
                throw ParseError("malformed DIMACS header", source, line_no, 1);
            continue;
        }
        if (var_count < 0)
            throw ParseError("clause before DIMACS header", source, line_no, 1);
        std::istringstream body(line);
        long lit;
        while (body >> lit) {
            if (lit == 0) {
                clauses.emplace_back(std::move(current));
                current.clear();
            } else {
                long v = lit < 0 ? -lit : lit;
                if (v > var_count)
                    throw ParseError("literal exceeds declared variable count", source, line_no, 1);
                current.emplace_back(Variable("v" + std::to_string(v)), lit > 0);
            }
        }
        if (!body.eof())
            throw ParseError("malformed clause line", source, line_no, 1);
    }
    if (var_count < 0)
        throw ParseError("missing DIMACS header", source, line_no, 1);
    if (!current.empty())
        throw ParseError("unterminated final clause", source, line_no, 1);
    if (static_cast<long>(clauses.size()) != clause_count)
        throw ParseError("clause count does not match header", source, line_no, 1);
    std::vector<Variable> vars;
    vars.reserve(static_cast<size_t>(var_count));
    for (long i = 1; i <= var_count; ++i) vars.emplace_back("v" + std::to_string(i));
    return DimacsProblem{Cnf(std::move(clauses)), std::make_shared<Scope>(std::move(vars))};
}

} // namespace wkc
