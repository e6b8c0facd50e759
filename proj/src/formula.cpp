#include "wkc/formula.hpp"

#include <algorithm>
#include <cctype>

namespace wkc {

bool Variable::valid_name(const std::string& name) {
    if (name.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return name != "true" && name != "false";
}

Formula Formula::constant(bool value) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Constant;
    node->value = value;
    return Formula(std::move(node));
}

Formula Formula::lit(Literal l) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Lit;
    node->lit = std::move(l);
    return Formula(std::move(node));
}

Formula Formula::negation(Formula f) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Not;
    node->children.push_back(std::move(f));
    return Formula(std::move(node));
}

Formula Formula::nary(Kind kind, std::vector<Formula> children) {
    std::vector<Formula> flat;
    for (auto& c : children) {
        if (c.kind() == kind) {
            for (const auto& g : c.children()) flat.push_back(g);
        } else {
            flat.push_back(std::move(c));
        }
    }
    std::vector<Formula> uniq;
    for (auto& c : flat) {
        bool seen = false;
        for (const auto& u : uniq)
            if (u == c) { seen = true; break; }
        if (!seen) uniq.push_back(std::move(c));
    }
    if (uniq.empty()) return constant(kind == Kind::And);
    if (uniq.size() == 1) return uniq.front();
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->children = std::move(uniq);
    return Formula(std::move(node));
}

Formula Formula::conj(std::vector<Formula> children) {
    return nary(Kind::And, std::move(children));
}

Formula Formula::disj(std::vector<Formula> children) {
    return nary(Kind::Or, std::move(children));
}

Formula Formula::implies(Formula a, Formula b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Implies;
    node->children.push_back(std::move(a));
    node->children.push_back(std::move(b));
    return Formula(std::move(node));
}

Formula Formula::iff(Formula a, Formula b) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Iff;
    node->children.push_back(std::move(a));
    node->children.push_back(std::move(b));
    return Formula(std::move(node));
}

bool Formula::equal(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Kind::Constant: return a.const_value() == b.const_value();
    case Kind::Lit: return a.literal() == b.literal();
    default: break;
    }
    const auto& ca = a.children();
    const auto& cb = b.children();
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i)
        if (!equal(ca[i], cb[i])) return false;
    return true;
}

void Formula::collect_vars(std::set<Variable>& out) const {
    switch (kind()) {
    case Kind::Constant: return;
    case Kind::Lit: out.insert(literal().var()); return;
    default:
        for (const auto& c : children()) c.collect_vars(out);
    }
}

std::set<Variable> Formula::vars() const {
    std::set<Variable> out;
    collect_vars(out);
    return out;
}

namespace {
// Binding strength; children are parenthesized when weaker than the context.
int level_of(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Iff: return 0;
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::Not: return 4;
    default: return 5;
    }
}
} // namespace

void Formula::print(std::string& out, int parent_level) const {
    int my_level = level_of(kind());
    bool paren = my_level < parent_level;
    if (paren) out += '(';
    switch (kind()) {
    case Kind::Constant:
        out += const_value() ? "true" : "false";
        break;
    case Kind::Lit:
        if (!literal().positive()) out += '~';
        out += literal().var().name();
        break;
    case Kind::Not:
        out += '~';
        children()[0].print(out, my_level);  // "~" nests without parens
        break;
    case Kind::And:
    case Kind::Or: {
        const char* sep = kind() == Kind::And ? " & " : " | ";
        bool first = true;
        for (const auto& c : children()) {
            if (!first) out += sep;
            first = false;
            c.print(out, my_level + 1);  // children flattened, so same kind never nests
        }
        break;
    }
    case Kind::Implies:
        children()[0].print(out, my_level + 1);
        out += " -> ";
        children()[1].print(out, my_level);  // right-associative
        break;
    case Kind::Iff:
        children()[0].print(out, my_level);  // left-fold reprints without parens
        out += " <-> ";
        children()[1].print(out, my_level + 1);
        break;
    }
    if (paren) out += ')';
}

std::string Formula::str() const {
    std::string out;
    print(out, 0);
    return out;
}

} // namespace wkc
