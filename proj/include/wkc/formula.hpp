#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wkc {

// A propositional symbol. Names compare by exact string equality and must
// match [A-Za-z_][A-Za-z0-9_]*.
class Variable {
public:
    Variable() = default;
    explicit Variable(std::string name) : name_(std::move(name)) {}

    const std::string& name() const { return name_; }

    friend bool operator==(const Variable& a, const Variable& b) { return a.name_ == b.name_; }
    friend bool operator!=(const Variable& a, const Variable& b) { return a.name_ != b.name_; }
    friend bool operator<(const Variable& a, const Variable& b) { return a.name_ < b.name_; }

    static bool valid_name(const std::string& name);

private:
    std::string name_;
};

class Literal {
public:
    Literal() : positive_(true) {}
    Literal(Variable var, bool positive) : var_(std::move(var)), positive_(positive) {}

    const Variable& var() const { return var_; }
    bool positive() const { return positive_; }
    Literal negated() const { return Literal(var_, !positive_); }

    friend bool operator==(const Literal& a, const Literal& b) {
        return a.positive_ == b.positive_ && a.var_ == b.var_;
    }
    friend bool operator!=(const Literal& a, const Literal& b) { return !(a == b); }
    friend bool operator<(const Literal& a, const Literal& b) {
        if (a.var_ != b.var_) return a.var_ < b.var_;
        return a.positive_ > b.positive_;  // positive before negative
    }

    std::string str() const { return positive_ ? var_.name() : "~" + var_.name(); }

private:
    Variable var_;
    bool positive_;
};

// Immutable propositional formula tree. And/Or are n-ary; construction
// flattens nested nodes of the same kind, drops structural duplicates among
// children and collapses singletons, so printing is canonical.
class Formula {
public:
    enum class Kind { Constant, Lit, Not, And, Or, Implies, Iff };

    Formula() : Formula(constant(true)) {}

    static Formula constant(bool value);
    static Formula lit(Literal l);
    static Formula lit(const std::string& name, bool positive = true) {
        return lit(Literal(Variable(name), positive));
    }
    static Formula negation(Formula f);
    static Formula conj(std::vector<Formula> children);
    static Formula disj(std::vector<Formula> children);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);

    Kind kind() const { return node_->kind; }
    bool const_value() const { return node_->value; }
    const Literal& literal() const { return node_->lit; }
    const std::vector<Formula>& children() const { return node_->children; }

    // Structural equality.
    friend bool operator==(const Formula& a, const Formula& b) { return equal(a, b); }
    friend bool operator!=(const Formula& a, const Formula& b) { return !equal(a, b); }

    std::string str() const;
    void collect_vars(std::set<Variable>& out) const;
    std::set<Variable> vars() const;

private:
    struct Node {
        Kind kind;
        bool value = false;          // Constant
        Literal lit;                 // Lit
        std::vector<Formula> children;
    };

    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static bool equal(const Formula& a, const Formula& b);
    static Formula nary(Kind kind, std::vector<Formula> children);
    void print(std::string& out, int parent_level) const;

    std::shared_ptr<const Node> node_;
};

} // namespace wkc
