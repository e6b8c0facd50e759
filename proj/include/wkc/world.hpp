#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wkc/formula.hpp"

namespace wkc {

// An ordered variable universe. Order is fixed at construction and drives
// world enumeration and .nnf serialization.
class Scope {
public:
    Scope() = default;
    explicit Scope(std::vector<Variable> vars);

    int size() const { return static_cast<int>(vars_.size()); }
    const Variable& var(int i) const { return vars_[static_cast<size_t>(i)]; }
    const std::vector<Variable>& vars() const { return vars_; }

    // -1 if absent.
    int index_of(const std::string& name) const;
    bool contains(const std::string& name) const { return index_of(name) >= 0; }

    // New scope with the given variables removed; relative order preserved.
    Scope without(const std::vector<Variable>& removed) const;

    friend bool operator==(const Scope& a, const Scope& b) { return a.vars_ == b.vars_; }

private:
    std::vector<Variable> vars_;
    std::unordered_map<std::string, int> index_;
};

using ScopePtr = std::shared_ptr<const Scope>;

// A total assignment over a scope.
class World {
public:
    World(ScopePtr scope, std::vector<bool> values);

    const Scope& scope() const { return *scope_; }
    ScopePtr scope_ptr() const { return scope_; }

    bool value(int index) const { return values_[static_cast<size_t>(index)]; }
    // Throws DomainError for variables outside the scope.
    bool value(const Variable& v) const;

    // Literals in scope order, e.g. "a ~b c".
    std::string str() const;

    friend bool operator==(const World& a, const World& b) {
        return *a.scope_ == *b.scope_ && a.values_ == b.values_;
    }
    friend bool operator<(const World& a, const World& b) { return a.values_ < b.values_; }

private:
    ScopePtr scope_;
    std::vector<bool> values_;
};

// Classical evaluation; throws DomainError when the formula mentions a
// variable the world does not assign.
bool eval(const Formula& f, const World& w);

// Worlds over `scope`, first variable most significant, true before false.
// rank 0 is the all-true world.
World world_from_rank(const ScopePtr& scope, uint64_t rank);

} // namespace wkc
