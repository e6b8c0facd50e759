#include "wkc/world.hpp"

#include "wkc/errors.hpp"

namespace wkc {

Scope::Scope(std::vector<Variable> vars) : vars_(std::move(vars)) {
    for (size_t i = 0; i < vars_.size(); ++i) {
        auto [it, inserted] = index_.emplace(vars_[i].name(), static_cast<int>(i));
        if (!inserted)
            throw DomainError("duplicate variable in scope: " + vars_[i].name());
    }
}

int Scope::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

Scope Scope::without(const std::vector<Variable>& removed) const {
    std::vector<Variable> kept;
    kept.reserve(vars_.size());
    for (const auto& v : vars_) {
        bool drop = false;
        for (const auto& r : removed)
            if (r == v) { drop = true; break; }
        if (!drop) kept.push_back(v);
    }
    return Scope(std::move(kept));
}

World::World(ScopePtr scope, std::vector<bool> values)
    : scope_(std::move(scope)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != scope_->size())
        throw DomainError("world size does not match scope");
}

bool World::value(const Variable& v) const {
    int i = scope_->index_of(v.name());
    if (i < 0) throw DomainError("variable not assigned by world: " + v.name());
    return values_[static_cast<size_t>(i)];
}

std::string World::str() const {
    std::string out;
    for (int i = 0; i < scope_->size(); ++i) {
        if (i) out += ' ';
        if (!value(i)) out += '~';
        out += scope_->var(i).name();
    }
    return out;
}

bool eval(const Formula& f, const World& w) {
    switch (f.kind()) {
    case Formula::Kind::Constant:
        return f.const_value();
    case Formula::Kind::Lit:
        return w.value(f.literal().var()) == f.literal().positive();
    case Formula::Kind::Not:
        return !eval(f.children()[0], w);
    case Formula::Kind::And:
        for (const auto& c : f.children())
            if (!eval(c, w)) return false;
        return true;
    case Formula::Kind::Or:
        for (const auto& c : f.children())
            if (eval(c, w)) return true;
        return false;
    case Formula::Kind::Implies:
        return !eval(f.children()[0], w) || eval(f.children()[1], w);
    case Formula::Kind::Iff:
        return eval(f.children()[0], w) == eval(f.children()[1], w);
    }
    return false;  // unreachable
}

World world_from_rank(const ScopePtr& scope, uint64_t rank) {
    int n = scope->size();
    std::vector<bool> values(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        // first variable most significant; bit clear means true
        uint64_t bit = (rank >> (n - 1 - i)) & 1u;
        values[static_cast<size_t>(i)] = bit == 0;
    }
    return World(scope, std::move(values));
}

} // namespace wkc
