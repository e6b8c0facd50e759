#pragma once

// Shared test helpers: seeded generators for formulas, bases and CNFs plus
// brute-force model-set helpers. Everything is deterministic for a seed;
// WKC_SEED overrides the default.

#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "wkc/cnf.hpp"
#include "wkc/formula.hpp"
#include "wkc/nnf.hpp"
#include "wkc/weighted_base.hpp"
#include "wkc/world.hpp"

namespace wkc::testing {

inline uint64_t default_seed() {
    if (const char* s = std::getenv("WKC_SEED")) {
        char* end = nullptr;
        uint64_t v = std::strtoull(s, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 424242;
}

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    int below(int n) { return static_cast<int>(eng_() % static_cast<uint64_t>(n)); }
    bool flip() { return (eng_() & 1) != 0; }
    bool chance(int percent) { return below(100) < percent; }
    uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

inline ScopePtr make_scope(std::vector<Variable> vars) {
    return std::make_shared<Scope>(std::move(vars));
}

inline std::vector<Variable> test_vars(int n) {
    static const char* names[] = {"a", "b", "c", "d", "e", "f", "g", "h",
                                  "p", "q", "r", "s", "t", "u", "w", "x"};
    std::vector<Variable> vars;
    for (int i = 0; i < n; ++i) vars.emplace_back(names[i]);
    return vars;
}

inline Formula random_formula(Rng& rng, const std::vector<Variable>& vars, int depth) {
    if (depth <= 0 || rng.chance(35)) {
        if (rng.chance(4)) return Formula::constant(rng.flip());
        Formula v =
            Formula::lit(vars[static_cast<size_t>(rng.below(static_cast<int>(vars.size())))].name());
        return rng.flip() ? v : Formula::negation(v);
    }
    switch (rng.below(6)) {
    case 0:
        return Formula::negation(random_formula(rng, vars, depth - 1));
    case 1:
    case 2: {
        std::vector<Formula> kids;
        int n = 2 + rng.below(2);
        for (int i = 0; i < n; ++i) kids.push_back(random_formula(rng, vars, depth - 1));
        return rng.flip() ? Formula::conj(kids) : Formula::disj(kids);
    }
    case 3:
        return Formula::implies(random_formula(rng, vars, depth - 1),
                                random_formula(rng, vars, depth - 1));
    case 4:
        return Formula::iff(random_formula(rng, vars, depth - 1),
                            random_formula(rng, vars, depth - 1));
    default: {
        std::vector<Formula> kids{random_formula(rng, vars, depth - 1),
                                  random_formula(rng, vars, depth - 1)};
        return Formula::disj(kids);
    }
    }
}

// Declared scope always covers all `max_vars` variables so the compiled and
// oracle paths agree on the world universe even when a variable goes unused.
inline WeightedBase random_base(Rng& rng, int max_vars, int max_soft, int max_weight,
                                int max_hard = 0) {
    std::vector<Variable> vars = test_vars(max_vars);
    std::vector<WeightedConstraint> cs;
    int softs = 1 + rng.below(max_soft);
    for (int i = 0; i < softs; ++i)
        cs.push_back(WeightedConstraint{random_formula(rng, vars, 3),
                                        Weight::finite(1 + rng.below(max_weight))});
    if (max_hard > 0) {
        int hards = rng.below(max_hard + 1);
        for (int i = 0; i < hards; ++i)
            cs.push_back(WeightedConstraint{random_formula(rng, vars, 2), Weight::infinity()});
    }
    return WeightedBase(std::move(cs), vars);
}

inline Cnf random_cnf(Rng& rng, const std::vector<Variable>& vars, int max_clauses,
                      int max_len) {
    std::vector<Clause> clauses;
    int n = rng.below(max_clauses + 1);
    for (int i = 0; i < n; ++i) {
        std::vector<Literal> lits;
        int len = 1 + rng.below(max_len);
        for (int j = 0; j < len; ++j)
            lits.emplace_back(vars[static_cast<size_t>(rng.below(static_cast<int>(vars.size())))],
                              rng.flip());
        clauses.emplace_back(std::move(lits));
    }
    return Cnf(std::move(clauses));
}

inline std::vector<World> all_worlds(const ScopePtr& scope) {
    std::vector<World> out;
    out.reserve(1ull << scope->size());
    for (uint64_t rank = 0; rank < (1ull << scope->size()); ++rank)
        out.push_back(world_from_rank(scope, rank));
    return out;
}

inline std::set<World> formula_models(const Formula& f, const ScopePtr& scope) {
    std::set<World> out;
    for (const World& w : all_worlds(scope))
        if (eval(f, w)) out.insert(w);
    return out;
}

inline std::set<World> cnf_models(const Cnf& f, const ScopePtr& scope) {
    std::set<World> out;
    for (const World& w : all_worlds(scope))
        if (eval(f, w)) out.insert(w);
    return out;
}

inline std::set<World> circuit_models_brute(const NnfCircuit& c) {
    std::set<World> out;
    for (const World& w : all_worlds(c.scope_ptr()))
        if (evaluate(c, w)) out.insert(w);
    return out;
}

} // namespace wkc::testing
