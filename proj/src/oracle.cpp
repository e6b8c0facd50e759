#include "wkc/oracle.hpp"

#include <set>

#include "wkc/errors.hpp"

namespace wkc {

namespace {

uint64_t checked_world_count(const Scope& s) {
    if (s.size() > kOracleMaxVars)
        throw DomainError("oracle scans are limited to " + std::to_string(kOracleMaxVars) +
                          " variables (got " + std::to_string(s.size()) + ")");
    return 1ull << s.size();
}

} // namespace

OracleReport oracle_scan(const WeightedBase& base, bool with_table) {
    const ScopePtr& scope = base.scope();
    const uint64_t count = checked_world_count(*scope);

    OracleReport rep;
    for (uint64_t rank = 0; rank < count; ++rank) {
        World w = world_from_rank(scope, rank);
        Weight k = world_weight(base, w);
        if (!k.is_infinite()) {
            if (k < rep.k) {
                rep.k = k;
                rep.preferred.clear();
            }
            if (k == rep.k) rep.preferred.push_back(w);
        }
        if (with_table) rep.table.push_back(OracleRow{std::move(w), k});
    }
    return rep;
}

OracleInferResult oracle_infer(const WeightedBase& base, const Formula& query,
                               const Formula& evidence) {
    const ScopePtr& scope = base.scope();
    const uint64_t count = checked_world_count(*scope);

    std::set<Variable> used = query.vars();
    evidence.collect_vars(used);
    for (const Variable& v : used)
        if (!scope->contains(v.name()))
            throw DomainError("variable '" + v.name() + "' is not a variable of the base");

    OracleInferResult r;
    r.weight = Weight::infinity();
    for (uint64_t rank = 0; rank < count; ++rank) {
        World w = world_from_rank(scope, rank);
        if (!eval(evidence, w)) continue;
        Weight k = world_weight(base, w);
        if (k < r.weight) r.weight = k;
    }
    if (r.weight.is_infinite()) {
        r.entailed = true;
        r.inconsistent = true;
        return r;
    }
    for (uint64_t rank = 0; rank < count; ++rank) {
        World w = world_from_rank(scope, rank);
        if (!eval(evidence, w) || world_weight(base, w) != r.weight) continue;
        if (!eval(query, w)) return r;  // entailed stays false
    }
    r.entailed = true;
    return r;
}

std::vector<World> oracle_lex_preferred(const StratifiedBase& strat) {
    std::set<Variable> used;
    for (const auto& stratum : strat.strata())
        for (const Formula& f : stratum) f.collect_vars(used);
    ScopePtr scope = std::make_shared<const Scope>(
        std::vector<Variable>(used.begin(), used.end()));
    const uint64_t count = checked_world_count(*scope);

    std::vector<World> best;
    std::vector<int> best_violations;
    for (uint64_t rank = 0; rank < count; ++rank) {
        World w = world_from_rank(scope, rank);
        std::vector<int> violations(strat.strata().size(), 0);
        for (size_t i = 0; i < strat.strata().size(); ++i)
            for (const Formula& f : strat.strata()[i])
                if (!eval(f, w)) ++violations[i];
        if (best.empty() || violations < best_violations) {
            best_violations = violations;
            best.clear();
            best.push_back(std::move(w));
        } else if (violations == best_violations) {
            best.push_back(std::move(w));
        }
    }
    return best;
}

} // namespace wkc
