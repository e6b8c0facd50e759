#include "wkc/normalform.hpp"

#include <sstream>

#include "wkc/errors.hpp"
#include "wkc/parser.hpp"

namespace wkc {

std::vector<Variable> NormalFormBase::holds_vars() const {
    std::vector<Variable> out;
    out.reserve(holds_.size());
    for (const auto& h : holds_) out.push_back(h.holds_var);
    return out;
}

NormalFormBase normalize(const WeightedBase& base) {
    const auto& original_vars = base.declared_vars();

    std::vector<HoldsEntry> holds;
    std::vector<WeightedConstraint> implications;
    std::vector<WeightedConstraint> units;
    std::vector<WeightedConstraint> out;
    std::vector<Variable> declared = original_vars;

    int soft_index = 0;
    for (const auto& c : base.constraints()) {
        if (c.hard()) {
            out.push_back(c);
            continue;
        }
        ++soft_index;
        std::string name = "holds" + std::to_string(soft_index);
        auto taken = [&](const std::string& n) {
            if (base.scope()->contains(n)) return true;
            for (const auto& h : holds)
                if (h.holds_var.name() == n) return true;
            return false;
        };
        while (taken(name)) name += '_';
        Variable guard(name);
        holds.push_back({guard, soft_index, c.weight, c.formula});
        implications.push_back(
            {Formula::implies(Formula::lit(Literal(guard, true)), c.formula),
             Weight::infinity()});
        units.push_back({Formula::lit(Literal(guard, true)), c.weight});
        declared.push_back(guard);
    }
    out.insert(out.end(), implications.begin(), implications.end());
    out.insert(out.end(), units.begin(), units.end());

    return NormalFormBase(WeightedBase(std::move(out), std::move(declared)),
                          std::move(holds), original_vars);
}

Weight projected_world_weight(const NormalFormBase& nf, const World& w) {
    const auto& full_scope = nf.base().scope();
    int n = full_scope->size();
    std::vector<bool> values(static_cast<size_t>(n));
    std::vector<int> holds_pos;
    for (int i = 0; i < n; ++i) {
        const Variable& v = full_scope->var(i);
        bool is_guard = false;
        for (const auto& h : nf.holds_map())
            if (h.holds_var == v) { is_guard = true; break; }
        if (is_guard) {
            holds_pos.push_back(i);
        } else {
            values[static_cast<size_t>(i)] = w.value(v);
        }
    }
    if (holds_pos.size() > 30)
        throw DomainError("too many guard variables for projection scan");

    Weight best = Weight::infinity();
    uint64_t combos = 1ull << holds_pos.size();
    for (uint64_t mask = 0; mask < combos; ++mask) {
        for (size_t j = 0; j < holds_pos.size(); ++j)
            values[static_cast<size_t>(holds_pos[j])] = (mask >> j) & 1u;
        World completed(full_scope, values);
        Weight k = world_weight(nf.base(), completed);
        if (k < best) best = k;
    }
    return best;
}

StratifiedBase::StratifiedBase(std::vector<std::vector<Formula>> strata,
                               bool allow_empty_strata)
    : strata_(std::move(strata)) {
    if (strata_.empty())
        throw DomainError("stratified base needs at least one stratum");
    if (!allow_empty_strata)
        for (const auto& s : strata_)
            if (s.empty()) throw DomainError("empty stratum");
}

WeightedBase lex_encode(const StratifiedBase& base) {
    const auto& strata = base.strata();
    int k = base.stratum_count();
    size_t m = 0;
    for (const auto& s : strata) m = std::max(m, s.size());

    // weight of B_i is (m+1)^(k-i); the largest, (m+1)^(k-1), must stay exact
    constexpr uint64_t kExactLimit = 1ull << 53;
    std::vector<uint64_t> weight_of(static_cast<size_t>(k) + 1);
    uint64_t w = 1;
    for (int i = k; i >= 1; --i) {
        weight_of[static_cast<size_t>(i)] = w;
        if (i > 1) {
            if (w > kExactLimit / (m + 1))
                throw DomainError("lexicographic weights exceed exact integer range");
            w *= (m + 1);
        }
    }

    std::vector<WeightedConstraint> constraints;
    for (int i = 1; i <= k; ++i)
        for (const auto& f : strata[static_cast<size_t>(i - 1)])
            constraints.push_back(
                {f, Weight::finite(static_cast<double>(weight_of[static_cast<size_t>(i)]))});
    return WeightedBase(std::move(constraints));
}

StratifiedBase read_strat(const std::string& text, const std::string& source,
                          bool allow_empty_strata) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::vector<std::vector<Formula>> strata;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line == "stratum:") {
            strata.emplace_back();
            continue;
        }
        if (strata.empty())
            throw ParseError("formula before first 'stratum:' header", source, line_no, 1);
        try {
            strata.back().push_back(parse_formula(line, source));
        } catch (const ParseError& err) {
            throw ParseError(err.message(), source, line_no, err.column());
        }
    }
    if (strata.empty())
        throw ParseError("no strata in input", source, line_no, 1);
    return StratifiedBase(std::move(strata), allow_empty_strata);
}

StratifiedBase read_strat_file(const std::string& path, bool allow_empty_strata) {
    return read_strat(slurp_file(path), path, allow_empty_strata);
}

} // namespace wkc
