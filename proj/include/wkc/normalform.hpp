#pragma once

#include <string>
#include <vector>

#include "wkc/weighted_base.hpp"

namespace wkc {

// One soft constraint of the source base and the fresh guard variable that
// replaced it: the normal form carries <holds_i -> phi_i, inf> and
// <holds_i, k_i>.
struct HoldsEntry {
    Variable holds_var;
    int soft_index;       // 1-based position among the soft constraints
    Weight penalty;
    Formula original;
};

// A weighted base in normal form: every soft constraint is a bare positive
// guard variable. Guard variables are fresh w.r.t. the source base's scope.
class NormalFormBase {
public:
    NormalFormBase(WeightedBase base, std::vector<HoldsEntry> holds,
                   std::vector<Variable> original_vars)
        : base_(std::move(base)), holds_(std::move(holds)),
          original_vars_(std::move(original_vars)) {}

    const WeightedBase& base() const { return base_; }
    const std::vector<HoldsEntry>& holds_map() const { return holds_; }
    const std::vector<Variable>& original_vars() const { return original_vars_; }

    std::vector<Variable> holds_vars() const;

private:
    WeightedBase base_;
    std::vector<HoldsEntry> holds_;
    std::vector<Variable> original_vars_;
};

// Hard constraints are copied; each soft <phi_i, k_i> becomes
// <holds_i -> phi_i, inf> plus <holds_i, k_i>. Guard names are "holds<i>"
// with "_" appended until fresh. The result's weight function agrees with the
// source on worlds over the original variables (taking the best completion
// of the guards).
NormalFormBase normalize(const WeightedBase& base);

// min over guard completions of world_weight(base(), completed world); `w`
// ranges over original_vars only. Exponential in the guard count — this is
// the reference-side check, not a query path.
Weight projected_world_weight(const NormalFormBase& nf, const World& w);

// Stratified belief base B_1..B_k, most reliable stratum first.
class StratifiedBase {
public:
    explicit StratifiedBase(std::vector<std::vector<Formula>> strata,
                            bool allow_empty_strata = false);

    const std::vector<std::vector<Formula>>& strata() const { return strata_; }
    int stratum_count() const { return static_cast<int>(strata_.size()); }

private:
    std::vector<std::vector<Formula>> strata_;
};

// Weighted encoding of lexicographic inference: with m the maximum stratum
// size, each formula of B_i gets weight (m+1)^(k-i). Rejects weights that
// would exceed 2^53 (exact integer range).
WeightedBase lex_encode(const StratifiedBase& base);

// .strat file: "stratum:" section headers, one formula per line, most
// reliable stratum first.
StratifiedBase read_strat(const std::string& text, const std::string& source = "",
                          bool allow_empty_strata = false);
StratifiedBase read_strat_file(const std::string& path, bool allow_empty_strata = false);

} // namespace wkc
