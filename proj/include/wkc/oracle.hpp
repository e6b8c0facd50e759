#pragma once

#include <vector>

#include "wkc/normalform.hpp"
#include "wkc/weighted_base.hpp"

namespace wkc {

// The brute-force reference path: exhaustive world scans, no circuits. Kept
// deliberately naive so it can arbitrate the compiled path.
inline constexpr int kOracleMaxVars = 24;

struct OracleRow {
    World world;
    Weight weight;
};

struct OracleReport {
    Weight k = Weight::infinity();  // minimal world weight; +inf when no finite world exists
    std::vector<World> preferred;   // argmin worlds in rank order; empty when k = +inf
    std::vector<OracleRow> table;   // every world in rank order (only when requested)
};

OracleReport oracle_scan(const WeightedBase& base, bool with_table = false);

struct OracleInferResult {
    bool entailed = false;
    bool inconsistent = false;  // evidence has no finite-weight model
    Weight weight;
};

// Skeptical inference by definition: every minimal-weight model of the
// evidence must satisfy the query. Vacuously true (with a flag) when the
// evidence admits no finite-weight world, matching the compiled convention.
OracleInferResult oracle_infer(const WeightedBase& base, const Formula& query,
                               const Formula& evidence);

// Worlds minimal in the stratum-wise violation-count order: fewer violations
// in an earlier stratum trumps everything later. Scope is the lexicographic
// variable order, the same scope lex_encode's base derives.
std::vector<World> oracle_lex_preferred(const StratifiedBase& strat);

} // namespace wkc
