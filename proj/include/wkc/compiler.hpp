#pragma once

#include <cstdint>

#include "wkc/cnf.hpp"
#include "wkc/nnf.hpp"
#include "wkc/penalty.hpp"
#include "wkc/weighted_base.hpp"

namespace wkc {

struct CompileStats {
    uint64_t compile_calls = 0;    // top-level CNF compilations (cache reuse shows as 0 growth)
    uint64_t decisions = 0;        // Shannon branches
    uint64_t cache_hits = 0;
    uint64_t cache_entries = 0;
    uint64_t component_splits = 0; // residuals that fell apart into independent parts
};

struct CompileOptions {
    bool smooth_output = true;
    bool component_cache = true;
};

// Exhaustive DPLL-style compilation to a decomposable circuit: unit
// propagation emits implied literals as conjuncts, variable-disjoint residual
// components compile independently (cached under their canonical clause
// form), and the remainder splits on the most frequent variable (ties to the
// smallest scope index). Deterministic for a given input and scope.
NnfCircuit compile_cnf(const Cnf& cnf, ScopePtr scope, const CompileOptions& options = {},
                       CompileStats* stats = nullptr);

// Normalizes the base, compiles the hard part and attaches the guard
// penalties; the circuit is smooth and mentions every scope variable, so
// weight annotation sees each guard.
CompiledBase compile_base(const WeightedBase& base, CompileStats* stats = nullptr);

} // namespace wkc
