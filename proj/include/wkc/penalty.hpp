#pragma once

#include <map>
#include <string>
#include <vector>

#include "wkc/cnf.hpp"
#include "wkc/nnf.hpp"
#include "wkc/weight.hpp"

namespace wkc {

// Cost of each phase of a variable; absent variables cost nothing either way.
struct LiteralPenalty {
    Weight on_positive = Weight::zero();
    Weight on_negative = Weight::zero();

    friend bool operator==(const LiteralPenalty& a, const LiteralPenalty& b) {
        return a.on_positive == b.on_positive && a.on_negative == b.on_negative;
    }
};

// Keyed by variable name; ordered so iteration (and serialization) is stable.
using PenaltyMap = std::map<std::string, LiteralPenalty>;

// A smooth decomposable circuit whose root mentions every scope variable
// (unless it is the false circuit), together with the penalties attached to
// the guard variables and the user-facing variable list. Scope order is the
// original variables followed by the guards.
class CompiledBase {
public:
    CompiledBase(NnfCircuit circuit, PenaltyMap penalties, std::vector<Variable> original_vars);

    const NnfCircuit& circuit() const { return circuit_; }
    const PenaltyMap& penalties() const { return penalties_; }
    const std::vector<Variable>& original_vars() const { return original_vars_; }
    // Scope variables that are not original, i.e. the guards, in scope order.
    const std::vector<Variable>& guard_vars() const { return guard_vars_; }

private:
    NnfCircuit circuit_;
    PenaltyMap penalties_;
    std::vector<Variable> original_vars_;
    std::vector<Variable> guard_vars_;
};

// Bottom-up weight propagation: literals cost their penalty, true costs 0,
// false costs infinity, And sums, Or minimizes. The root value of a circuit
// equivalent to the hard part of a normal-form base is the base weight.
struct WeightAnnotation {
    std::vector<Weight> node_weight;
    Weight root = Weight::zero();
};

WeightAnnotation annotate_weights(const NnfCircuit& c, const PenaltyMap& penalties);

Weight base_weight(const CompiledBase& cb);

// Keeps exactly the Or-children achieving the parent's annotated weight (or
// within epsilon of it), so the result's models are the minimal-weight models
// of the input. Smoothness and decomposability are preserved. A root of
// infinite weight has no model to keep and is an error.
NnfCircuit minimize(const NnfCircuit& c, const PenaltyMap& penalties,
                    const Weight& epsilon = Weight::zero());
NnfCircuit minimize(const CompiledBase& cb);

struct PreferredModels {
    std::vector<World> models;   // over original_vars, deterministic order
    Weight weight;               // the base weight
    bool inconsistent = false;   // hard part unsatisfiable: no models, weight infinite
    EnumStats stats;
};

// minimize -> forget guards -> smooth -> enumerate.
PreferredModels preferred_models(const CompiledBase& cb);

struct InferResult {
    bool entailed = false;
    bool inconsistent = false;  // evidence conflicts with the hard part (answer is vacuous)
    Weight weight;              // weight of the base conditioned on the evidence
};

// Skeptical inference: does every minimal-weight model of the base under the
// evidence satisfy each query clause? Query and evidence variables must be
// original variables.
InferResult infer(const CompiledBase& cb, const Cnf& query, const Term& evidence = Term());

// Directory layout: model.nnf, penalties.txt, manifest.txt.
void save_bundle(const CompiledBase& cb, const std::string& dir);
CompiledBase load_bundle(const std::string& dir);

} // namespace wkc
