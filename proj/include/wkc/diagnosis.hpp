#pragma once

#include <string>
#include <vector>

#include "wkc/compiler.hpp"
#include "wkc/nnf.hpp"
#include "wkc/penalty.hpp"
#include "wkc/weighted_base.hpp"

namespace wkc {

struct OkComponent {
    Variable var;                // health variable: true = component works
    double failure_probability;  // strictly between 0 and 1
};

// A system description (hard constraints only), its component health
// variables, and a deterministic scope (the description's variables in
// lexicographic order).
struct DiagnosticSystem {
    Formula sd;
    std::vector<OkComponent> components;  // declaration order
    ScopePtr scope;
};

// .sys file: hard constraints as "inf ; <formula>" lines plus one
// "ok <var> <p>" line per component. Health variables must occur in the
// constraints; finite constraint weights are rejected.
DiagnosticSystem read_sys(const std::string& text, const std::string& source = "");
DiagnosticSystem read_sys_file(const std::string& path);

// How a candidate's score aggregates the component probabilities:
//   FaultsOnly  score = sum of -log(p_i) over failed components only, i.e.
//               candidates rank by the probability of their fault set;
//   Exact       adds -log(1 - p_i) for healthy components, i.e. candidates
//               rank by their exact posterior, and exp(-score) is that
//               posterior. The default.
enum class DiagnosisMode { FaultsOnly, Exact };

struct Diagnosis {
    Term term;                    // complete assignment to the health variables
    std::vector<bool> ok_values;  // aligned with DiagnosticSystem::components
    Weight score;
    double probability = 0.0;     // exp(-score)
};

struct DiagnosisReport {
    std::vector<Diagnosis> ranked;  // every consistent candidate, ascending score;
                                    // ties ordered healthy-first per component
    std::vector<Term> top;          // the minimal-score candidates, via circuit minimization
    Weight k = Weight::infinity();  // minimal score
    double log_probability = 0.0;   // -k when finite
    bool inconsistent = false;      // no candidate is consistent with SD and the observation
};

// Compiles the system description once — optionally through a content-hash
// disk cache — and then answers any number of observations by conditioning
// the compiled circuit; no recompilation per observation.
class DiagnosisSession {
public:
    explicit DiagnosisSession(DiagnosticSystem system, const std::string& cache_dir = "",
                              CompileStats* stats = nullptr);

    const DiagnosticSystem& system() const { return system_; }
    const NnfCircuit& circuit() const { return circuit_; }
    bool loaded_from_cache() const { return loaded_from_cache_; }

    // The observation must assign only non-health variables of the scope.
    DiagnosisReport diagnose(const Term& obs, DiagnosisMode mode = DiagnosisMode::Exact) const;

private:
    DiagnosticSystem system_;
    bool loaded_from_cache_ = false;
    NnfCircuit circuit_;
};

// One-shot convenience wrapper over a session.
DiagnosisReport diagnose(const DiagnosticSystem& system, const Term& obs,
                         DiagnosisMode mode = DiagnosisMode::Exact,
                         const std::string& cache_dir = "", CompileStats* stats = nullptr);

} // namespace wkc
