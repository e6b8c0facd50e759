#pragma once

#include <string>
#include <vector>

#include "wkc/cnf.hpp"
#include "wkc/formula.hpp"
#include "wkc/weight.hpp"
#include "wkc/world.hpp"

namespace wkc {

// One sentence with the price paid for violating it. Soft constraints carry a
// finite positive weight; hard constraints carry +inf.
struct WeightedConstraint {
    Formula formula;
    Weight weight;

    bool hard() const { return weight.is_infinite(); }
};

// A finite set of weighted constraints together with an ordered variable
// scope. The scope is the explicitly declared variables (declaration order)
// followed by the remaining constraint variables in lexicographic order.
// Immutable after construction. Zero-weight soft constraints are dropped at
// construction with a diagnostic (they can never change a world's weight).
class WeightedBase {
public:
    WeightedBase() : scope_(std::make_shared<Scope>()) {}
    explicit WeightedBase(std::vector<WeightedConstraint> constraints,
                          std::vector<Variable> declared = {},
                          std::vector<std::string>* warnings = nullptr);

    const std::vector<WeightedConstraint>& constraints() const { return constraints_; }
    const ScopePtr& scope() const { return scope_; }
    const std::vector<Variable>& declared_vars() const { return scope_->vars(); }

    std::vector<WeightedConstraint> hard() const;
    std::vector<WeightedConstraint> soft() const;

private:
    std::vector<WeightedConstraint> constraints_;
    ScopePtr scope_;
};

// K_W(omega): the sum of the weights of all constraints the world violates.
Weight world_weight(const WeightedBase& base, const World& w);

// Conjunction of all hard-constraint formulas; true when there are none.
Formula hard_part(const WeightedBase& base);

// Line-oriented .wb file:
//   "vars a b c"            optional scope declaration, first non-comment line
//   "<weight> ; <formula>"  weight is "inf" or a nonnegative decimal
//   "#" comments and blank lines are ignored.
WeightedBase read_wb(const std::string& text, const std::string& source = "",
                     std::vector<std::string>* warnings = nullptr);
WeightedBase read_wb_file(const std::string& path,
                          std::vector<std::string>* warnings = nullptr);

// Reads an entire file; throws ParseError when it cannot be opened.
std::string slurp_file(const std::string& path);

} // namespace wkc
