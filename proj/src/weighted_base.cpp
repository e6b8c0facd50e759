#include "wkc/weighted_base.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wkc/errors.hpp"
#include "wkc/parser.hpp"

namespace wkc {

WeightedBase::WeightedBase(std::vector<WeightedConstraint> constraints,
                           std::vector<Variable> declared,
                           std::vector<std::string>* warnings) {
    // scope covers every mentioned variable, dropped constraints included,
    // so the world universe does not shift when a weight degenerates to 0
    std::set<Variable> used;
    for (const auto& c : constraints) c.formula.collect_vars(used);
    for (auto& c : constraints) {
        if (!c.hard() && c.weight.is_zero()) {
            if (warnings)
                warnings->push_back("dropping zero-weight constraint: " + c.formula.str());
            continue;
        }
        constraints_.push_back(std::move(c));
    }
    std::vector<Variable> order = std::move(declared);
    for (const auto& v : order) used.erase(v);
    for (const auto& v : used) order.push_back(v);  // std::set iterates lexicographically
    scope_ = std::make_shared<Scope>(std::move(order));
}

std::vector<WeightedConstraint> WeightedBase::hard() const {
    std::vector<WeightedConstraint> out;
    for (const auto& c : constraints_)
        if (c.hard()) out.push_back(c);
    return out;
}

std::vector<WeightedConstraint> WeightedBase::soft() const {
    std::vector<WeightedConstraint> out;
    for (const auto& c : constraints_)
        if (!c.hard()) out.push_back(c);
    return out;
}

Weight world_weight(const WeightedBase& base, const World& w) {
    Weight total = Weight::zero();
    for (const auto& c : base.constraints())
        if (!eval(c.formula, w)) total += c.weight;
    return total;
}

Formula hard_part(const WeightedBase& base) {
    std::vector<Formula> parts;
    for (const auto& c : base.constraints())
        if (c.hard()) parts.push_back(c.formula);
    return Formula::conj(std::move(parts));
}

WeightedBase read_wb(const std::string& text, const std::string& source,
                     std::vector<std::string>* warnings) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool saw_content = false;
    std::vector<Variable> declared;
    std::vector<WeightedConstraint> constraints;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        size_t e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);

        if (line.rfind("vars", 0) == 0 &&
            (line.size() == 4 || line[4] == ' ' || line[4] == '\t')) {
            if (saw_content)
                throw ParseError("'vars' must be the first non-comment line", source, line_no, 1);
            std::istringstream vs(line.substr(4));
            std::string name;
            while (vs >> name) {
                if (!Variable::valid_name(name))
                    throw ParseError("bad variable name '" + name + "'", source, line_no, 1);
                declared.emplace_back(name);
            }
            saw_content = true;
            continue;
        }
        saw_content = true;

        size_t sep = line.find(';');
        if (sep == std::string::npos)
            throw ParseError("expected '<weight> ; <formula>'", source, line_no, 1);
        std::string wtext = line.substr(0, sep);
        size_t we = wtext.find_last_not_of(" \t");
        wtext = we == std::string::npos ? "" : wtext.substr(0, we + 1);
        Weight weight;
        try {
            weight = Weight::parse(wtext);
        } catch (const DomainError& err) {
            throw ParseError(err.what(), source, line_no, 1);
        }
        try {
            Formula f = parse_formula(line.substr(sep + 1), source);
            constraints.push_back({std::move(f), weight});
        } catch (const ParseError& err) {
            // re-anchor at the file position; the inner error only knows the line fragment
            throw ParseError(err.message(), source, line_no,
                             static_cast<int>(sep) + 1 + err.column());
        }
    }
    return WeightedBase(std::move(constraints), std::move(declared), warnings);
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

WeightedBase read_wb_file(const std::string& path, std::vector<std::string>* warnings) {
    return read_wb(slurp_file(path), path, warnings);
}

} // namespace wkc
