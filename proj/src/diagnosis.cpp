#include "wkc/diagnosis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>
#include <unordered_set>

#include "wkc/errors.hpp"
#include "wkc/nnf_io.hpp"
#include "wkc/parser.hpp"

namespace wkc {

namespace {

Formula parse_constraint(const std::string& text, const std::string& source, int line) {
    try {
        return parse_formula(text);
    } catch (const ParseError& e) {
        throw ParseError(e.message(), source, line, e.column());
    }
}

} // namespace

DiagnosticSystem read_sys(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::vector<Formula> constraints;
    std::vector<OkComponent> components;
    std::unordered_set<std::string> seen_ok;

    while (std::getline(in, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;

        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "ok") {
            std::string name;
            double p = 0.0;
            if (!(ls >> name >> p))
                throw ParseError("expected 'ok <var> <probability>'", source, lineno, 0);
            if (!Variable::valid_name(name))
                throw ParseError("invalid component variable name '" + name + "'", source,
                                 lineno, 0);
            std::string extra;
            if (ls >> extra)
                throw ParseError("trailing content after component line", source, lineno, 0);
            if (!(p > 0.0) || !(p < 1.0))
                throw ParseError("failure probability must lie strictly between 0 and 1",
                                 source, lineno, 0);
            if (!seen_ok.insert(name).second)
                throw ParseError("duplicate component '" + name + "'", source, lineno, 0);
            components.push_back(OkComponent{Variable(name), p});
            continue;
        }

        size_t semi = line.find(';');
        if (semi == std::string::npos)
            throw ParseError("expected '<weight> ; <formula>' or 'ok <var> <p>'", source,
                             lineno, 0);
        std::string weight_text = line.substr(0, semi);
        weight_text.erase(0, weight_text.find_first_not_of(" \t"));
        weight_text.erase(weight_text.find_last_not_of(" \t") + 1);
        Weight w = Weight::infinity();
        try {
            w = Weight::parse(weight_text);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), source, lineno, 0);
        }
        if (!w.is_infinite())
            throw ParseError("system constraints must be hard: use weight 'inf'", source,
                             lineno, 0);
        constraints.push_back(parse_constraint(line.substr(semi + 1), source, lineno));
    }

    DiagnosticSystem sys;
    sys.sd = Formula::conj(constraints);
    sys.components = std::move(components);
    std::set<Variable> used = sys.sd.vars();
    for (const OkComponent& c : sys.components)
        if (!used.count(c.var))
            throw ParseError("component variable '" + c.var.name() +
                                 "' does not occur in the system description",
                             source, lineno, 0);
    sys.scope = std::make_shared<const Scope>(std::vector<Variable>(used.begin(), used.end()));
    return sys;
}

DiagnosticSystem read_sys_file(const std::string& path) {
    return read_sys(slurp_file(path), path);
}

namespace {

std::string system_cache_key(const DiagnosticSystem& sys) {
    std::string canon = sys.sd.str();
    canon += '\n';
    for (const Variable& v : sys.scope->vars()) {
        canon += v.name();
        canon += ' ';
    }
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

NnfCircuit compile_or_load(const DiagnosticSystem& sys, const std::string& cache_dir,
                           CompileStats* stats, bool* loaded_from_cache) {
    namespace fs = std::filesystem;
    std::string path;
    if (!cache_dir.empty()) {
        path = (fs::path(cache_dir) / ("sd-" + system_cache_key(sys) + ".nnf")).string();
        std::error_code ec;
        if (fs::exists(path, ec) && !ec) {
            NnfCircuit cached = read_nnf_file(path);
            CheckReport rep = check(cached);
            if (cached.scope() == *sys.scope && rep.decomposable && rep.smooth) {
                *loaded_from_cache = true;
                return cached;
            }
            // A stale or foreign artifact: fall through and overwrite it.
        }
    }
    NnfCircuit circuit = compile_cnf(to_cnf(sys.sd), sys.scope, CompileOptions{}, stats);
    if (!path.empty()) {
        std::error_code ec;
        fs::create_directories(cache_dir, ec);
        if (!ec) write_nnf_file(circuit, path);
    }
    return circuit;
}

} // namespace

DiagnosisSession::DiagnosisSession(DiagnosticSystem system, const std::string& cache_dir,
                                   CompileStats* stats)
    : system_(std::move(system)),
      circuit_(compile_or_load(system_, cache_dir, stats, &loaded_from_cache_)) {}

DiagnosisReport DiagnosisSession::diagnose(const Term& obs, DiagnosisMode mode) const {
    std::unordered_set<std::string> ok_names;
    for (const OkComponent& c : system_.components) ok_names.insert(c.var.name());
    for (const Literal& l : obs.lits()) {
        if (!system_.scope->contains(l.var().name()))
            throw DomainError("observation variable '" + l.var().name() +
                              "' is not in the system scope");
        if (ok_names.count(l.var().name()))
            throw DomainError("observation assigns the component health variable '" +
                              l.var().name() + "'");
    }

    PenaltyMap penalties;
    for (const OkComponent& c : system_.components) {
        LiteralPenalty lp;
        lp.on_negative = Weight::finite(-std::log(c.failure_probability));
        if (mode == DiagnosisMode::Exact)
            lp.on_positive = Weight::finite(-std::log1p(-c.failure_probability));
        penalties.emplace(c.var.name(), lp);
    }

    NnfCircuit conditioned = cover_scope(condition(circuit_, obs));
    WeightAnnotation ann = annotate_weights(conditioned, penalties);

    DiagnosisReport rep;
    rep.k = ann.root;
    if (ann.root.is_infinite()) {
        rep.inconsistent = true;
        return rep;
    }
    rep.log_probability = -ann.root.value();

    std::vector<Variable> non_ok;
    for (const Variable& v : conditioned.scope().vars())
        if (!ok_names.count(v.name())) non_ok.push_back(v);

    // Every consistent candidate, scored directly from its literals.
    {
        NnfCircuit over_ok = smooth(forget(conditioned, non_ok));
        for (const World& w : enumerate_models(over_ok)) {
            Diagnosis d;
            d.ok_values.reserve(system_.components.size());
            d.score = Weight::zero();
            std::vector<Literal> lits;
            for (const OkComponent& c : system_.components) {
                bool healthy = w.value(c.var);
                d.ok_values.push_back(healthy);
                const LiteralPenalty& lp = penalties.at(c.var.name());
                d.score += healthy ? lp.on_positive : lp.on_negative;
                lits.emplace_back(c.var, healthy);
            }
            d.term = Term(std::move(lits));
            d.probability = std::exp(-d.score.value());
            rep.ranked.push_back(std::move(d));
        }
        std::sort(rep.ranked.begin(), rep.ranked.end(),
                  [](const Diagnosis& a, const Diagnosis& b) {
                      if (a.score != b.score) return a.score < b.score;
                      for (size_t i = 0; i < a.ok_values.size(); ++i)
                          if (a.ok_values[i] != b.ok_values[i]) return a.ok_values[i];
                      return false;
                  });
    }

    // The minimal candidates again, through the minimization route.
    {
        NnfCircuit minimal = minimize(conditioned, penalties);
        NnfCircuit over_ok = smooth(forget(minimal, non_ok));
        for (const World& w : enumerate_models(over_ok)) {
            std::vector<Literal> lits;
            for (const OkComponent& c : system_.components)
                lits.emplace_back(c.var, w.value(c.var));
            rep.top.emplace_back(std::move(lits));
        }
    }
    return rep;
}

DiagnosisReport diagnose(const DiagnosticSystem& system, const Term& obs, DiagnosisMode mode,
                         const std::string& cache_dir, CompileStats* stats) {
    return DiagnosisSession(system, cache_dir, stats).diagnose(obs, mode);
}

} // namespace wkc
