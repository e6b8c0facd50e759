// wkc: compile weighted propositional bases to smooth DNNF and query them.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wkc/cnf.hpp"
#include "wkc/compiler.hpp"
#include "wkc/diagnosis.hpp"
#include "wkc/errors.hpp"
#include "wkc/nnf.hpp"
#include "wkc/nnf_io.hpp"
#include "wkc/oracle.hpp"
#include "wkc/parser.hpp"
#include "wkc/penalty.hpp"
#include "wkc/weighted_base.hpp"

namespace {

using namespace wkc;

// Two output channels: result keys (stable, diffable) and report keys
// (timings, sizes, cache statistics; prefixed "report." in porcelain mode so
// normalizing diffs can drop them).
struct Output {
    bool porcelain = false;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<std::pair<std::string, std::string>> report;

    void result(const std::string& k, const std::string& v) { results.emplace_back(k, v); }
    void note(const std::string& k, const std::string& v) { report.emplace_back(k, v); }
    void note(const std::string& k, uint64_t v) { note(k, std::to_string(v)); }

    void flush() {
        if (porcelain) {
            for (const auto& [k, v] : results) std::cout << k << '=' << v << '\n';
            for (const auto& [k, v] : report) std::cout << "report." << k << '=' << v << '\n';
        } else {
            for (const auto& [k, v] : results) std::cout << k << ": " << v << '\n';
            for (const auto& [k, v] : report) std::cout << "# " << k << " " << v << '\n';
        }
    }
};

class StageTimer {
public:
    StageTimer(Output& out, std::string stage)
        : out_(out), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        auto ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start_)
                      .count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        out_.note("time_ms." + stage_, buf);
    }

private:
    Output& out_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// Display form: exact for integers and inf, 9 significant digits otherwise
// (so the compiled and oracle paths print identically despite summation
// order). Serialization uses the exact Weight::str instead.
std::string fmt_weight(const Weight& w) {
    if (w.is_infinite()) return "inf";
    return fmt_double(w.value());
}

const char* tf(bool b) { return b ? "true" : "false"; }

// Scope-order ranking: earlier variables more significant, true before false.
bool rank_less(const World& a, const World& b) {
    for (int i = 0; i < a.scope().size(); ++i)
        if (a.value(i) != b.value(i)) return a.value(i);
    return false;
}

void circuit_notes(Output& out, const NnfCircuit& c) {
    out.note("nodes", static_cast<uint64_t>(c.node_count()));
    out.note("edges", static_cast<uint64_t>(c.edge_count()));
    out.note("vars", static_cast<uint64_t>(c.scope().size()));
}

void compiler_notes(Output& out, const CompileStats& st) {
    out.note("compile_calls", st.compile_calls);
    out.note("decisions", st.decisions);
    out.note("cache_hits", st.cache_hits);
    out.note("cache_entries", st.cache_entries);
    out.note("component_splits", st.component_splits);
}

Term parse_obs(const std::string& text) {
    return text.empty() ? Term() : parse_term_list(text);
}

struct CompileConfig {
    std::string cnf, base, system, out;
    bool smooth = true;
};

int run_compile(const CompileConfig& cfg, Output& out) {
    CompileStats stats;
    if (!cfg.base.empty()) {
        if (!cfg.smooth)
            throw DomainError("base bundles require a smooth circuit; drop --no-smooth");
        std::vector<std::string> warnings;
        WeightedBase wb = [&] {
            StageTimer t(out, "parse");
            return read_wb_file(cfg.base, &warnings);
        }();
        for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
        CompiledBase cb = [&] {
            StageTimer t(out, "compile");
            return compile_base(wb, &stats);
        }();
        save_bundle(cb, cfg.out);
        out.result("written", cfg.out);
        out.result("consistent", tf(!cb.circuit().is_false()));
        out.result("guards", std::to_string(cb.guard_vars().size()));
        circuit_notes(out, cb.circuit());
        compiler_notes(out, stats);
        return 0;
    }

    NnfCircuit circuit = [&] {
        if (!cfg.cnf.empty()) {
            DimacsProblem dim = [&] {
                StageTimer t(out, "parse");
                return read_dimacs(slurp_file(cfg.cnf), cfg.cnf);
            }();
            StageTimer t(out, "compile");
            return compile_cnf(dim.cnf, dim.scope, CompileOptions{cfg.smooth, true}, &stats);
        }
        DiagnosticSystem sys = [&] {
            StageTimer t(out, "parse");
            return read_sys_file(cfg.system);
        }();
        StageTimer t(out, "compile");
        return compile_cnf(to_cnf(sys.sd), sys.scope, CompileOptions{cfg.smooth, true}, &stats);
    }();
    write_nnf_file(circuit, cfg.out);
    out.result("written", cfg.out);
    out.result("consistent", tf(!circuit.is_false()));
    circuit_notes(out, circuit);
    compiler_notes(out, stats);
    return 0;
}

struct BaseInput {
    std::string bundle, base;
};

CompiledBase load_base(const BaseInput& in, Output& out) {
    if (!in.bundle.empty()) {
        StageTimer t(out, "load");
        return load_bundle(in.bundle);
    }
    std::vector<std::string> warnings;
    WeightedBase wb = [&] {
        StageTimer t(out, "parse");
        return read_wb_file(in.base, &warnings);
    }();
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    CompileStats stats;
    CompiledBase cb = [&] {
        StageTimer t(out, "compile");
        return compile_base(wb, &stats);
    }();
    compiler_notes(out, stats);
    return cb;
}

int run_query(const BaseInput& in, const std::string& query_text,
              const std::string& evidence_text, Output& out) {
    CompiledBase cb = load_base(in, out);
    Cnf query = to_cnf(parse_formula(query_text, "--query"));
    Term evidence = parse_obs(evidence_text);
    InferResult r = [&] {
        StageTimer t(out, "infer");
        return infer(cb, query, evidence);
    }();
    out.result("answer", r.entailed ? "yes" : "no");
    out.result("k", fmt_weight(r.weight));
    out.result("inconsistent", tf(r.inconsistent));
    circuit_notes(out, cb.circuit());
    return r.inconsistent ? 1 : 0;
}

int run_models(const BaseInput& in, long limit, Output& out) {
    CompiledBase cb = load_base(in, out);
    PreferredModels pm = [&] {
        StageTimer t(out, "enumerate");
        return preferred_models(cb);
    }();
    std::sort(pm.models.begin(), pm.models.end(), rank_less);
    out.result("k", fmt_weight(pm.weight));
    out.result("inconsistent", tf(pm.inconsistent));
    out.result("count", std::to_string(pm.models.size()));
    size_t shown = limit < 0 ? pm.models.size()
                             : std::min(pm.models.size(), static_cast<size_t>(limit));
    for (size_t i = 0; i < shown; ++i)
        out.result("model." + std::to_string(i), pm.models[i].str());
    out.note("enum_ops", pm.stats.ops);
    circuit_notes(out, cb.circuit());
    return pm.inconsistent ? 1 : 0;
}

int run_check(const std::string& path, Output& out) {
    NnfCircuit c = read_nnf_file(path);
    CheckReport rep = check(c);
    out.result("decomposable", tf(rep.decomposable));
    out.result("smooth", tf(rep.smooth));
    // Constant folding is satisfiability-complete only on decomposable input.
    out.result("consistent", rep.decomposable ? tf(!c.is_false()) : "unknown");
    out.result("nodes", std::to_string(c.node_count()));
    out.result("edges", std::to_string(c.edge_count()));
    out.result("vars", std::to_string(c.scope().size()));
    return rep.decomposable ? 0 : 1;
}

DiagnosisMode parse_mode(const std::string& mode) {
    return mode == "faults" ? DiagnosisMode::FaultsOnly : DiagnosisMode::Exact;
}

void print_diagnoses(Output& out, const Weight& k, double log_probability, bool inconsistent,
                     const std::vector<Term>& top, const std::vector<Diagnosis>& ranked,
                     long top_n) {
    out.result("k", fmt_weight(k));
    out.result("log_probability", inconsistent ? "-inf" : fmt_double(log_probability));
    out.result("inconsistent", tf(inconsistent));
    out.result("top.count", std::to_string(top.size()));
    for (size_t i = 0; i < top.size(); ++i)
        out.result("top." + std::to_string(i), top[i].str());
    out.result("count", std::to_string(ranked.size()));
    size_t shown = top_n <= 0 ? ranked.size()
                              : std::min(ranked.size(), static_cast<size_t>(top_n));
    for (size_t i = 0; i < shown; ++i) {
        const std::string p = "diag." + std::to_string(i);
        out.result(p + ".term", ranked[i].term.str());
        out.result(p + ".score", fmt_weight(ranked[i].score));
        out.result(p + ".probability", fmt_double(ranked[i].probability));
    }
}

int run_diagnose(const std::string& system_path, const std::string& obs_text,
                 const std::string& mode, long top_n, const std::string& cache_dir,
                 Output& out) {
    DiagnosticSystem sys = [&] {
        StageTimer t(out, "parse");
        return read_sys_file(system_path);
    }();
    Term obs = parse_obs(obs_text);
    CompileStats stats;
    DiagnosisSession session = [&] {
        StageTimer t(out, "compile");
        return DiagnosisSession(std::move(sys), cache_dir, &stats);
    }();
    DiagnosisReport rep = [&] {
        StageTimer t(out, "diagnose");
        return session.diagnose(obs, parse_mode(mode));
    }();
    print_diagnoses(out, rep.k, rep.log_probability, rep.inconsistent, rep.top, rep.ranked,
                    top_n);
    out.note("cache", session.loaded_from_cache() ? "hit" : "miss");
    circuit_notes(out, session.circuit());
    compiler_notes(out, stats);
    return rep.inconsistent ? 1 : 0;
}

Formula term_to_formula(const Term& t) {
    std::vector<Formula> lits;
    for (const Literal& l : t.lits()) {
        Formula v = Formula::lit(l.var().name());
        lits.push_back(l.positive() ? v : Formula::negation(v));
    }
    return Formula::conj(lits);
}

int run_oracle_query(const std::string& base_path, const std::string& query_text,
                     const std::string& evidence_text, Output& out) {
    WeightedBase wb = read_wb_file(base_path);
    Formula query = parse_formula(query_text, "--query");
    Formula evidence = term_to_formula(parse_obs(evidence_text));
    OracleInferResult r = [&] {
        StageTimer t(out, "scan");
        return oracle_infer(wb, query, evidence);
    }();
    out.result("answer", r.entailed ? "yes" : "no");
    out.result("k", fmt_weight(r.weight));
    out.result("inconsistent", tf(r.inconsistent));
    return r.inconsistent ? 1 : 0;
}

int run_oracle_models(const std::string& base_path, long limit, bool with_table, Output& out) {
    WeightedBase wb = read_wb_file(base_path);
    OracleReport rep = [&] {
        StageTimer t(out, "scan");
        return oracle_scan(wb, with_table);
    }();
    bool inconsistent = rep.k.is_infinite();
    out.result("k", fmt_weight(rep.k));
    out.result("inconsistent", tf(inconsistent));
    out.result("count", std::to_string(rep.preferred.size()));
    size_t shown = limit < 0 ? rep.preferred.size()
                             : std::min(rep.preferred.size(), static_cast<size_t>(limit));
    for (size_t i = 0; i < shown; ++i)
        out.result("model." + std::to_string(i), rep.preferred[i].str());
    for (size_t i = 0; i < rep.table.size(); ++i)
        out.result("row." + std::to_string(i),
                   rep.table[i].world.str() + "|" + fmt_weight(rep.table[i].weight));
    return inconsistent ? 1 : 0;
}

int run_oracle_diagnose(const std::string& system_path, const std::string& obs_text,
                        const std::string& mode, long top_n, Output& out) {
    DiagnosticSystem sys = read_sys_file(system_path);
    Term obs = parse_obs(obs_text);
    const int n = sys.scope->size();
    if (n > kOracleMaxVars)
        throw DomainError("oracle scans are limited to " + std::to_string(kOracleMaxVars) +
                          " variables");
    for (const Literal& l : obs.lits())
        if (!sys.scope->contains(l.var().name()))
            throw DomainError("observation variable '" + l.var().name() +
                              "' is not in the system scope");

    const size_t m = sys.components.size();
    std::vector<bool> consistent(static_cast<size_t>(1) << m, false);
    StageTimer t_scan(out, "scan");
    for (uint64_t rank = 0; rank < (1ull << n); ++rank) {
        World w = world_from_rank(sys.scope, rank);
        bool obs_ok = true;
        for (const Literal& l : obs.lits())
            if (w.value(l.var()) != l.positive()) {
                obs_ok = false;
                break;
            }
        if (!obs_ok || !eval(sys.sd, w)) continue;
        size_t idx = 0;
        for (size_t j = 0; j < m; ++j)
            if (!w.value(sys.components[j].var)) idx |= static_cast<size_t>(1) << j;
        consistent[idx] = true;
    }

    DiagnosisMode dm = parse_mode(mode);
    std::vector<Diagnosis> ranked;
    for (size_t idx = 0; idx < consistent.size(); ++idx) {
        if (!consistent[idx]) continue;
        Diagnosis d;
        d.score = Weight::zero();
        std::vector<Literal> lits;
        for (size_t j = 0; j < m; ++j) {
            bool healthy = !(idx & (static_cast<size_t>(1) << j));
            double p = sys.components[j].failure_probability;
            d.ok_values.push_back(healthy);
            if (!healthy)
                d.score += Weight::finite(-std::log(p));
            else if (dm == DiagnosisMode::Exact)
                d.score += Weight::finite(-std::log1p(-p));
            lits.emplace_back(sys.components[j].var, healthy);
        }
        d.term = Term(std::move(lits));
        d.probability = std::exp(-d.score.value());
        ranked.push_back(std::move(d));
    }
    std::sort(ranked.begin(), ranked.end(), [](const Diagnosis& a, const Diagnosis& b) {
        if (a.score != b.score) return a.score < b.score;
        for (size_t i = 0; i < a.ok_values.size(); ++i)
            if (a.ok_values[i] != b.ok_values[i]) return a.ok_values[i];
        return false;
    });

    bool inconsistent = ranked.empty();
    Weight k = inconsistent ? Weight::infinity() : ranked.front().score;
    std::vector<Term> top;
    for (const Diagnosis& d : ranked) {
        if (d.score != k) break;
        top.push_back(d.term);
    }
    print_diagnoses(out, k, inconsistent ? 0.0 : -k.value(), inconsistent, top, ranked, top_n);
    return inconsistent ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"penalty-logic knowledge compiler: weighted bases to smooth DNNF"};
    app.require_subcommand(1);
    Output out;
    app.add_flag("--porcelain", out.porcelain, "emit line-delimited key=value records");

    CompileConfig compile_cfg;
    CLI::App* c_compile = app.add_subcommand("compile", "compile CNF, base or system to DNNF");
    c_compile->fallthrough();
    auto* src = c_compile->add_option_group("input", "exactly one input kind");
    src->add_option("--cnf", compile_cfg.cnf, "DIMACS CNF file");
    src->add_option("--base", compile_cfg.base, "weighted base (.wb) file");
    src->add_option("--system", compile_cfg.system, "diagnostic system (.sys) file");
    src->require_option(1);
    c_compile->add_option("-o,--out", compile_cfg.out,
                          "output path (.nnf file; bundle directory for --base)")
        ->required();
    c_compile->add_flag("--smooth,!--no-smooth", compile_cfg.smooth,
                        "smooth the circuit (default on)");

    BaseInput query_in;
    std::string query_text, query_evidence;
    CLI::App* c_query = app.add_subcommand("query", "clausal inference against a base");
    c_query->fallthrough();
    auto* qsrc = c_query->add_option_group("input", "exactly one input kind");
    qsrc->add_option("--bundle", query_in.bundle, "compiled bundle directory");
    qsrc->add_option("--base", query_in.base, "weighted base (.wb) file");
    qsrc->require_option(1);
    c_query->add_option("--query", query_text, "query formula (converted to clauses)")
        ->required();
    c_query->add_option("--evidence", query_evidence, "evidence literals, e.g. \"a,~b\"");

    BaseInput models_in;
    long models_limit = -1;
    CLI::App* c_models = app.add_subcommand("models", "enumerate the preferred models");
    c_models->fallthrough();
    auto* msrc = c_models->add_option_group("input", "exactly one input kind");
    msrc->add_option("--bundle", models_in.bundle, "compiled bundle directory");
    msrc->add_option("--base", models_in.base, "weighted base (.wb) file");
    msrc->require_option(1);
    c_models->add_option("--limit", models_limit, "print at most N models (-1 = all)");

    std::string check_path;
    CLI::App* c_check = app.add_subcommand("check", "structural checks on a .nnf circuit");
    c_check->fallthrough();
    c_check->add_option("--nnf", check_path, ".nnf circuit file")->required();

    std::string diag_system, diag_obs, diag_mode = "exact", diag_cache;
    long diag_top = 0;
    CLI::App* c_diag = app.add_subcommand("diagnose", "rank component failure candidates");
    c_diag->fallthrough();
    c_diag->add_option("--system", diag_system, "diagnostic system (.sys) file")->required();
    c_diag->add_option("--obs", diag_obs, "observation literals, e.g. \"x,~z\"");
    c_diag->add_option("--mode", diag_mode, "scoring mode (default exact)")
        ->check(CLI::IsMember({"faults", "exact"}));
    c_diag->add_option("--top", diag_top, "print at most N candidates (0 = all)");
    c_diag->add_option("--cache-dir", diag_cache, "cache compiled systems here");

    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force reference answers");
    c_oracle->fallthrough();
    c_oracle->require_subcommand(1);

    std::string oq_base, oq_query, oq_evidence;
    CLI::App* c_oq = c_oracle->add_subcommand("query", "inference by world scan");
    c_oq->fallthrough();
    c_oq->add_option("--base", oq_base, "weighted base (.wb) file")->required();
    c_oq->add_option("--query", oq_query, "query formula")->required();
    c_oq->add_option("--evidence", oq_evidence, "evidence literals");

    std::string om_base;
    long om_limit = -1;
    bool om_table = false;
    CLI::App* c_om = c_oracle->add_subcommand("models", "preferred models by world scan");
    c_om->fallthrough();
    c_om->add_option("--base", om_base, "weighted base (.wb) file")->required();
    c_om->add_option("--limit", om_limit, "print at most N models (-1 = all)");
    c_om->add_flag("--table", om_table, "also print every world's weight");

    std::string od_system, od_obs, od_mode = "exact";
    long od_top = 0;
    CLI::App* c_od = c_oracle->add_subcommand("diagnose", "diagnosis by world scan");
    c_od->fallthrough();
    c_od->add_option("--system", od_system, "diagnostic system (.sys) file")->required();
    c_od->add_option("--obs", od_obs, "observation literals");
    c_od->add_option("--mode", od_mode, "scoring mode (default exact)")
        ->check(CLI::IsMember({"faults", "exact"}));
    c_od->add_option("--top", od_top, "print at most N candidates (0 = all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2; --help is success
    }

    int rc = 0;
    try {
        if (*c_compile) {
            rc = run_compile(compile_cfg, out);
        } else if (*c_query) {
            rc = run_query(query_in, query_text, query_evidence, out);
        } else if (*c_models) {
            rc = run_models(models_in, models_limit, out);
        } else if (*c_check) {
            rc = run_check(check_path, out);
        } else if (*c_diag) {
            rc = run_diagnose(diag_system, diag_obs, diag_mode, diag_top, diag_cache, out);
        } else if (*c_oracle) {
            if (*c_oq) rc = run_oracle_query(oq_base, oq_query, oq_evidence, out);
            else if (*c_om) rc = run_oracle_models(om_base, om_limit, om_table, out);
            else rc = run_oracle_diagnose(od_system, od_obs, od_mode, od_top, out);
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (out.porcelain) std::cout << "error=parse\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (out.porcelain) std::cout << "error=domain\n";
        return 1;
    }
    out.flush();
    return rc;
}
