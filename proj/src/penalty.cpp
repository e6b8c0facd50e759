#include "wkc/penalty.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "wkc/errors.hpp"
#include "wkc/nnf_io.hpp"
#include "wkc/weighted_base.hpp"

namespace wkc {

CompiledBase::CompiledBase(NnfCircuit circuit, PenaltyMap penalties,
                           std::vector<Variable> original_vars)
    : circuit_(std::move(circuit)), penalties_(std::move(penalties)),
      original_vars_(std::move(original_vars)) {
    CheckReport rep = check(circuit_);
    if (!rep.decomposable)
        throw DomainError("compiled base requires a decomposable circuit");
    if (!rep.smooth)
        throw DomainError("compiled base requires a smooth circuit");
    const Scope& s = circuit_.scope();
    for (const auto& [name, lp] : penalties_) {
        (void)lp;
        if (!s.contains(name))
            throw DomainError("penalty variable '" + name + "' is not in the circuit scope");
    }
    std::unordered_set<std::string> original;
    for (const Variable& v : original_vars_) {
        if (!s.contains(v.name()))
            throw DomainError("variable '" + v.name() + "' is not in the circuit scope");
        original.insert(v.name());
    }
    for (int i = 0; i < s.size(); ++i)
        if (!original.count(s.var(i).name())) guard_vars_.push_back(s.var(i));
    // Weight annotation only sees variables the circuit mentions; a compiled
    // base therefore covers its whole scope (the false circuit trivially so).
    if (!circuit_.is_false()) {
        const VarSet& have = circuit_.root_varset();
        for (int i = 0; i < s.size(); ++i)
            if (!have.test(i))
                throw DomainError("compiled circuit does not mention scope variable '" +
                                  s.var(i).name() + "'");
    }
}

WeightAnnotation annotate_weights(const NnfCircuit& c, const PenaltyMap& penalties) {
    WeightAnnotation a;
    a.node_weight.reserve(static_cast<size_t>(c.node_count()));
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        Weight w = Weight::zero();
        switch (n.kind) {
        case NnfKind::False:
            w = Weight::infinity();
            break;
        case NnfKind::True:
            break;
        case NnfKind::Lit: {
            auto it = penalties.find(c.scope().var(n.var).name());
            if (it != penalties.end())
                w = n.positive ? it->second.on_positive : it->second.on_negative;
            break;
        }
        case NnfKind::And:
            for (NodeId ch : n.children) w += a.node_weight[static_cast<size_t>(ch)];
            break;
        case NnfKind::Or: {
            w = Weight::infinity();
            for (NodeId ch : n.children) {
                const Weight& cw = a.node_weight[static_cast<size_t>(ch)];
                if (cw < w) w = cw;
            }
            break;
        }
        }
        a.node_weight.push_back(w);
    }
    a.root = a.node_weight[static_cast<size_t>(c.root())];
    return a;
}

Weight base_weight(const CompiledBase& cb) {
    return annotate_weights(cb.circuit(), cb.penalties()).root;
}

NnfCircuit minimize(const NnfCircuit& c, const PenaltyMap& penalties, const Weight& epsilon) {
    WeightAnnotation ann = annotate_weights(c, penalties);
    if (ann.root.is_infinite())
        throw DomainError("circuit has no finite-weight model to minimize towards");

    NnfBuilder b(c.scope_ptr());
    std::vector<NodeId> map(static_cast<size_t>(c.node_count()));
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        NodeId out;
        switch (n.kind) {
        case NnfKind::False: out = b.constant(false); break;
        case NnfKind::True: out = b.constant(true); break;
        case NnfKind::Lit: out = b.literal(n.var, n.positive); break;
        case NnfKind::And: {
            std::vector<NodeId> ch;
            ch.reserve(n.children.size());
            for (NodeId x : n.children) ch.push_back(map[static_cast<size_t>(x)]);
            out = b.conj(std::move(ch));
            break;
        }
        case NnfKind::Or: {
            Weight cutoff = ann.node_weight[static_cast<size_t>(id)] + epsilon;
            std::vector<NodeId> ch;
            for (NodeId x : n.children)
                if (ann.node_weight[static_cast<size_t>(x)] <= cutoff)
                    ch.push_back(map[static_cast<size_t>(x)]);
            out = b.disj(std::move(ch));
            break;
        }
        }
        map[static_cast<size_t>(id)] = out;
    }
    return b.build(map[static_cast<size_t>(c.root())]);
}

NnfCircuit minimize(const CompiledBase& cb) {
    return minimize(cb.circuit(), cb.penalties());
}

PreferredModels preferred_models(const CompiledBase& cb) {
    PreferredModels out;
    WeightAnnotation ann = annotate_weights(cb.circuit(), cb.penalties());
    out.weight = ann.root;
    if (ann.root.is_infinite()) {
        out.inconsistent = true;
        return out;
    }
    NnfCircuit minimal = minimize(cb.circuit(), cb.penalties());
    NnfCircuit projected = forget(minimal, cb.guard_vars());
    out.models = enumerate_models(smooth(projected), &out.stats);
    return out;
}

namespace {

Weight parse_weight_at(const std::string& text, const std::string& source, int line) {
    try {
        return Weight::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(e.what(), source, line, 0);
    }
}

void require_original(const CompiledBase& cb, const Variable& v, const char* role) {
    for (const Variable& o : cb.original_vars())
        if (o == v) return;
    throw DomainError(std::string(role) + " variable '" + v.name() +
                      "' is not a variable of the base");
}

} // namespace

InferResult infer(const CompiledBase& cb, const Cnf& query, const Term& evidence) {
    for (const Clause& cl : query.clauses())
        for (const Literal& l : cl.lits()) require_original(cb, l.var(), "query");
    for (const Literal& l : evidence.lits()) require_original(cb, l.var(), "evidence");

    InferResult r;
    NnfCircuit work = evidence.lits().empty() ? cb.circuit()
                                                  : condition(cb.circuit(), evidence);
    WeightAnnotation ann = annotate_weights(work, cb.penalties());
    r.weight = ann.root;
    if (ann.root.is_infinite()) {
        // The evidence contradicts the hard part: entailment is vacuous.
        r.entailed = true;
        r.inconsistent = true;
        return r;
    }
    NnfCircuit minimal = minimize(work, cb.penalties());
    NnfCircuit projected = forget(minimal, cb.guard_vars());
    for (const Clause& cl : query.clauses()) {
        if (cl.tautological()) continue;
        // The evidence decides some query literals outright.
        bool satisfied = false;
        std::vector<Literal> residual;
        for (const Literal& l : cl.lits()) {
            int sign = evidence.sign_of(l.var());
            if (sign == 0) {
                residual.push_back(l);
            } else if ((sign > 0) == l.positive()) {
                satisfied = true;
                break;
            }
        }
        if (satisfied) continue;
        if (residual.empty() || !entails_clause(projected, Clause(std::move(residual)))) {
            r.entailed = false;
            return r;
        }
    }
    r.entailed = true;
    return r;
}

void save_bundle(const CompiledBase& cb, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DomainError("cannot create bundle directory '" + dir + "': " + ec.message());

    write_nnf_file(cb.circuit(), (fs::path(dir) / "model.nnf").string());

    std::ofstream pen((fs::path(dir) / "penalties.txt").string(), std::ios::binary);
    if (!pen) throw DomainError("cannot write penalties in '" + dir + "'");
    for (const auto& [name, lp] : cb.penalties()) {
        pen << name << ' ' << lp.on_negative.str();
        if (!lp.on_positive.is_zero()) pen << ' ' << lp.on_positive.str();
        pen << '\n';
    }

    std::ofstream man((fs::path(dir) / "manifest.txt").string(), std::ios::binary);
    if (!man) throw DomainError("cannot write manifest in '" + dir + "'");
    man << "wkc-bundle 1\n";
    for (const Variable& v : cb.original_vars()) man << "var " << v.name() << '\n';
    if (!pen || !man) throw DomainError("bundle write to '" + dir + "' failed");
}

CompiledBase load_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    const std::string man_path = (fs::path(dir) / "manifest.txt").string();
    std::istringstream man(slurp_file(man_path));
    std::string line;
    int lineno = 0;
    std::vector<Variable> original;
    bool header = false;
    while (std::getline(man, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (!header) {
            std::string version;
            if (tok != "wkc-bundle" || !(ls >> version) || version != "1")
                throw ParseError("not a bundle manifest", man_path, lineno, 0);
            header = true;
            continue;
        }
        if (tok != "var")
            throw ParseError("expected 'var <name>'", man_path, lineno, 0);
        std::string name;
        if (!(ls >> name) || !Variable::valid_name(name))
            throw ParseError("malformed variable name", man_path, lineno, 0);
        original.emplace_back(name);
    }
    if (!header) throw ParseError("empty bundle manifest", man_path, lineno, 0);

    const std::string pen_path = (fs::path(dir) / "penalties.txt").string();
    std::istringstream pen(slurp_file(pen_path));
    PenaltyMap penalties;
    lineno = 0;
    while (std::getline(pen, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) continue;
        std::string neg, pos;
        if (!(ls >> neg))
            throw ParseError("expected '<var> <weight>'", pen_path, lineno, 0);
        LiteralPenalty lp;
        lp.on_negative = parse_weight_at(neg, pen_path, lineno);
        if (ls >> pos) lp.on_positive = parse_weight_at(pos, pen_path, lineno);
        if (!penalties.emplace(name, lp).second)
            throw ParseError("duplicate penalty for '" + name + "'", pen_path, lineno, 0);
    }

    NnfCircuit circuit = read_nnf_file((fs::path(dir) / "model.nnf").string());
    return CompiledBase(std::move(circuit), std::move(penalties), std::move(original));
}

} // namespace wkc
