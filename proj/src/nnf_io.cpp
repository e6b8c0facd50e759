#include "wkc/nnf_io.hpp"

#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "wkc/errors.hpp"
#include "wkc/weighted_base.hpp"

namespace wkc {

void write_nnf(const NnfCircuit& c, std::ostream& out) {
    const Scope& s = c.scope();
    for (int i = 0; i < s.size(); ++i)
        out << "c var " << (i + 1) << ' ' << s.var(i).name() << '\n';
    out << "nnf " << c.node_count() << ' ' << c.edge_count() << ' ' << s.size() << '\n';
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        switch (n.kind) {
        case NnfKind::True:
            out << "A 0\n";
            break;
        case NnfKind::False:
            out << "O 0 0\n";
            break;
        case NnfKind::Lit:
            out << "L " << (n.positive ? n.var + 1 : -(n.var + 1)) << '\n';
            break;
        case NnfKind::And:
            out << "A " << n.children.size();
            for (NodeId ch : n.children) out << ' ' << ch;
            out << '\n';
            break;
        case NnfKind::Or:
            out << "O 0 " << n.children.size();
            for (NodeId ch : n.children) out << ' ' << ch;
            out << '\n';
            break;
        }
    }
}

std::string write_nnf(const NnfCircuit& c) {
    std::ostringstream out;
    write_nnf(c, out);
    return out.str();
}

void write_nnf_file(const NnfCircuit& c, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    write_nnf(c, out);
    if (!out) throw DomainError("write to '" + path + "' failed");
}

namespace {

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw ParseError(msg, source, line, 0);
}

} // namespace

NnfCircuit read_nnf(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::vector<std::string> names;
    bool header_seen = false;
    long declared_nodes = 0, declared_edges = 0, declared_vars = 0;

    std::vector<NodeId> by_line;  // file node index -> builder id
    NnfBuilder* builder = nullptr;
    std::unique_ptr<NnfBuilder> builder_box;
    long edges = 0;

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line

        if (tok == "c") {
            if (header_seen) continue;  // comments after the header are ignored
            std::string kw;
            if (!(ls >> kw) || kw != "var") continue;
            long idx;
            std::string name;
            if (!(ls >> idx >> name))
                fail(source, lineno, "malformed variable naming comment");
            if (idx != static_cast<long>(names.size()) + 1)
                fail(source, lineno, "variable naming comments must be consecutive from 1");
            if (!Variable::valid_name(name))
                fail(source, lineno, "invalid variable name '" + name + "'");
            names.push_back(name);
            continue;
        }

        if (!header_seen) {
            if (tok != "nnf") fail(source, lineno, "expected 'nnf' header");
            if (!(ls >> declared_nodes >> declared_edges >> declared_vars) ||
                declared_nodes < 0 || declared_edges < 0 || declared_vars < 0)
                fail(source, lineno, "malformed 'nnf' header");
            if (!names.empty() && static_cast<long>(names.size()) != declared_vars)
                fail(source, lineno, "variable naming comments do not cover all variables");
            if (names.empty())
                for (long i = 1; i <= declared_vars; ++i)
                    names.push_back("v" + std::to_string(i));
            std::vector<Variable> vars;
            vars.reserve(names.size());
            for (const std::string& nm : names) vars.emplace_back(nm);
            builder_box = std::make_unique<NnfBuilder>(
                std::make_shared<const Scope>(std::move(vars)));
            builder = builder_box.get();
            header_seen = true;
            continue;
        }

        if (static_cast<long>(by_line.size()) >= declared_nodes)
            fail(source, lineno, "more nodes than the header declares");

        NodeId id;
        if (tok == "L") {
            long lit;
            if (!(ls >> lit) || lit == 0 || lit > declared_vars || lit < -declared_vars)
                fail(source, lineno, "malformed literal node");
            id = builder->literal(static_cast<int>((lit > 0 ? lit : -lit) - 1), lit > 0);
        } else if (tok == "A" || tok == "O") {
            long skip = 0;
            if (tok == "O" && !(ls >> skip))
                fail(source, lineno, "malformed disjunction node");
            long count;
            if (!(ls >> count) || count < 0)
                fail(source, lineno, "malformed node child count");
            std::vector<NodeId> children;
            children.reserve(static_cast<size_t>(count));
            for (long i = 0; i < count; ++i) {
                long ref;
                if (!(ls >> ref)) fail(source, lineno, "missing node child id");
                if (ref < 0 || ref >= static_cast<long>(by_line.size()))
                    fail(source, lineno, "node child must reference an earlier node");
                children.push_back(by_line[static_cast<size_t>(ref)]);
            }
            edges += count;
            id = tok == "A" ? builder->conj(std::move(children))
                            : builder->disj(std::move(children));
        } else {
            fail(source, lineno, "unknown node type '" + tok + "'");
        }
        std::string rest;
        if (ls >> rest) fail(source, lineno, "trailing content after node definition");
        by_line.push_back(id);
    }

    if (!header_seen) fail(source, lineno, "missing 'nnf' header");
    if (static_cast<long>(by_line.size()) != declared_nodes)
        fail(source, lineno, "fewer nodes than the header declares");
    if (edges != declared_edges)
        fail(source, lineno, "edge count does not match the header");
    if (by_line.empty()) fail(source, lineno, "circuit has no nodes");
    return builder->build(by_line.back());
}

NnfCircuit read_nnf_file(const std::string& path) {
    return read_nnf(slurp_file(path), path);
}

} // namespace wkc
