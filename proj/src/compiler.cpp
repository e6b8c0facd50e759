#include "wkc/compiler.hpp"

#include <algorithm>
#include <unordered_map>

#include "wkc/errors.hpp"
#include "wkc/normalform.hpp"

namespace wkc {

namespace {

// Internal literal encoding: variable index v becomes 2v (positive) or
// 2v+1 (negative), so sorting orders by variable with positive first.
inline int enc(int var, bool positive) { return 2 * var + (positive ? 0 : 1); }
inline int enc_var(int lit) { return lit >> 1; }
inline bool enc_pos(int lit) { return (lit & 1) == 0; }
inline int enc_neg(int lit) { return lit ^ 1; }

using IntClause = std::vector<int>;   // sorted, duplicate-free
using IntClauses = std::vector<IntClause>;

struct ClausesKeyHash {
    size_t operator()(const std::vector<int>& key) const {
        uint64_t h = 1469598103934665603ull;
        for (int v : key) {
            h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

class Engine {
public:
    Engine(NnfBuilder& builder, int var_count, const CompileOptions& options, CompileStats& stats)
        : b_(builder), nvars_(var_count), opt_(options), st_(stats) {}

    NodeId compile(IntClauses cs) {
        std::vector<NodeId> conjuncts;
        // Unit propagation: implied literals become conjuncts of the result.
        std::vector<int8_t> value(static_cast<size_t>(2 * nvars_), 0);
        for (;;) {
            std::vector<int> units;
            for (const IntClause& c : cs) {
                if (c.empty()) return b_.constant(false);
                if (c.size() == 1) {
                    int l = c[0];
                    if (value[static_cast<size_t>(enc_neg(l))]) return b_.constant(false);
                    if (!value[static_cast<size_t>(l)]) {
                        value[static_cast<size_t>(l)] = 1;
                        units.push_back(l);
                    }
                }
            }
            if (units.empty()) break;
            for (int l : units)
                conjuncts.push_back(b_.literal(enc_var(l), enc_pos(l)));
            IntClauses reduced;
            reduced.reserve(cs.size());
            for (const IntClause& c : cs) {
                IntClause kept;
                bool satisfied = false;
                for (int l : c) {
                    if (value[static_cast<size_t>(l)]) {
                        satisfied = true;
                        break;
                    }
                    if (!value[static_cast<size_t>(enc_neg(l))]) kept.push_back(l);
                }
                if (satisfied) continue;
                reduced.push_back(std::move(kept));
            }
            cs = std::move(reduced);
        }

        if (cs.empty()) return b_.conj(std::move(conjuncts));

        for (IntClauses& comp : split_components(std::move(cs)))
            conjuncts.push_back(compile_component(std::move(comp)));
        return b_.conj(std::move(conjuncts));
    }

private:
    // Partitions the clauses into variable-disjoint groups; group order and
    // each group's internal order follow first appearance.
    std::vector<IntClauses> split_components(IntClauses cs) {
        std::vector<int> parent(cs.size());
        for (size_t i = 0; i < cs.size(); ++i) parent[i] = static_cast<int>(i);
        auto find = [&parent](int x) {
            while (parent[static_cast<size_t>(x)] != x) {
                parent[static_cast<size_t>(x)] =
                    parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
                x = parent[static_cast<size_t>(x)];
            }
            return x;
        };
        std::unordered_map<int, int> owner;  // variable -> representative clause
        for (size_t i = 0; i < cs.size(); ++i) {
            for (int l : cs[i]) {
                auto [it, fresh] = owner.emplace(enc_var(l), static_cast<int>(i));
                if (!fresh) {
                    int a = find(it->second);
                    int b = find(static_cast<int>(i));
                    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
                }
            }
        }
        std::vector<int> group_of(cs.size(), -1);
        std::vector<IntClauses> groups;
        for (size_t i = 0; i < cs.size(); ++i) {
            int root = find(static_cast<int>(i));
            if (group_of[static_cast<size_t>(root)] < 0) {
                group_of[static_cast<size_t>(root)] = static_cast<int>(groups.size());
                groups.emplace_back();
            }
            groups[static_cast<size_t>(group_of[static_cast<size_t>(root)])].push_back(
                std::move(cs[i]));
        }
        if (groups.size() > 1) ++st_.component_splits;
        return groups;
    }

    NodeId compile_component(IntClauses comp) {
        std::vector<int> key;
        if (opt_.component_cache) {
            IntClauses canon = comp;
            std::sort(canon.begin(), canon.end());
            for (const IntClause& c : canon) {
                key.insert(key.end(), c.begin(), c.end());
                key.push_back(-1);
            }
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++st_.cache_hits;
                return it->second;
            }
        }
        NodeId node = branch(std::move(comp));
        if (opt_.component_cache) cache_.emplace(std::move(key), node);
        return node;
    }

public:
    size_t cache_size() const { return cache_.size(); }

private:
    NodeId branch(IntClauses comp) {
        ++st_.decisions;
        int var = pick_variable(comp);
        NodeId pos = compile(assign(comp, var, true));
        NodeId neg = compile(assign(std::move(comp), var, false));
        return b_.disj({b_.conj({b_.literal(var, true), pos}),
                        b_.conj({b_.literal(var, false), neg})});
    }

    int pick_variable(const IntClauses& comp) const {
        std::unordered_map<int, int> count;
        for (const IntClause& c : comp)
            for (int l : c) ++count[enc_var(l)];
        int best = -1, best_count = -1;
        for (const auto& [v, n] : count)
            if (n > best_count || (n == best_count && v < best)) {
                best = v;
                best_count = n;
            }
        return best;
    }

    static IntClauses assign(IntClauses comp, int var, bool positive) {
        const int sat = enc(var, positive);
        const int falsified = enc_neg(sat);
        IntClauses out;
        out.reserve(comp.size());
        for (IntClause& c : comp) {
            bool satisfied = false;
            IntClause kept;
            for (int l : c) {
                if (l == sat) {
                    satisfied = true;
                    break;
                }
                if (l != falsified) kept.push_back(l);
            }
            if (!satisfied) out.push_back(std::move(kept));
        }
        return out;
    }

    NnfBuilder& b_;
    int nvars_;
    const CompileOptions& opt_;
    CompileStats& st_;
    std::unordered_map<std::vector<int>, NodeId, ClausesKeyHash> cache_;
};

} // namespace

NnfCircuit compile_cnf(const Cnf& cnf, ScopePtr scope, const CompileOptions& options,
                       CompileStats* stats) {
    CompileStats local;
    CompileStats& st = stats ? *stats : local;
    ++st.compile_calls;

    IntClauses clauses;
    clauses.reserve(cnf.clauses().size());
    for (const Clause& c : cnf.clauses()) {
        IntClause ic;
        ic.reserve(c.lits().size());
        for (const Literal& l : c.lits()) {
            int idx = scope->index_of(l.var().name());
            if (idx < 0)
                throw DomainError("clause variable '" + l.var().name() +
                                  "' is not in the compilation scope");
            ic.push_back(enc(idx, l.positive()));
        }
        std::sort(ic.begin(), ic.end());
        clauses.push_back(std::move(ic));
    }

    NnfBuilder b(scope);
    Engine engine(b, scope->size(), options, st);
    NodeId root = engine.compile(std::move(clauses));
    st.cache_entries += engine.cache_size();
    NnfCircuit circuit = b.build(root);
    if (options.smooth_output) circuit = smooth(circuit);
    return circuit;
}

CompiledBase compile_base(const WeightedBase& base, CompileStats* stats) {
    NormalFormBase nf = normalize(base);
    Cnf hard = to_cnf(hard_part(nf.base()));
    NnfCircuit circuit = compile_cnf(hard, nf.base().scope(), CompileOptions{}, stats);
    circuit = cover_scope(circuit);
    PenaltyMap penalties;
    for (const HoldsEntry& e : nf.holds_map()) {
        LiteralPenalty lp;
        lp.on_negative = e.penalty;
        penalties.emplace(e.holds_var.name(), lp);
    }
    return CompiledBase(std::move(circuit), std::move(penalties), base.scope()->vars());
}

} // namespace wkc
