#include "wkc/nnf.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_set>

#include "wkc/errors.hpp"

namespace wkc {

int VarSet::count() const {
    int n = 0;
    for (uint64_t w : bits_) n += __builtin_popcountll(w);
    return n;
}

size_t NnfBuilder::NodeKeyHash::operator()(const NnfNode& n) const {
    uint64_t h = 1469598103934665603ull;  // FNV-1a over the structural key
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(n.kind));
    mix(static_cast<uint64_t>(n.var) + 7);
    mix(n.positive ? 1 : 2);
    for (NodeId c : n.children) mix(static_cast<uint64_t>(c) + 11);
    return static_cast<size_t>(h);
}

bool NnfBuilder::NodeKeyEq::operator()(const NnfNode& a, const NnfNode& b) const {
    return a.kind == b.kind && a.var == b.var && a.positive == b.positive &&
           a.children == b.children;
}

NnfBuilder::NnfBuilder(ScopePtr scope) : scope_(std::move(scope)) {
    if (!scope_) throw DomainError("circuit builder requires a scope");
}

NodeId NnfBuilder::intern(NnfNode node) {
    auto it = interned_.find(node);
    if (it != interned_.end()) return it->second;
    NodeId id = static_cast<NodeId>(nodes_.size());
    interned_.emplace(node, id);
    nodes_.push_back(std::move(node));
    return id;
}

NodeId NnfBuilder::constant(bool value) {
    NnfNode n;
    n.kind = value ? NnfKind::True : NnfKind::False;
    return intern(std::move(n));
}

NodeId NnfBuilder::literal(int var_index, bool positive) {
    if (var_index < 0 || var_index >= scope_->size())
        throw DomainError("literal variable index out of scope");
    NnfNode n;
    n.kind = NnfKind::Lit;
    n.var = var_index;
    n.positive = positive;
    return intern(std::move(n));
}

NodeId NnfBuilder::literal(const Literal& l) {
    int idx = scope_->index_of(l.var().name());
    if (idx < 0)
        throw DomainError("literal variable '" + l.var().name() + "' is not in the scope");
    return literal(idx, l.positive());
}

NodeId NnfBuilder::conj(std::vector<NodeId> children) {
    std::vector<NodeId> kept;
    kept.reserve(children.size());
    for (NodeId c : children) {
        switch (nodes_[static_cast<size_t>(c)].kind) {
        case NnfKind::True: break;
        case NnfKind::False: return constant(false);
        default: kept.push_back(c);
        }
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return constant(true);
    if (kept.size() == 1) return kept[0];
    NnfNode n;
    n.kind = NnfKind::And;
    n.children = std::move(kept);
    return intern(std::move(n));
}

NodeId NnfBuilder::disj(std::vector<NodeId> children) {
    std::vector<NodeId> kept;
    kept.reserve(children.size());
    for (NodeId c : children) {
        switch (nodes_[static_cast<size_t>(c)].kind) {
        case NnfKind::False: break;
        case NnfKind::True: return constant(true);
        default: kept.push_back(c);
        }
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.empty()) return constant(false);
    if (kept.size() == 1) return kept[0];
    NnfNode n;
    n.kind = NnfKind::Or;
    n.children = std::move(kept);
    return intern(std::move(n));
}

NodeId NnfBuilder::tautology_gadget(int var_index) {
    auto it = gadgets_.find(var_index);
    if (it != gadgets_.end()) return it->second;
    NodeId g = disj({literal(var_index, true), literal(var_index, false)});
    gadgets_.emplace(var_index, g);
    return g;
}

NnfCircuit NnfBuilder::build(NodeId root) {
    // Children precede parents, so a reverse sweep finds everything reachable.
    std::vector<bool> keep(nodes_.size(), false);
    keep[static_cast<size_t>(root)] = true;
    for (NodeId id = root; id >= 0; --id) {
        if (!keep[static_cast<size_t>(id)]) continue;
        for (NodeId c : nodes_[static_cast<size_t>(id)].children)
            keep[static_cast<size_t>(c)] = true;
    }
    std::vector<NodeId> remap(nodes_.size(), -1);
    std::vector<NnfNode> compact;
    for (NodeId id = 0; id <= root; ++id) {
        if (!keep[static_cast<size_t>(id)]) continue;
        NnfNode n = std::move(nodes_[static_cast<size_t>(id)]);
        for (NodeId& c : n.children) c = remap[static_cast<size_t>(c)];
        remap[static_cast<size_t>(id)] = static_cast<NodeId>(compact.size());
        compact.push_back(std::move(n));
    }
    return NnfCircuit(std::move(scope_), std::move(compact), remap[static_cast<size_t>(root)]);
}

NnfCircuit::NnfCircuit(ScopePtr scope, std::vector<NnfNode> nodes, NodeId root)
    : scope_(std::move(scope)), nodes_(std::move(nodes)), root_(root) {
    varsets_.reserve(nodes_.size());
    for (const NnfNode& n : nodes_) {
        VarSet vs(scope_->size());
        if (n.kind == NnfKind::Lit) {
            vs.set(n.var);
        } else {
            for (NodeId c : n.children) vs |= varsets_[static_cast<size_t>(c)];
        }
        varsets_.push_back(std::move(vs));
    }
}

int64_t NnfCircuit::edge_count() const {
    int64_t e = 0;
    for (const NnfNode& n : nodes_) e += static_cast<int64_t>(n.children.size());
    return e;
}

bool operator==(const NnfCircuit& a, const NnfCircuit& b) {
    if (!(*a.scope_ == *b.scope_) || a.root_ != b.root_ ||
        a.nodes_.size() != b.nodes_.size())
        return false;
    for (size_t i = 0; i < a.nodes_.size(); ++i) {
        const NnfNode& x = a.nodes_[i];
        const NnfNode& y = b.nodes_[i];
        if (x.kind != y.kind || x.var != y.var || x.positive != y.positive ||
            x.children != y.children)
            return false;
    }
    return true;
}

CheckReport check(const NnfCircuit& c) {
    CheckReport rep;
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        if (n.kind == NnfKind::And) {
            VarSet seen(c.scope().size());
            for (NodeId ch : n.children) {
                const VarSet& cv = c.varset(ch);
                if (!seen.disjoint_with(cv)) {
                    rep.decomposable = false;
                    rep.offending_and.push_back(id);
                    break;
                }
                seen |= cv;
            }
        } else if (n.kind == NnfKind::Or) {
            const VarSet& first = c.varset(n.children[0]);
            for (size_t i = 1; i < n.children.size(); ++i) {
                if (c.varset(n.children[i]) != first) {
                    rep.smooth = false;
                    rep.offending_or.push_back(id);
                    break;
                }
            }
        }
    }
    return rep;
}

namespace {

// Rebuilds c into b, transforming literal leaves through `leaf`; inner nodes
// are re-interned (which re-folds any constants the leaves introduced).
template <class LeafFn>
NodeId rebuild(const NnfCircuit& c, NnfBuilder& b, LeafFn leaf) {
    std::vector<NodeId> map(static_cast<size_t>(c.node_count()));
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        NodeId out;
        switch (n.kind) {
        case NnfKind::False: out = b.constant(false); break;
        case NnfKind::True: out = b.constant(true); break;
        case NnfKind::Lit: out = leaf(n.var, n.positive); break;
        default: {
            std::vector<NodeId> ch;
            ch.reserve(n.children.size());
            for (NodeId x : n.children) ch.push_back(map[static_cast<size_t>(x)]);
            out = n.kind == NnfKind::And ? b.conj(std::move(ch)) : b.disj(std::move(ch));
        }
        }
        map[static_cast<size_t>(id)] = out;
    }
    return map[static_cast<size_t>(c.root())];
}

ScopePtr scope_without(const Scope& s, const std::vector<bool>& removed) {
    std::vector<Variable> kept;
    for (int i = 0; i < s.size(); ++i)
        if (!removed[static_cast<size_t>(i)]) kept.push_back(s.var(i));
    return std::make_shared<const Scope>(std::move(kept));
}

} // namespace

NnfCircuit smooth(const NnfCircuit& c) {
    CheckReport rep = check(c);
    if (!rep.decomposable)
        throw DomainError("smoothing requires a decomposable circuit");
    if (rep.smooth) return c;

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
            const VarSet& full = c.varset(id);
            std::vector<NodeId> ch;
            ch.reserve(n.children.size());
            for (NodeId x : n.children) {
                const VarSet& have = c.varset(x);
                std::vector<NodeId> parts{map[static_cast<size_t>(x)]};
                full.for_each([&](int v) {
                    if (!have.test(v)) parts.push_back(b.tautology_gadget(v));
                });
                ch.push_back(parts.size() == 1 ? parts[0] : b.conj(std::move(parts)));
            }
            out = b.disj(std::move(ch));
            break;
        }
        }
        map[static_cast<size_t>(id)] = out;
    }
    return b.build(map[static_cast<size_t>(c.root())]);
}

NnfCircuit condition(const NnfCircuit& c, const Term& t) {
    const Scope& s = c.scope();
    std::vector<int> sign(static_cast<size_t>(s.size()), 0);
    std::vector<bool> removed(static_cast<size_t>(s.size()), false);
    for (const Literal& l : t.lits()) {
        int idx = s.index_of(l.var().name());
        if (idx < 0) continue;  // assignment outside the scope is a no-op
        sign[static_cast<size_t>(idx)] = l.positive() ? 1 : -1;
        removed[static_cast<size_t>(idx)] = true;
    }
    ScopePtr narrowed = scope_without(s, removed);
    std::vector<int> reindex(static_cast<size_t>(s.size()), -1);
    for (int i = 0, j = 0; i < s.size(); ++i)
        if (!removed[static_cast<size_t>(i)]) reindex[static_cast<size_t>(i)] = j++;

    NnfBuilder b(narrowed);
    NodeId root = rebuild(c, b, [&](int var, bool positive) {
        int sg = sign[static_cast<size_t>(var)];
        if (sg == 0) return b.literal(reindex[static_cast<size_t>(var)], positive);
        return b.constant((sg > 0) == positive);
    });
    return b.build(root);
}

NnfCircuit forget(const NnfCircuit& c, const std::vector<Variable>& vars) {
    if (!check(c).decomposable)
        throw DomainError("forgetting requires a decomposable circuit");
    const Scope& s = c.scope();
    std::vector<bool> removed(static_cast<size_t>(s.size()), false);
    for (const Variable& v : vars) {
        int idx = s.index_of(v.name());
        if (idx >= 0) removed[static_cast<size_t>(idx)] = true;
    }
    ScopePtr narrowed = scope_without(s, removed);
    std::vector<int> reindex(static_cast<size_t>(s.size()), -1);
    for (int i = 0, j = 0; i < s.size(); ++i)
        if (!removed[static_cast<size_t>(i)]) reindex[static_cast<size_t>(i)] = j++;

    NnfBuilder b(narrowed);
    NodeId root = rebuild(c, b, [&](int var, bool positive) {
        if (removed[static_cast<size_t>(var)]) return b.constant(true);
        return b.literal(reindex[static_cast<size_t>(var)], positive);
    });
    return b.build(root);
}

NnfCircuit cover_scope(const NnfCircuit& c) {
    const VarSet& have = c.root_varset();
    std::vector<int> missing;
    for (int i = 0; i < c.scope().size(); ++i)
        if (!have.test(i)) missing.push_back(i);
    if (missing.empty()) return c;

    NnfBuilder b(c.scope_ptr());
    NodeId root = rebuild(c, b, [&](int var, bool positive) { return b.literal(var, positive); });
    std::vector<NodeId> parts{root};
    for (int v : missing) parts.push_back(b.tautology_gadget(v));
    return b.build(b.conj(std::move(parts)));
}

bool entails_clause(const NnfCircuit& c, const Clause& cl) {
    if (cl.tautological()) return true;
    if (!check(c).decomposable)
        throw DomainError("clausal entailment requires a decomposable circuit");
    std::vector<Literal> negated;
    negated.reserve(cl.lits().size());
    for (const Literal& l : cl.lits()) negated.push_back(l.negated());
    return condition(c, Term(std::move(negated))).is_false();
}

bool evaluate(const NnfCircuit& c, const World& w) {
    std::vector<bool> val(static_cast<size_t>(c.node_count()));
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& n = c.node(id);
        bool v = false;
        switch (n.kind) {
        case NnfKind::False: v = false; break;
        case NnfKind::True: v = true; break;
        case NnfKind::Lit:
            v = w.value(c.scope().var(n.var)) == n.positive;
            break;
        case NnfKind::And:
            v = true;
            for (NodeId ch : n.children) v = v && val[static_cast<size_t>(ch)];
            break;
        case NnfKind::Or:
            v = false;
            for (NodeId ch : n.children) v = v || val[static_cast<size_t>(ch)];
            break;
        }
        val[static_cast<size_t>(id)] = v;
    }
    return val[static_cast<size_t>(c.root())];
}

std::vector<World> enumerate_models(const NnfCircuit& c, EnumStats* stats) {
    CheckReport rep = check(c);
    if (!rep.decomposable || !rep.smooth)
        throw DomainError("model enumeration requires a smooth decomposable circuit");

    EnumStats local;
    EnumStats& st = stats ? *stats : local;

    const int n = c.scope().size();
    const size_t words = static_cast<size_t>((n + 63) / 64);
    using Bits = std::vector<uint64_t>;  // assignment restricted to the node's varset

    std::vector<std::vector<Bits>> models(static_cast<size_t>(c.node_count()));
    for (NodeId id = 0; id < c.node_count(); ++id) {
        const NnfNode& nd = c.node(id);
        std::vector<Bits>& out = models[static_cast<size_t>(id)];
        switch (nd.kind) {
        case NnfKind::False:
            break;
        case NnfKind::True:
            out.push_back(Bits(words, 0));
            st.ops += 1;
            break;
        case NnfKind::Lit: {
            Bits b(words, 0);
            if (nd.positive) b[static_cast<size_t>(nd.var) >> 6] |= 1ull << (nd.var & 63);
            out.push_back(std::move(b));
            st.ops += 1;
            break;
        }
        case NnfKind::And: {
            // Decomposability: child assignments touch disjoint variables, so
            // the cross product is injective and needs no deduplication.
            out.push_back(Bits(words, 0));
            for (NodeId ch : nd.children) {
                const std::vector<Bits>& cm = models[static_cast<size_t>(ch)];
                std::vector<Bits> next;
                next.reserve(out.size() * cm.size());
                for (const Bits& a : out) {
                    for (const Bits& b : cm) {
                        Bits merged(words);
                        for (size_t w = 0; w < words; ++w) merged[w] = a[w] | b[w];
                        next.push_back(std::move(merged));
                        st.ops += words;
                    }
                }
                out = std::move(next);
            }
            break;
        }
        case NnfKind::Or: {
            // Smoothness: all children range over the same variables, so byte
            // equality of the assignments is semantic equality.
            std::unordered_set<std::string> seen;
            for (NodeId ch : nd.children) {
                for (const Bits& b : models[static_cast<size_t>(ch)]) {
                    std::string key(reinterpret_cast<const char*>(b.data()),
                                    words * sizeof(uint64_t));
                    st.ops += 1;
                    if (seen.insert(std::move(key)).second) out.push_back(b);
                }
            }
            break;
        }
        }
    }

    std::vector<int> missing;  // scope variables the circuit never mentions
    const VarSet& have = c.root_varset();
    for (int i = 0; i < n; ++i)
        if (!have.test(i)) missing.push_back(i);
    if (missing.size() > 30)
        throw DomainError("too many unconstrained variables to enumerate models");

    const std::vector<Bits>& roots = models[static_cast<size_t>(c.root())];
    std::vector<World> out;
    out.reserve(roots.size() << missing.size());
    for (const Bits& base : roots) {
        for (uint64_t mask = 0; mask < (1ull << missing.size()); ++mask) {
            std::vector<bool> values(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                values[static_cast<size_t>(i)] = (base[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u;
            // Unconstrained variables expand positive first, later ones fastest.
            for (size_t j = 0; j < missing.size(); ++j) {
                bool on = ((mask >> (missing.size() - 1 - j)) & 1u) == 0;
                values[static_cast<size_t>(missing[j])] = on;
            }
            out.emplace_back(c.scope_ptr(), std::move(values));
            st.ops += 1;
        }
    }
    st.models = out.size();
    return out;
}

} // namespace wkc
