#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wkc/cnf.hpp"
#include "wkc/world.hpp"

namespace wkc {

using NodeId = int32_t;

// Bitset over scope indices.
class VarSet {
public:
    VarSet() = default;
    explicit VarSet(int bit_count)
        : bits_(static_cast<size_t>((bit_count + 63) / 64), 0), size_(bit_count) {}

    int size() const { return size_; }
    void set(int i) { bits_[static_cast<size_t>(i) >> 6] |= 1ull << (i & 63); }
    bool test(int i) const { return (bits_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u; }

    VarSet& operator|=(const VarSet& other) {
        for (size_t w = 0; w < bits_.size(); ++w) bits_[w] |= other.bits_[w];
        return *this;
    }
    friend bool operator==(const VarSet& a, const VarSet& b) { return a.bits_ == b.bits_; }
    friend bool operator!=(const VarSet& a, const VarSet& b) { return a.bits_ != b.bits_; }

    bool disjoint_with(const VarSet& other) const {
        for (size_t w = 0; w < bits_.size(); ++w)
            if (bits_[w] & other.bits_[w]) return false;
        return true;
    }

    int count() const;

    template <class Fn>
    void for_each(Fn fn) const {  // ascending index order
        for (size_t w = 0; w < bits_.size(); ++w) {
            uint64_t word = bits_[w];
            while (word) {
                int bit = __builtin_ctzll(word);
                fn(static_cast<int>(w * 64) + bit);
                word &= word - 1;
            }
        }
    }

    const std::vector<uint64_t>& words() const { return bits_; }

private:
    std::vector<uint64_t> bits_;
    int size_ = 0;
};

enum class NnfKind : uint8_t { False, True, Lit, And, Or };

struct NnfNode {
    NnfKind kind;
    int var = -1;          // Lit only: scope index
    bool positive = true;  // Lit only
    std::vector<NodeId> children;
};

class NnfCircuit;

// Append-only node store with structural sharing: identical nodes are
// interned once, And/Or children are sorted by id, constants propagate and
// single-child nodes collapse at construction. Children always reference
// earlier ids, so the table is topologically ordered by construction.
class NnfBuilder {
public:
    explicit NnfBuilder(ScopePtr scope);

    NodeId constant(bool value);
    NodeId literal(int var_index, bool positive);
    NodeId literal(const Literal& l);
    NodeId conj(std::vector<NodeId> children);
    NodeId disj(std::vector<NodeId> children);
    // (v | ~v), shared per variable
    NodeId tautology_gadget(int var_index);

    const NnfNode& node(NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
    const ScopePtr& scope() const { return scope_; }

    // Compacts to the nodes reachable from root (relative order kept) and
    // freezes the result; the builder is spent afterwards.
    NnfCircuit build(NodeId root);

private:
    NodeId intern(NnfNode node);

    struct NodeKeyHash {
        size_t operator()(const NnfNode& n) const;
    };
    struct NodeKeyEq {
        bool operator()(const NnfNode& a, const NnfNode& b) const;
    };

    ScopePtr scope_;
    std::vector<NnfNode> nodes_;
    std::unordered_map<NnfNode, NodeId, NodeKeyHash, NodeKeyEq> interned_;
    std::unordered_map<int, NodeId> gadgets_;
};

// Immutable rooted DAG in negation normal form with cached per-node variable
// sets. The root is always the last node of the table.
class NnfCircuit {
public:
    const Scope& scope() const { return *scope_; }
    const ScopePtr& scope_ptr() const { return scope_; }
    NodeId root() const { return root_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const NnfNode& node(NodeId id) const { return nodes_[static_cast<size_t>(id)]; }
    int64_t edge_count() const;
    const VarSet& varset(NodeId id) const { return varsets_[static_cast<size_t>(id)]; }
    const VarSet& root_varset() const { return varsets_[static_cast<size_t>(root_)]; }

    bool is_false() const { return node(root_).kind == NnfKind::False; }
    bool is_true() const { return node(root_).kind == NnfKind::True; }

    friend bool operator==(const NnfCircuit& a, const NnfCircuit& b);

private:
    friend class NnfBuilder;
    NnfCircuit(ScopePtr scope, std::vector<NnfNode> nodes, NodeId root);

    ScopePtr scope_;
    std::vector<NnfNode> nodes_;
    NodeId root_ = 0;
    std::vector<VarSet> varsets_;
};

struct CheckReport {
    bool decomposable = true;
    bool smooth = true;
    std::vector<NodeId> offending_and;  // And nodes whose children share variables
    std::vector<NodeId> offending_or;   // Or nodes with differing child varsets
};

// One topological pass computing both structural flags.
CheckReport check(const NnfCircuit& c);

// Equalizes every Or node's child varsets by conjoining (v | ~v) gadgets onto
// under-scoped disjuncts. Requires a decomposable input; the result is
// equivalent, decomposable and smooth.
NnfCircuit smooth(const NnfCircuit& c);

// Substitutes the term's literals by constants and propagates them. The
// assigned variables leave the scope.
NnfCircuit condition(const NnfCircuit& c, const Term& t);

// Replaces every leaf over the given variables by true and propagates;
// models(result) are the projections of models(c). Only sound on
// decomposable circuits, which is enforced. The variables leave the scope.
NnfCircuit forget(const NnfCircuit& c, const std::vector<Variable>& vars);

// Conjoins (v | ~v) onto the root for every scope variable absent from the
// root's varset, so downstream weight annotation and minimization see every
// variable of the scope. Preserves equivalence, decomposability, smoothness.
NnfCircuit cover_scope(const NnfCircuit& c);

// c |= cl, decided by conditioning on the clause's negation and checking that
// constants propagated to false. Requires decomposable input.
bool entails_clause(const NnfCircuit& c, const Clause& cl);

bool evaluate(const NnfCircuit& c, const World& w);

struct EnumStats {
    uint64_t ops = 0;      // elementary enumeration steps
    uint64_t models = 0;
};

// All models over scope(c), each exactly once, in deterministic order
// (children order; scope variables absent from the circuit expand positive
// first). Requires smooth and decomposable input.
std::vector<World> enumerate_models(const NnfCircuit& c, EnumStats* stats = nullptr);

} // namespace wkc
