#pragma once

#include <map>
#include <set>
#include <utility>

#include "egomap/archive.hpp"

namespace egomap {

// Accounts that both follow and are followed by the ego.
struct InteractionCommunity {
    AccountId ego;
    std::set<AccountId> members;

    bool operator==(const InteractionCommunity&) const = default;
};

// Within-community follow graph. Edge (u, v) means "u follows v". The ego
// is recorded but excluded from the node set by construction.
struct DirectedFollowGraph {
    AccountId ego;
    std::set<AccountId> nodes;
    std::set<std::pair<AccountId, AccountId>> edges;

    bool operator==(const DirectedFollowGraph&) const = default;
};

enum class SymmetrizeMode { any, mutual };

// Undirected view for visualisation/clustering. Edges stored with
// first < second.
struct UndirectedFollowGraph {
    std::set<AccountId> nodes;
    std::set<std::pair<AccountId, AccountId>> edges;
    SymmetrizeMode mode = SymmetrizeMode::any;

    bool operator==(const UndirectedFollowGraph&) const = default;
};

struct NodeDegrees {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t mutual = 0;

    bool operator==(const NodeDegrees&) const = default;
};

struct DegreeSummary {
    std::map<AccountId, NodeDegrees> per_node;
    double density = 0.0;  // |edges| / (n·(n−1)); 0 for n ≤ 1
};

InteractionCommunity interaction_community(const EgoArchive& archive);

// Nodes are the community members; edge (u, v) iff v appears in u's raw
// followee list and v is itself a member. Only member out-lists are
// consulted; the ego and non-members never appear.
DirectedFollowGraph build_graph(const EgoArchive& archive);

UndirectedFollowGraph symmetrize(const DirectedFollowGraph& graph, SymmetrizeMode mode);

DegreeSummary degree_summary(const DirectedFollowGraph& graph);

SymmetrizeMode symmetrize_mode_from_token(const std::string& token);
std::string to_token(SymmetrizeMode mode);

}  // namespace egomap
