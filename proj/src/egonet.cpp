#include "egomap/egonet.hpp"

#include <algorithm>

#include "egomap/errors.hpp"

namespace egomap {

InteractionCommunity interaction_community(const EgoArchive& archive) {
    InteractionCommunity community;
    community.ego = archive.ego.id;
    std::set_intersection(archive.followers.begin(), archive.followers.end(),
                          archive.followees.begin(), archive.followees.end(),
                          std::inserter(community.members, community.members.end()));
    return community;
}

DirectedFollowGraph build_graph(const EgoArchive& archive) {
    DirectedFollowGraph graph;
    graph.ego = archive.ego.id;
    graph.nodes = interaction_community(archive).members;
    for (const auto& [member, followees] : archive.member_followees) {
        for (const auto& target : followees) {
            if (target != member && graph.nodes.count(target)) {
                graph.edges.emplace(member, target);
            }
        }
    }
    return graph;
}

UndirectedFollowGraph symmetrize(const DirectedFollowGraph& graph, SymmetrizeMode mode) {
    UndirectedFollowGraph result;
    result.nodes = graph.nodes;
    result.mode = mode;
    for (const auto& [u, v] : graph.edges) {
        auto key = std::minmax(u, v);
        if (mode == SymmetrizeMode::any || graph.edges.count({v, u})) {
            result.edges.emplace(key.first, key.second);
        }
    }
    return result;
}

DegreeSummary degree_summary(const DirectedFollowGraph& graph) {
    DegreeSummary summary;
    for (const auto& node : graph.nodes) {
        summary.per_node[node] = NodeDegrees{};
    }
    for (const auto& [u, v] : graph.edges) {
        summary.per_node[u].out += 1;
        summary.per_node[v].in += 1;
        if (graph.edges.count({v, u})) {
            summary.per_node[u].mutual += 1;
        }
    }
    std::size_t n = graph.nodes.size();
    summary.density = n >= 2 ? static_cast<double>(graph.edges.size()) /
                                   (static_cast<double>(n) * static_cast<double>(n - 1))
                             : 0.0;
    return summary;
}

SymmetrizeMode symmetrize_mode_from_token(const std::string& token) {
    if (token == "any") return SymmetrizeMode::any;
    if (token == "mutual") return SymmetrizeMode::mutual;
    throw InvalidSpecError("unknown symmetrization mode '" + token + "'");
}

std::string to_token(SymmetrizeMode mode) {
    return mode == SymmetrizeMode::any ? "any" : "mutual";
}

}  // namespace egomap
