#pragma once

// Independent oracles for the test suites: brute-force enumerations and
// naive recomputations, deliberately ignorant of the library's algorithms.

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "egomap/analysis.hpp"
#include "egomap/archive.hpp"
#include "egomap/egonet.hpp"
#include "egomap/rng.hpp"

namespace oracles {

using namespace egomap;

// Double loop over the two lists: an account is a member iff it appears in
// both.
inline std::set<AccountId> brute_force_community(const EgoArchive& archive) {
    std::set<AccountId> members;
    for (const auto& follower : archive.followers) {
        for (const auto& followee : archive.followees) {
            if (follower == followee) members.insert(follower);
        }
    }
    return members;
}

// Exhaustive O(n²) pair scan over the member list.
inline std::set<std::pair<AccountId, AccountId>> brute_force_edges(const EgoArchive& archive) {
    auto members = brute_force_community(archive);
    std::set<std::pair<AccountId, AccountId>> edges;
    for (const auto& u : members) {
        for (const auto& v : members) {
            if (u == v) continue;
            auto it = archive.member_followees.find(u);
            if (it != archive.member_followees.end() && it->second.count(v)) {
                edges.emplace(u, v);
            }
        }
    }
    return edges;
}

// Direct definition-level modularity: sum over all node pairs.
inline double naive_modularity(const UndirectedFollowGraph& g,
                               const std::map<AccountId, int>& assignment,
                               double resolution) {
    std::vector<AccountId> nodes(g.nodes.begin(), g.nodes.end());
    double m = static_cast<double>(g.edges.size());
    if (m == 0.0) return 0.0;
    std::map<AccountId, double> degree;
    for (const auto& node : nodes) degree[node] = 0.0;
    for (const auto& [u, v] : g.edges) {
        degree[u] += 1.0;
        degree[v] += 1.0;
    }
    double q = 0.0;
    for (const auto& u : nodes) {
        for (const auto& v : nodes) {
            if (assignment.at(u) != assignment.at(v)) continue;
            double adjacency = 0.0;
            if (u != v) {
                auto key = std::minmax(u, v);
                if (g.edges.count({key.first, key.second})) adjacency = 1.0;
            }
            q += adjacency - resolution * degree[u] * degree[v] / (2.0 * m);
        }
    }
    return q / (2.0 * m);
}

// Best many-to-one mapping of recovered clusters onto planted poles:
// each cluster votes for its majority pole.
inline double pole_agreement(const std::map<AccountId, int>& assignment,
                             const std::map<AccountId, int>& poles) {
    std::map<int, std::map<int, std::size_t>> votes;  // cluster -> pole -> count
    for (const auto& [id, label] : assignment) {
        votes[label][poles.at(id)] += 1;
    }
    std::size_t matched = 0;
    for (const auto& [label, counts] : votes) {
        std::size_t best = 0;
        for (const auto& [_, count] : counts) best = std::max(best, count);
        matched += best;
    }
    return assignment.empty() ? 1.0
                              : static_cast<double>(matched) / assignment.size();
}

// Random valid archive for property tests: account universe of size n,
// follower/followee membership drawn independently, member followee lists
// random subsets.
inline EgoArchive random_archive(std::mt19937_64& rng, std::size_t universe,
                                 double follow_prob = 0.4, double edge_prob = 0.3) {
    EgoArchive archive;
    archive.ego.id = "ego";
    archive.ego.handle = "ego";
    archive.fetched_at = 1463045400;

    std::vector<AccountId> accounts;
    for (std::size_t i = 0; i < universe; ++i) {
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), "a%04zu", i);
        accounts.push_back(buffer);
    }
    for (const auto& id : accounts) {
        if (uniform01(rng) < follow_prob) archive.followers.insert(id);
        if (uniform01(rng) < follow_prob) archive.followees.insert(id);
    }
    std::set<AccountId> members;
    std::set_intersection(archive.followers.begin(), archive.followers.end(),
                          archive.followees.begin(), archive.followees.end(),
                          std::inserter(members, members.end()));
    for (const auto& member : members) {
        auto& list = archive.member_followees[member];
        for (const auto& other : accounts) {
            if (other != member && uniform01(rng) < edge_prob) list.insert(other);
        }
        list.insert(archive.ego.id);
    }
    // profile entries for exactly the referenced accounts (fetch-canonical)
    auto ensure = [&](const AccountId& id) {
        if (id != archive.ego.id) archive.profiles[id].id = id;
    };
    for (const auto& id : archive.followers) ensure(id);
    for (const auto& id : archive.followees) ensure(id);
    for (const auto& [_, list] : archive.member_followees) {
        for (const auto& id : list) ensure(id);
    }
    return archive;
}

// Random undirected graph over k nodes.
inline UndirectedFollowGraph random_undirected(std::mt19937_64& rng, std::size_t k,
                                               double edge_prob = 0.2) {
    UndirectedFollowGraph g;
    std::vector<AccountId> nodes;
    for (std::size_t i = 0; i < k; ++i) {
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), "n%03zu", i);
        nodes.push_back(buffer);
        g.nodes.insert(buffer);
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (uniform01(rng) < edge_prob) g.edges.emplace(nodes[i], nodes[j]);
        }
    }
    return g;
}

}  // namespace oracles
