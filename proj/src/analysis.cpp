#include "egomap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "egomap/errors.hpp"
#include "egomap/rng.hpp"

namespace egomap {

std::string to_token(Dimension d) {
    return d == Dimension::geography ? "geography" : "affiliation";
}

std::vector<std::string> dimension_categories(Dimension d) {
    std::vector<std::string> tokens;
    if (d == Dimension::geography) {
        for (Geography g : all_geographies()) tokens.push_back(to_token(g));
    } else {
        for (Affiliation a : all_affiliations()) tokens.push_back(to_token(a));
    }
    return tokens;
}

std::string node_category(const Coding& coding, Dimension d) {
    return d == Dimension::geography ? to_token(coding.geography) : to_token(coding.affiliation);
}

std::string to_token(ProfileLabel label) {
    switch (label) {
        case ProfileLabel::globally_academic: return "globally_academic";
        case ProfileLabel::locally_engaged: return "locally_engaged";
        case ProfileLabel::mixed: return "mixed";
    }
    return "mixed";
}

RelationsSummary relations_summary(const EgoArchive& archive) {
    RelationsSummary summary;
    summary.followers = archive.followers.size();
    summary.followees = archive.followees.size();
    summary.community = interaction_community(archive).members.size();
    return summary;
}

CategoryShares category_shares(const AttributedGraph& ag, Dimension dimension) {
    CategoryShares result;
    result.dimension = dimension;
    result.categories = dimension_categories(dimension);
    result.total = ag.graph.nodes.size();
    for (const auto& category : result.categories) {
        result.counts[category] = 0;
        result.shares[category] = 0.0;
    }
    for (const auto& node : ag.graph.nodes) {
        result.counts[node_category(ag.coding.at(node), dimension)] += 1;
    }
    if (result.total > 0) {
        for (const auto& category : result.categories) {
            result.shares[category] =
                static_cast<double>(result.counts[category]) / static_cast<double>(result.total);
        }
    }
    return result;
}

MixingMatrix mixing_matrix(const AttributedGraph& ag, Dimension dimension) {
    if (ag.graph.edges.empty()) {
        throw EmptyGraphError("mixing matrix needs at least one edge");
    }
    MixingMatrix result;
    result.dimension = dimension;
    result.categories = dimension_categories(dimension);
    std::size_t k = result.categories.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i) index[result.categories[i]] = i;

    result.m.assign(k, std::vector<double>(k, 0.0));
    double total = static_cast<double>(ag.graph.edges.size());
    for (const auto& [u, v] : ag.graph.edges) {
        std::size_t i = index.at(node_category(ag.coding.at(u), dimension));
        std::size_t j = index.at(node_category(ag.coding.at(v), dimension));
        result.m[i][j] += 1.0 / total;
    }

    double trace = 0.0;
    double agreement = 0.0;  // Σᵢ aᵢbᵢ over row/column marginals
    for (std::size_t i = 0; i < k; ++i) {
        trace += result.m[i][i];
        double row = std::accumulate(result.m[i].begin(), result.m[i].end(), 0.0);
        double col = 0.0;
        for (std::size_t j = 0; j < k; ++j) col += result.m[j][i];
        agreement += row * col;
    }
    double denominator = 1.0 - agreement;
    result.assortativity =
        std::abs(denominator) < 1e-12 ? 0.0 : (trace - agreement) / denominator;
    return result;
}

double partition_modularity(const UndirectedFollowGraph& g,
                            const std::map<AccountId, int>& assignment, double resolution) {
    double m = static_cast<double>(g.edges.size());
    if (m == 0.0) return 0.0;
    std::map<int, double> internal;  // edges fully inside a cluster
    std::map<int, double> degree;    // summed degrees per cluster
    for (const auto& node : g.nodes) degree[assignment.at(node)] += 0.0;
    for (const auto& [u, v] : g.edges) {
        int cu = assignment.at(u);
        int cv = assignment.at(v);
        degree[cu] += 1.0;
        degree[cv] += 1.0;
        if (cu == cv) internal[cu] += 1.0;
    }
    double q = 0.0;
    for (const auto& [label, d] : degree) {
        double e = internal.count(label) ? internal.at(label) : 0.0;
        double frac = d / (2.0 * m);
        q += e / m - resolution * frac * frac;
    }
    return q;
}

namespace {

// Weighted graph used during aggregation levels. Self-loop weight holds
// the full internal weight of a supernode (counted once).
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> neighbors;  // no self entries
    std::vector<double> self_loop;
    std::vector<double> degree;  // Σ neighbor weights + 2·self_loop
    double total_weight = 0.0;   // m: Σ degree / 2
};

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community,
                     int community_count) {
    LevelGraph next;
    next.neighbors.resize(community_count);
    next.self_loop.assign(community_count, 0.0);
    next.degree.assign(community_count, 0.0);
    std::vector<std::map<int, double>> weights(community_count);
    for (std::size_t u = 0; u < g.neighbors.size(); ++u) {
        int cu = community[u];
        next.self_loop[cu] += g.self_loop[u];
        for (const auto& [v, w] : g.neighbors[u]) {
            int cv = community[v];
            if (cu == cv) {
                if (static_cast<int>(u) < v) next.self_loop[cu] += w;
            } else {
                weights[cu][cv] += w;
            }
        }
    }
    for (int c = 0; c < community_count; ++c) {
        next.neighbors[c].assign(weights[c].begin(), weights[c].end());
        double d = 2.0 * next.self_loop[c];
        for (const auto& [_, w] : next.neighbors[c]) d += w;
        next.degree[c] = d;
        next.total_weight += d;
    }
    next.total_weight /= 2.0;
    return next;
}

// One pass of local moving. Returns true if any node changed community.
bool local_moving(const LevelGraph& g, std::vector<int>& community, double resolution,
                  std::mt19937_64& rng) {
    std::size_t n = g.neighbors.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    deterministic_shuffle(order, rng);

    std::vector<double> community_degree(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) community_degree[community[i]] += g.degree[i];

    double m = g.total_weight;
    bool any_move = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (int node : order) {
            int current = community[node];
            std::map<int, double> links;  // weight from node to each community
            links[current] += 0.0;
            for (const auto& [v, w] : g.neighbors[node]) {
                links[community[v]] += w;
            }
            community_degree[current] -= g.degree[node];

            int best = current;
            double best_gain = links[current] / m - resolution * g.degree[node] *
                                                        community_degree[current] /
                                                        (2.0 * m * m);
            for (const auto& [candidate, weight] : links) {
                if (candidate == current) continue;
                double gain = weight / m - resolution * g.degree[node] *
                                               community_degree[candidate] / (2.0 * m * m);
                // Strict improvement required; equal gains keep the smaller
                // label, so the outcome is independent of map iteration order.
                if (gain > best_gain + 1e-12 ||
                    (std::abs(gain - best_gain) <= 1e-12 && candidate < best)) {
                    best = candidate;
                    best_gain = gain;
                }
            }
            community_degree[best] += g.degree[node];
            if (best != current) {
                community[node] = best;
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Renumber communities to 0..k-1 in order of their smallest member index.
int compact_labels(std::vector<int>& community) {
    std::map<int, int> first_seen;
    int next = 0;
    for (int& label : community) {
        auto [it, inserted] = first_seen.emplace(label, next);
        if (inserted) ++next;
        label = it->second;
    }
    return next;
}

}  // namespace

Clustering cluster(const UndirectedFollowGraph& g, double resolution, std::uint64_t seed) {
    if (resolution <= 0.0) {
        throw InvalidSpecError("clustering resolution must be positive");
    }
    Clustering result;
    result.resolution = resolution;
    result.seed = seed;

    std::vector<AccountId> nodes(g.nodes.begin(), g.nodes.end());
    std::size_t n = nodes.size();
    if (n == 0) return result;

    std::map<AccountId, int> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = static_cast<int>(i);

    // Edgeless graphs: all singletons, modularity 0 by convention.
    if (g.edges.empty()) {
        for (std::size_t i = 0; i < n; ++i) result.assignment[nodes[i]] = static_cast<int>(i);
        result.modularity = 0.0;
        return result;
    }

    LevelGraph level;
    level.neighbors.resize(n);
    level.self_loop.assign(n, 0.0);
    level.degree.assign(n, 0.0);
    for (const auto& [u, v] : g.edges) {
        int iu = index.at(u);
        int iv = index.at(v);
        level.neighbors[iu].emplace_back(iv, 1.0);
        level.neighbors[iv].emplace_back(iu, 1.0);
        level.degree[iu] += 1.0;
        level.degree[iv] += 1.0;
    }
    for (auto& adj : level.neighbors) std::sort(adj.begin(), adj.end());
    level.total_weight = static_cast<double>(g.edges.size());

    std::mt19937_64 rng(seed);
    std::vector<int> membership(n);  // original node -> current community
    std::iota(membership.begin(), membership.end(), 0);

    while (true) {
        std::vector<int> community(level.neighbors.size());
        std::iota(community.begin(), community.end(), 0);
        bool improved = local_moving(level, community, resolution, rng);
        int count = compact_labels(community);
        for (std::size_t i = 0; i < n; ++i) {
            membership[i] = community[membership[i]];
        }
        if (!improved || count == static_cast<int>(level.neighbors.size())) break;
        level = aggregate(level, community, count);
    }

    compact_labels(membership);
    for (std::size_t i = 0; i < n; ++i) result.assignment[nodes[i]] = membership[i];
    result.modularity = partition_modularity(g, result.assignment, resolution);

    // Floor: one cluster over all non-isolated nodes, singletons for
    // isolated ones. Matches the no-partition baseline (isolated nodes
    // contribute nothing to modularity).
    std::set<AccountId> touched;
    for (const auto& [u, v] : g.edges) {
        touched.insert(u);
        touched.insert(v);
    }
    std::map<AccountId, int> floor_assignment;
    int next_label = 1;
    for (const auto& node : nodes) {
        floor_assignment[node] = touched.count(node) ? 0 : next_label++;
    }
    double floor_modularity = partition_modularity(g, floor_assignment, resolution);
    if (result.modularity < floor_modularity) {
        result.assignment = std::move(floor_assignment);
        result.modularity = floor_modularity;
    }
    return result;
}

ClusterEnrichment cluster_enrichment(const Clustering& c, const AttributedGraph& ag,
                                     Dimension dimension) {
    ClusterEnrichment result;
    result.dimension = dimension;
    auto categories = dimension_categories(dimension);

    std::map<std::string, std::size_t> overall;
    for (const auto& category : categories) overall[category] = 0;
    for (const auto& node : ag.graph.nodes) {
        overall[node_category(ag.coding.at(node), dimension)] += 1;
    }
    std::size_t total = ag.graph.nodes.size();

    std::map<int, std::map<std::string, std::size_t>> counts;
    for (const auto& node : ag.graph.nodes) {
        int label = c.assignment.at(node);
        result.cluster_sizes[label] += 1;
        counts[label][node_category(ag.coding.at(node), dimension)] += 1;
    }

    for (const auto& [label, size] : result.cluster_sizes) {
        for (const auto& category : categories) {
            CategoryEnrichment entry;
            auto it = counts[label].find(category);
            entry.count = it == counts[label].end() ? 0 : it->second;
            entry.share = size > 0 ? static_cast<double>(entry.count) / size : 0.0;
            if (overall[category] > 0 && total > 0) {
                double graph_share = static_cast<double>(overall[category]) / total;
                entry.ratio = entry.share / graph_share;
            }
            result.clusters[label][category] = entry;
        }
    }
    return result;
}

EngagementProfile classify_profile(const AttributedGraph& ag, const Clustering& c,
                                   const ProfileThresholds& thresholds) {
    EngagementProfile profile;
    std::size_t total = ag.graph.nodes.size();
    if (total == 0) return profile;  // mixed: nothing to classify

    std::size_t academic = 0, non_academic = 0, local = 0;
    for (const auto& node : ag.graph.nodes) {
        const Coding& coding = ag.coding.at(node);
        switch (coding.affiliation) {
            case Affiliation::academic: academic += 1; break;
            case Affiliation::unknown: break;
            default: non_academic += 1;
        }
        if (coding.geography == Geography::local) local += 1;
    }
    profile.evidence.known_affiliations = academic + non_academic;
    profile.evidence.non_academic_share = static_cast<double>(non_academic) / total;
    profile.evidence.local_share = static_cast<double>(local) / total;

    double overall_non_academic = profile.evidence.non_academic_share;
    if (overall_non_academic > 0.0) {
        std::map<int, std::size_t> cluster_sizes;
        std::map<int, std::size_t> cluster_non_academic;
        for (const auto& node : ag.graph.nodes) {
            int label = c.assignment.at(node);
            cluster_sizes[label] += 1;
            Affiliation a = ag.coding.at(node).affiliation;
            if (a != Affiliation::academic && a != Affiliation::unknown) {
                cluster_non_academic[label] += 1;
            }
        }
        double best = 0.0;
        for (const auto& [label, size] : cluster_sizes) {
            double share = static_cast<double>(cluster_non_academic[label]) / size;
            best = std::max(best, share / overall_non_academic);
        }
        profile.evidence.max_cluster_non_academic_enrichment = best;
    }

    // Insufficient evidence: nobody carries a known affiliation.
    if (profile.evidence.known_affiliations == 0) {
        profile.label = ProfileLabel::mixed;
        return profile;
    }
    if (profile.evidence.non_academic_share < thresholds.globally_academic_max_non_academic &&
        profile.evidence.local_share < thresholds.globally_academic_max_local) {
        profile.label = ProfileLabel::globally_academic;
    } else if (profile.evidence.non_academic_share >=
                   thresholds.locally_engaged_min_non_academic &&
               profile.evidence.max_cluster_non_academic_enrichment &&
               *profile.evidence.max_cluster_non_academic_enrichment >=
                   thresholds.locally_engaged_min_enrichment) {
        profile.label = ProfileLabel::locally_engaged;
    } else {
        profile.label = ProfileLabel::mixed;
    }
    return profile;
}

}  // namespace egomap
