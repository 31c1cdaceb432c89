#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egomap/attributes.hpp"
#include "egomap/egonet.hpp"

namespace egomap {

struct RelationsSummary {
    std::size_t followers = 0;
    std::size_t followees = 0;
    std::size_t community = 0;

    bool operator==(const RelationsSummary&) const = default;
};

enum class Dimension { geography, affiliation };

std::string to_token(Dimension d);

// Canonical category token order for a dimension.
std::vector<std::string> dimension_categories(Dimension d);
std::string node_category(const Coding& coding, Dimension d);

// Node counts and fractions per category, unknown included. Shares sum to
// 1 when the graph is non-empty.
struct CategoryShares {
    Dimension dimension = Dimension::affiliation;
    std::vector<std::string> categories;
    std::map<std::string, std::size_t> counts;
    std::map<std::string, double> shares;
    std::size_t total = 0;
};

// m[i][j] = fraction of directed edges from a node in category i to a node
// in category j, indexed by the dimension's full category list.
struct MixingMatrix {
    Dimension dimension = Dimension::affiliation;
    std::vector<std::string> categories;
    std::vector<std::vector<double>> m;
    double assortativity = 0.0;
};

struct Clustering {
    std::map<AccountId, int> assignment;  // every node, labels 0..k-1
    double modularity = 0.0;
    double resolution = 1.0;
    std::uint64_t seed = 0;
};

struct CategoryEnrichment {
    std::size_t count = 0;
    double share = 0.0;                 // within-cluster fraction
    std::optional<double> ratio;        // share / graph-wide share; absent when
                                        // the category is empty graph-wide
};

struct ClusterEnrichment {
    Dimension dimension = Dimension::affiliation;
    std::map<int, std::size_t> cluster_sizes;
    std::map<int, std::map<std::string, CategoryEnrichment>> clusters;
};

// Thresholds operationalising the engagement-profile contrast. These are
// artifact constants, not published values; they live in configuration.
struct ProfileThresholds {
    double globally_academic_max_non_academic = 0.15;
    double globally_academic_max_local = 0.50;
    double locally_engaged_min_non_academic = 0.30;
    double locally_engaged_min_enrichment = 1.5;
};

enum class ProfileLabel { globally_academic, locally_engaged, mixed };

std::string to_token(ProfileLabel label);

struct ProfileEvidence {
    double non_academic_share = 0.0;
    double local_share = 0.0;
    // Best cluster-level over-representation of non-academic nodes.
    std::optional<double> max_cluster_non_academic_enrichment;
    std::size_t known_affiliations = 0;
};

struct EngagementProfile {
    ProfileLabel label = ProfileLabel::mixed;
    ProfileEvidence evidence;
};

RelationsSummary relations_summary(const EgoArchive& archive);

CategoryShares category_shares(const AttributedGraph& ag, Dimension dimension);

// Throws EmptyGraphError when the graph has no edges. Single-category
// graphs return assortativity 0 (degenerate marginals).
MixingMatrix mixing_matrix(const AttributedGraph& ag, Dimension dimension);

// Greedy modularity optimization (multi-level local moving) with the given
// resolution. Deterministic in (graph, resolution, seed): node visit order
// is seeded, ties break towards the community with the smallest canonical
// label. Never returns a partition with lower modularity than the
// no-partition baseline; isolated nodes stay singletons.
Clustering cluster(const UndirectedFollowGraph& g, double resolution, std::uint64_t seed);

// Modularity of an arbitrary assignment at the given resolution; the
// convention for edgeless graphs is 0.
double partition_modularity(const UndirectedFollowGraph& g,
                            const std::map<AccountId, int>& assignment, double resolution);

ClusterEnrichment cluster_enrichment(const Clustering& c, const AttributedGraph& ag,
                                     Dimension dimension);

EngagementProfile classify_profile(const AttributedGraph& ag, const Clustering& c,
                                   const ProfileThresholds& thresholds = {});

}  // namespace egomap
