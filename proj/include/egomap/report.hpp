#pragma once

#include <string>

#include "egomap/analysis.hpp"

namespace egomap {

// Everything the statistics report carries. Assembled once, rendered as
// flat key=value text (diffable, greppable) and as JSON with the same key
// names for machine consumption.
struct StatsReport {
    RelationsSummary relations;
    CategoryShares geography_shares;
    CategoryShares affiliation_shares;
    MixingMatrix affiliation_mixing;   // valid only when has_edges
    MixingMatrix geography_mixing;
    bool has_edges = false;
    double density = 0.0;
    Clustering clustering;
    ClusterEnrichment affiliation_enrichment;
    ClusterEnrichment geography_enrichment;
    EngagementProfile profile;
};

StatsReport build_report(const EgoArchive& archive, const AttributedGraph& ag,
                         const Clustering& clustering, const ProfileThresholds& thresholds);

// Round-half-up whole percent, as quoted in report lines like
// `academic_share=95%`.
int percent_round(double share);

std::string report_to_text(const StatsReport& report);
std::string report_to_json(const StatsReport& report);

}  // namespace egomap
