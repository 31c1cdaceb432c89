#include "egomap/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "egomap/errors.hpp"

namespace egomap {

using nlohmann::json;

StatsReport build_report(const EgoArchive& archive, const AttributedGraph& ag,
                         const Clustering& clustering, const ProfileThresholds& thresholds) {
    StatsReport report;
    report.relations = relations_summary(archive);
    report.geography_shares = category_shares(ag, Dimension::geography);
    report.affiliation_shares = category_shares(ag, Dimension::affiliation);
    report.has_edges = !ag.graph.edges.empty();
    if (report.has_edges) {
        report.affiliation_mixing = mixing_matrix(ag, Dimension::affiliation);
        report.geography_mixing = mixing_matrix(ag, Dimension::geography);
    }
    report.density = degree_summary(ag.graph).density;
    report.clustering = clustering;
    report.affiliation_enrichment =
        cluster_enrichment(clustering, ag, Dimension::affiliation);
    report.geography_enrichment = cluster_enrichment(clustering, ag, Dimension::geography);
    report.profile = classify_profile(ag, clustering, thresholds);
    return report;
}

int percent_round(double share) {
    return static_cast<int>(std::floor(share * 100.0 + 0.5));
}

namespace {

std::string number(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

void shares_lines(std::string& out, const CategoryShares& shares) {
    std::string prefix = "shares." + to_token(shares.dimension) + ".";
    for (const auto& category : shares.categories) {
        out += prefix + category + ".count=" + std::to_string(shares.counts.at(category)) +
               "\n";
        out += prefix + category + ".share=" + number(shares.shares.at(category)) + "\n";
    }
    out += prefix + "total=" + std::to_string(shares.total) + "\n";
}

void mixing_lines(std::string& out, const MixingMatrix& mixing) {
    std::string prefix = "mixing." + to_token(mixing.dimension) + ".";
    for (std::size_t i = 0; i < mixing.categories.size(); ++i) {
        for (std::size_t j = 0; j < mixing.categories.size(); ++j) {
            if (mixing.m[i][j] == 0.0) continue;  // sparse print, zeros implied
            out += prefix + mixing.categories[i] + "." + mixing.categories[j] + "=" +
                   number(mixing.m[i][j]) + "\n";
        }
    }
    out += prefix + "assortativity=" + number(mixing.assortativity) + "\n";
}

void enrichment_lines(std::string& out, const ClusterEnrichment& enrichment) {
    std::string prefix = "enrichment." + to_token(enrichment.dimension) + ".cluster_";
    for (const auto& [label, categories] : enrichment.clusters) {
        for (const auto& [category, entry] : categories) {
            if (entry.count == 0) continue;
            std::string key = prefix + std::to_string(label) + "." + category;
            out += key + ".count=" + std::to_string(entry.count) + "\n";
            out += key + ".share=" + number(entry.share) + "\n";
            if (entry.ratio) {
                out += key + ".ratio=" + number(*entry.ratio) + "\n";
            }
        }
    }
}

}  // namespace

std::string report_to_text(const StatsReport& report) {
    std::string out;
    out += "relations.followers=" + std::to_string(report.relations.followers) + "\n";
    out += "relations.followees=" + std::to_string(report.relations.followees) + "\n";
    out += "relations.community=" + std::to_string(report.relations.community) + "\n";
    out += "graph.density=" + number(report.density) + "\n";

    shares_lines(out, report.geography_shares);
    shares_lines(out, report.affiliation_shares);

    // Headline percentages, rounded half-up to whole percent.
    double academic = report.affiliation_shares.total
                          ? report.affiliation_shares.shares.at("academic")
                          : 0.0;
    out += "academic_share=" + std::to_string(percent_round(academic)) + "%\n";
    out += "non_academic_share=" +
           std::to_string(percent_round(report.profile.evidence.non_academic_share)) + "%\n";
    out += "local_share=" + std::to_string(percent_round(report.profile.evidence.local_share)) +
           "%\n";

    if (report.has_edges) {
        mixing_lines(out, report.geography_mixing);
        mixing_lines(out, report.affiliation_mixing);
    }

    std::map<int, std::size_t> sizes = report.affiliation_enrichment.cluster_sizes;
    out += "clusters.count=" + std::to_string(sizes.size()) + "\n";
    out += "clusters.modularity=" + number(report.clustering.modularity) + "\n";
    out += "clusters.resolution=" + number(report.clustering.resolution) + "\n";
    out += "clusters.seed=" + std::to_string(report.clustering.seed) + "\n";
    for (const auto& [label, size] : sizes) {
        out += "clusters.cluster_" + std::to_string(label) + ".size=" + std::to_string(size) +
               "\n";
    }
    enrichment_lines(out, report.geography_enrichment);
    enrichment_lines(out, report.affiliation_enrichment);

    out += "profile=" + to_token(report.profile.label) + "\n";
    out += "profile.non_academic_share=" + number(report.profile.evidence.non_academic_share) +
           "\n";
    out += "profile.local_share=" + number(report.profile.evidence.local_share) + "\n";
    if (report.profile.evidence.max_cluster_non_academic_enrichment) {
        out += "profile.max_cluster_non_academic_enrichment=" +
               number(*report.profile.evidence.max_cluster_non_academic_enrichment) + "\n";
    }
    out += "profile.known_affiliations=" +
           std::to_string(report.profile.evidence.known_affiliations) + "\n";
    return out;
}

std::string report_to_json(const StatsReport& report) {
    json j;
    j["relations"] = {{"followers", report.relations.followers},
                      {"followees", report.relations.followees},
                      {"community", report.relations.community}};
    j["graph"] = {{"density", report.density}};

    for (const CategoryShares* shares :
         {&report.geography_shares, &report.affiliation_shares}) {
        json block;
        for (const auto& category : shares->categories) {
            block[category] = {{"count", shares->counts.at(category)},
                               {"share", shares->shares.at(category)}};
        }
        block["total"] = shares->total;
        j["shares"][to_token(shares->dimension)] = std::move(block);
    }

    j["academic_share_percent"] =
        percent_round(report.affiliation_shares.total
                          ? report.affiliation_shares.shares.at("academic")
                          : 0.0);
    j["non_academic_share_percent"] =
        percent_round(report.profile.evidence.non_academic_share);
    j["local_share_percent"] = percent_round(report.profile.evidence.local_share);

    if (report.has_edges) {
        for (const MixingMatrix* mixing :
             {&report.geography_mixing, &report.affiliation_mixing}) {
            json block;
            block["categories"] = mixing->categories;
            block["matrix"] = mixing->m;
            block["assortativity"] = mixing->assortativity;
            j["mixing"][to_token(mixing->dimension)] = std::move(block);
        }
    }

    json clusters;
    clusters["count"] = report.affiliation_enrichment.cluster_sizes.size();
    clusters["modularity"] = report.clustering.modularity;
    clusters["resolution"] = report.clustering.resolution;
    clusters["seed"] = report.clustering.seed;
    for (const auto& [label, size] : report.affiliation_enrichment.cluster_sizes) {
        clusters["sizes"]["cluster_" + std::to_string(label)] = size;
    }
    j["clusters"] = std::move(clusters);

    for (const ClusterEnrichment* enrichment :
         {&report.geography_enrichment, &report.affiliation_enrichment}) {
        json block;
        for (const auto& [label, categories] : enrichment->clusters) {
            json cluster_block;
            for (const auto& [category, entry] : categories) {
                if (entry.count == 0) continue;
                json e = {{"count", entry.count}, {"share", entry.share}};
                if (entry.ratio) e["ratio"] = *entry.ratio;
                cluster_block[category] = std::move(e);
            }
            block["cluster_" + std::to_string(label)] = std::move(cluster_block);
        }
        j["enrichment"][to_token(enrichment->dimension)] = std::move(block);
    }

    json profile;
    profile["label"] = to_token(report.profile.label);
    profile["non_academic_share"] = report.profile.evidence.non_academic_share;
    profile["local_share"] = report.profile.evidence.local_share;
    if (report.profile.evidence.max_cluster_non_academic_enrichment) {
        profile["max_cluster_non_academic_enrichment"] =
            *report.profile.evidence.max_cluster_non_academic_enrichment;
    }
    profile["known_affiliations"] = report.profile.evidence.known_affiliations;
    j["profile"] = std::move(profile);

    return j.dump(2) + "\n";
}

}  // namespace egomap
