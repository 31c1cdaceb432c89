#include "egomap/pipeline.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egomap/errors.hpp"
#include "egomap/layout.hpp"

namespace egomap {

using nlohmann::json;

ColorBy color_by_from_token(const std::string& token) {
    if (token == "geography") return ColorBy::geography;
    if (token == "affiliation") return ColorBy::affiliation;
    if (token == "cluster") return ColorBy::cluster;
    throw InvalidSpecError("unknown encoding dimension '" + token + "'");
}

std::string to_token(ColorBy color_by) {
    switch (color_by) {
        case ColorBy::geography: return "geography";
        case ColorBy::affiliation: return "affiliation";
        case ColorBy::cluster: return "cluster";
    }
    return "affiliation";
}

RunConfig run_config_from_string(const std::string& text,
                                 const std::filesystem::path& base_dir) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw InvalidSpecError("run config is not a JSON object");
    }
    RunConfig config;
    config.home_country = j.value("home_country", std::string{});

    auto resolve_path = [&](const std::string& value) {
        std::filesystem::path p = value;
        if (!base_dir.empty() && p.is_relative()) return base_dir / p;
        return p;
    };
    if (j.contains("archive")) config.archive_path = resolve_path(j["archive"]);
    if (j.contains("coding_sheet")) config.coding_sheet_path = resolve_path(j["coding_sheet"]);
    if (j.contains("output_dir")) config.output_dir = resolve_path(j["output_dir"]);
    if (j.contains("symmetrization")) {
        config.symmetrization = symmetrize_mode_from_token(j["symmetrization"]);
    }
    if (j.contains("clustering")) {
        const auto& c = j["clustering"];
        config.clustering_resolution = c.value("resolution", 1.0);
        config.clustering_seed = c.value("seed", std::uint64_t{1});
    }
    if (j.contains("layout")) {
        const auto& l = j["layout"];
        config.layout_seed = l.value("seed", std::uint64_t{1});
        config.layout_iterations = l.value("iterations", std::size_t{200});
    }
    if (j.contains("map")) {
        const auto& m = j["map"];
        if (m.contains("color_by")) {
            config.encoding.color_by = color_by_from_token(m["color_by"]);
        }
        if (m.contains("shape_by")) {
            if (m["shape_by"].is_null() || m["shape_by"] == "none") {
                config.encoding.shape_by.reset();
            } else {
                config.encoding.shape_by = color_by_from_token(m["shape_by"]);
            }
        }
        config.encoding.degree_scaled_size = m.value("degree_scaled_size", false);
    }
    if (j.contains("thresholds")) {
        const auto& t = j["thresholds"];
        config.thresholds.globally_academic_max_non_academic =
            t.value("globally_academic_max_non_academic",
                    config.thresholds.globally_academic_max_non_academic);
        config.thresholds.globally_academic_max_local =
            t.value("globally_academic_max_local",
                    config.thresholds.globally_academic_max_local);
        config.thresholds.locally_engaged_min_non_academic =
            t.value("locally_engaged_min_non_academic",
                    config.thresholds.locally_engaged_min_non_academic);
        config.thresholds.locally_engaged_min_enrichment =
            t.value("locally_engaged_min_enrichment",
                    config.thresholds.locally_engaged_min_enrichment);
    }
    if (j.contains("fetch")) {
        const auto& f = j["fetch"];
        config.budget.max_requests_per_window =
            f.value("max_requests_per_window", config.budget.max_requests_per_window);
        config.budget.window_seconds = f.value("window_seconds", config.budget.window_seconds);
        config.budget.max_pages_per_list =
            f.value("max_pages_per_list", config.budget.max_pages_per_list);
    }
    return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return run_config_from_string(buffer.str(), path.parent_path());
}

void validate_run_config(const RunConfig& config, bool needs_output_dir) {
    if (config.archive_path.empty()) {
        throw InvalidSpecError("run config is missing 'archive'");
    }
    if (config.coding_sheet_path.empty()) {
        throw InvalidSpecError("run config is missing 'coding_sheet'");
    }
    if (needs_output_dir && config.output_dir.empty()) {
        throw InvalidSpecError("run config is missing 'output_dir'");
    }
}

PipelineResult run_pipeline(const RunConfig& config) {
    validate_run_config(config, /*needs_output_dir=*/true);
    EgoArchive archive = load_archive(config.archive_path);
    InteractionCommunity community = interaction_community(archive);
    CodingMap coding = load_coding_sheet(config.coding_sheet_path, community);
    DirectedFollowGraph graph = build_graph(archive);
    AttributedGraph ag = annotate(graph, coding, config.home_country);
    UndirectedFollowGraph undirected = symmetrize(graph, config.symmetrization);
    Clustering clustering =
        cluster(undirected, config.clustering_resolution, config.clustering_seed);

    PipelineResult result;
    result.report = build_report(archive, ag, clustering, config.thresholds);
    LayoutResult positions = layout(undirected, config.layout_seed, config.layout_iterations);

    // Assemble every artifact before touching the filesystem.
    std::vector<std::pair<std::string, std::string>> outputs;
    outputs.emplace_back("report.txt", report_to_text(result.report));
    outputs.emplace_back("report.json", report_to_json(result.report));
    outputs.emplace_back("network.svg", render_svg(positions, ag, clustering, config.encoding));
    outputs.emplace_back("network.graphml",
                         export_graph(ag, clustering, positions, ExportFormat::graphml));
    outputs.emplace_back("network.dot",
                         export_graph(ag, clustering, positions, ExportFormat::dot));
    outputs.emplace_back("network.json",
                         export_graph(ag, clustering, positions, ExportFormat::json));

    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + config.output_dir.string() + "'");
    }
    try {
        for (const auto& [name, content] : outputs) {
            std::filesystem::path path = config.output_dir / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
            out << content;
            if (!out.good()) throw IoError("short write to '" + path.string() + "'");
            result.written.push_back(path);
        }
    } catch (...) {
        // A half-written tree is worse than none.
        for (const auto& path : result.written) {
            std::error_code ignore;
            std::filesystem::remove(path, ignore);
        }
        throw;
    }
    return result;
}

}  // namespace egomap
