#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "egomap/errors.hpp"
#include "egomap/http_client.hpp"
#include "egomap/pipeline.hpp"
#include "egomap/synth.hpp"

namespace {

using namespace egomap;

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out.good()) throw IoError("short write to '" + path.string() + "'");
}

struct FetchOptions {
    std::string handle;
    std::string endpoints;
    std::string fixture;
    std::string out;
    std::string resume;
    std::string fetched_at;
    FetchBudget budget;
};

int cmd_fetch(const FetchOptions& options) {
    std::unique_ptr<ListProvider> client;
    if (!options.fixture.empty()) {
        client = std::make_unique<FixtureListProvider>(load_archive(options.fixture));
    } else if (!options.endpoints.empty()) {
        client = std::make_unique<HttpListProvider>(load_endpoint_config(options.endpoints));
    } else {
        std::cerr << "fetch needs --endpoints or --fixture\n";
        return exit_usage;
    }

    FetchOutcome outcome;
    if (!options.resume.empty()) {
        outcome = resume_fetch(load_fetch_state(options.resume), *client, options.budget);
    } else {
        std::int64_t started_at = options.fetched_at.empty()
                                      ? static_cast<std::int64_t>(std::time(nullptr))
                                      : parse_utc(options.fetched_at);
        outcome = fetch_ego(options.handle, *client, options.budget, started_at);
    }

    if (!outcome.complete()) {
        std::filesystem::path resume_path = options.out + ".resume.json";
        save_fetch_state(*outcome.incomplete, resume_path);
        std::cerr << "budget exhausted after " << outcome.requests_used
                  << " requests; resume with --resume " << resume_path.string() << "\n";
        return exit_budget_exhausted;
    }

    save_archive(*outcome.archive, options.out);
    RelationsSummary summary = relations_summary(*outcome.archive);
    std::cout << "followers=" << summary.followers << " followees=" << summary.followees
              << " community=" << summary.community << "\n";
    return exit_ok;
}

int cmd_code(const std::string& archive_path, const std::string& out, bool merge) {
    EgoArchive archive = load_archive(archive_path);
    InteractionCommunity community = interaction_community(archive);
    CodingSheet sheet;
    if (merge && std::filesystem::exists(out)) {
        sheet = merge_coding_template(load_coding_sheet_file(out), community, archive);
    } else {
        sheet = generate_coding_template(community, archive);
    }
    save_coding_sheet(sheet, out);
    std::cout << "rows=" << sheet.rows.size() << " sheet=" << out << "\n";
    return exit_ok;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    SyntheticProfileSpec spec = load_synth_spec(spec_path);
    SynthResult result = synth_generate(spec);
    std::filesystem::create_directories(out_dir);
    std::filesystem::path dir = out_dir;
    save_archive(result.archive, dir / "archive.json");
    write_file(dir / "ground_truth.json", ground_truth_to_string(result.truth));
    save_coding_sheet(coding_sheet_from_truth(result.truth, result.archive),
                      dir / "coding.csv");
    std::cout << "members=" << result.truth.size() << " out=" << out_dir << "\n";
    return exit_ok;
}

StatsReport compute_report(const RunConfig& config) {
    validate_run_config(config, /*needs_output_dir=*/false);
    EgoArchive archive = load_archive(config.archive_path);
    InteractionCommunity community = interaction_community(archive);
    CodingMap coding = load_coding_sheet(config.coding_sheet_path, community);
    DirectedFollowGraph graph = build_graph(archive);
    AttributedGraph ag = annotate(graph, coding, config.home_country);
    Clustering clustering = cluster(symmetrize(graph, config.symmetrization),
                                    config.clustering_resolution, config.clustering_seed);
    return build_report(archive, ag, clustering, config.thresholds);
}

int cmd_stats(const RunConfig& config, const std::string& out) {
    std::string text = report_to_text(compute_report(config));
    if (out.empty()) {
        std::cout << text;
    } else {
        write_file(out, text);
    }
    return exit_ok;
}

int cmd_map(const RunConfig& config, const std::string& out) {
    validate_run_config(config, /*needs_output_dir=*/false);
    EgoArchive archive = load_archive(config.archive_path);
    InteractionCommunity community = interaction_community(archive);
    CodingMap coding = load_coding_sheet(config.coding_sheet_path, community);
    DirectedFollowGraph graph = build_graph(archive);
    AttributedGraph ag = annotate(graph, coding, config.home_country);
    UndirectedFollowGraph undirected = symmetrize(graph, config.symmetrization);
    Clustering clustering =
        cluster(undirected, config.clustering_resolution, config.clustering_seed);
    LayoutResult positions = layout(undirected, config.layout_seed, config.layout_iterations);
    write_file(out, render_svg(positions, ag, clustering, config.encoding));
    std::cout << "map=" << out << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reciprocal-interaction community mapping pipeline"};
    app.require_subcommand(1);

    // ---- fetch
    FetchOptions fetch_options;
    auto* fetch = app.add_subcommand("fetch", "Fetch an ego archive from a list provider");
    fetch->add_option("--handle", fetch_options.handle, "Account handle to fetch");
    fetch->add_option("--endpoints", fetch_options.endpoints,
                      "Endpoint description file for the HTTP client");
    fetch->add_option("--fixture", fetch_options.fixture,
                      "Replay lists from an existing archive file");
    fetch->add_option("--out", fetch_options.out, "Archive output path")->required();
    fetch->add_option("--resume", fetch_options.resume, "Resume state file");
    fetch->add_option("--fetched-at", fetch_options.fetched_at,
                      "Snapshot timestamp (ISO-8601 UTC; default: now)");
    fetch->add_option("--budget-requests", fetch_options.budget.max_requests_per_window,
                      "Max requests per window");
    fetch->add_option("--budget-window", fetch_options.budget.window_seconds,
                      "Window length in seconds");
    fetch->add_option("--budget-pages", fetch_options.budget.max_pages_per_list,
                      "Max pages per list per call");

    // ---- code
    std::string code_archive, code_out;
    bool code_merge = false;
    auto* code = app.add_subcommand("code", "Generate a coding sheet template");
    code->add_option("--archive", code_archive, "Archive file")->required();
    code->add_option("--out", code_out, "Sheet output path")->required();
    code->add_flag("--merge", code_merge, "Preserve codes from an existing sheet");

    // ---- shared config options for pipeline/stats/map
    std::string config_path, archive_flag, sheet_flag, out_dir_flag, home_country_flag;
    std::string symmetrization_flag, color_by_flag, shape_by_flag, out_flag;
    std::optional<double> resolution_flag;
    std::optional<std::uint64_t> cluster_seed_flag, layout_seed_flag;
    std::optional<std::size_t> iterations_flag;

    auto add_config_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "Run configuration file (JSON)");
        cmd->add_option("--archive", archive_flag, "Archive file (overrides config)");
        cmd->add_option("--sheet", sheet_flag, "Completed coding sheet (overrides config)");
        cmd->add_option("--home-country", home_country_flag, "Researcher's home country");
        cmd->add_option("--symmetrization", symmetrization_flag, "any | mutual");
        cmd->add_option("--resolution", resolution_flag, "Clustering resolution");
        cmd->add_option("--cluster-seed", cluster_seed_flag, "Clustering seed");
        cmd->add_option("--layout-seed", layout_seed_flag, "Layout seed");
        cmd->add_option("--iterations", iterations_flag, "Layout iterations");
        cmd->add_option("--color-by", color_by_flag, "geography | affiliation | cluster");
        cmd->add_option("--shape-by", shape_by_flag,
                        "geography | affiliation | cluster | none");
    };

    auto* pipeline = app.add_subcommand("pipeline", "Run the full four-step pipeline");
    add_config_options(pipeline);
    pipeline->add_option("--out-dir", out_dir_flag, "Output directory (overrides config)");

    auto* stats = app.add_subcommand("stats", "Print the statistics report");
    add_config_options(stats);
    stats->add_option("--out", out_flag, "Write the report here instead of stdout");

    auto* map_cmd = app.add_subcommand("map", "Render the network map only");
    add_config_options(map_cmd);
    map_cmd->add_option("--out", out_flag, "SVG output path")->required();

    // ---- synth
    std::string synth_spec, synth_out;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic benchmark dataset");
    synth->add_option("--spec", synth_spec, "Synthetic spec file (JSON)")->required();
    synth->add_option("--out-dir", synth_out, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    auto build_config = [&]() {
        RunConfig config;
        if (!config_path.empty()) config = load_run_config(config_path);
        if (!archive_flag.empty()) config.archive_path = archive_flag;
        if (!sheet_flag.empty()) config.coding_sheet_path = sheet_flag;
        if (!out_dir_flag.empty()) config.output_dir = out_dir_flag;
        if (!home_country_flag.empty()) config.home_country = home_country_flag;
        if (!symmetrization_flag.empty()) {
            config.symmetrization = symmetrize_mode_from_token(symmetrization_flag);
        }
        if (resolution_flag) config.clustering_resolution = *resolution_flag;
        if (cluster_seed_flag) config.clustering_seed = *cluster_seed_flag;
        if (layout_seed_flag) config.layout_seed = *layout_seed_flag;
        if (iterations_flag) config.layout_iterations = *iterations_flag;
        if (!color_by_flag.empty()) config.encoding.color_by = color_by_from_token(color_by_flag);
        if (!shape_by_flag.empty()) {
            if (shape_by_flag == "none") config.encoding.shape_by.reset();
            else config.encoding.shape_by = color_by_from_token(shape_by_flag);
        }
        return config;
    };

    try {
        if (fetch->parsed()) return cmd_fetch(fetch_options);
        if (code->parsed()) return cmd_code(code_archive, code_out, code_merge);
        if (synth->parsed()) return cmd_synth(synth_spec, synth_out);
        if (pipeline->parsed()) {
            RunConfig config = build_config();
            PipelineResult result = run_pipeline(config);
            std::cout << "profile=" << to_token(result.report.profile.label)
                      << " outputs=" << result.written.size() << " dir="
                      << config.output_dir.string() << "\n";
            return exit_ok;
        }
        if (stats->parsed()) return cmd_stats(build_config(), out_flag);
        if (map_cmd->parsed()) return cmd_map(build_config(), out_flag);
    } catch (const Error& error) {
        std::cerr << error.what() << "\n";
        return error.exit_code();
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
