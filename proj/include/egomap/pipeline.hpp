#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "egomap/exporters.hpp"
#include "egomap/fetch.hpp"
#include "egomap/report.hpp"

namespace egomap {

// One reproducible run: every knob explicit, all randomness from the seeds
// below. Flags mirror these keys; flags override the file.
struct RunConfig {
    std::string home_country;
    std::filesystem::path archive_path;
    std::filesystem::path coding_sheet_path;
    std::filesystem::path output_dir;
    SymmetrizeMode symmetrization = SymmetrizeMode::any;
    double clustering_resolution = 1.0;
    std::uint64_t clustering_seed = 1;
    std::uint64_t layout_seed = 1;
    std::size_t layout_iterations = 200;
    VisualEncoding encoding{ColorBy::affiliation, ColorBy::geography, false};
    ProfileThresholds thresholds;
    FetchBudget budget;
};

// Relative paths in the file resolve against the config file's directory.
RunConfig run_config_from_string(const std::string& text,
                                 const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

struct PipelineResult {
    StatsReport report;
    std::vector<std::filesystem::path> written;
};

// Throws InvalidSpec when a required path is absent.
void validate_run_config(const RunConfig& config, bool needs_output_dir);

// community → graph → annotate → stats → cluster → layout → render.
// All outputs are assembled in memory and written together; a failed run
// leaves no partial artifacts. Identical inputs yield byte-identical trees.
PipelineResult run_pipeline(const RunConfig& config);

ColorBy color_by_from_token(const std::string& token);
std::string to_token(ColorBy color_by);

}  // namespace egomap
