#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "egomap/archive.hpp"
#include "egomap/attributes.hpp"

namespace egomap {

// Planted-community generator: a benchmark oracle for the whole pipeline.
// Members split into 1 or 2 poles; directed edges drawn independently with
// pole-dependent probabilities; geography/affiliation drawn from per-pole
// mixes. Pure function of the spec (identical bytes for identical spec).
struct SyntheticProfileSpec {
    std::size_t community_size = 0;
    int pole_count = 1;
    double intra_pole_edge_prob = 0.0;
    double inter_pole_edge_prob = 0.0;
    std::vector<std::map<Affiliation, double>> category_mix_per_pole;  // one per pole
    std::vector<double> local_fraction_per_pole;                       // one per pole
    std::uint64_t seed = 0;
    std::size_t extra_followers = 0;
    std::size_t extra_followees = 0;

    void validate() const;  // throws InvalidSpec
};

struct GroundTruthEntry {
    int pole = 0;
    Geography geography = Geography::unknown;
    Affiliation affiliation = Affiliation::unknown;

    bool operator==(const GroundTruthEntry&) const = default;
};

using GroundTruth = std::map<AccountId, GroundTruthEntry>;

struct SynthResult {
    EgoArchive archive;
    GroundTruth truth;
};

SynthResult synth_generate(const SyntheticProfileSpec& spec);

// Ground-truth coding sheet so the full pipeline can run unattended.
CodingSheet coding_sheet_from_truth(const GroundTruth& truth, const EgoArchive& archive);

SyntheticProfileSpec synth_spec_from_string(const std::string& text);
SyntheticProfileSpec load_synth_spec(const std::filesystem::path& path);
std::string ground_truth_to_string(const GroundTruth& truth);

}  // namespace egomap
