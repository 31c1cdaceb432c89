#include "egomap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egomap/errors.hpp"
#include "egomap/rng.hpp"

namespace egomap {

using nlohmann::json;

void SyntheticProfileSpec::validate() const {
    if (pole_count != 1 && pole_count != 2) {
        throw InvalidSpecError("pole_count must be 1 or 2");
    }
    auto is_prob = [](double p) { return p >= 0.0 && p <= 1.0 && std::isfinite(p); };
    if (!is_prob(intra_pole_edge_prob) || !is_prob(inter_pole_edge_prob)) {
        throw InvalidSpecError("edge probabilities must lie in [0,1]");
    }
    if (inter_pole_edge_prob > intra_pole_edge_prob) {
        throw InvalidSpecError("inter_pole_edge_prob must not exceed intra_pole_edge_prob");
    }
    if (category_mix_per_pole.size() != static_cast<std::size_t>(pole_count)) {
        throw InvalidSpecError("category_mix_per_pole needs one entry per pole");
    }
    if (local_fraction_per_pole.size() != static_cast<std::size_t>(pole_count)) {
        throw InvalidSpecError("local_fraction_per_pole needs one entry per pole");
    }
    for (const auto& mix : category_mix_per_pole) {
        double sum = 0.0;
        for (const auto& [_, p] : mix) {
            if (!is_prob(p)) throw InvalidSpecError("category mix entries must lie in [0,1]");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InvalidSpecError("category mix must sum to 1");
        }
    }
    for (double p : local_fraction_per_pole) {
        if (!is_prob(p)) throw InvalidSpecError("local fractions must lie in [0,1]");
    }
}

namespace {

std::string padded(const char* prefix, std::size_t index) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%s%05zu", prefix, index);
    return buffer;
}

Affiliation sample_affiliation(const std::map<Affiliation, double>& mix,
                               std::mt19937_64& rng) {
    double u = uniform01(rng);
    double cumulative = 0.0;
    Affiliation last = Affiliation::unknown;
    // canonical enum order keeps the inverse-CDF walk deterministic
    for (Affiliation a : all_affiliations()) {
        auto it = mix.find(a);
        if (it == mix.end()) continue;
        cumulative += it->second;
        last = a;
        if (u < cumulative) return a;
    }
    return last;
}

}  // namespace

SynthResult synth_generate(const SyntheticProfileSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);

    SynthResult result;
    EgoArchive& archive = result.archive;
    archive.ego.id = "ego";
    archive.ego.handle = "ego";
    archive.fetched_at = 0;

    std::size_t n = spec.community_size;
    std::vector<AccountId> members(n);
    std::vector<int> pole(n, 0);
    std::size_t first_pole = spec.pole_count == 2 ? (n + 1) / 2 : n;
    for (std::size_t i = 0; i < n; ++i) {
        members[i] = padded("m", i + 1);
        pole[i] = i < first_pole ? 0 : 1;
    }

    // Draw order is fixed: edges, then geography, then affiliation.
    for (std::size_t i = 0; i < n; ++i) {
        auto& list = archive.member_followees[members[i]];
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double p = pole[i] == pole[j] ? spec.intra_pole_edge_prob
                                          : spec.inter_pole_edge_prob;
            if (uniform01(rng) < p) list.insert(members[j]);
        }
        list.insert(archive.ego.id);  // every member follows the ego
    }

    for (std::size_t i = 0; i < n; ++i) {
        bool local = uniform01(rng) < spec.local_fraction_per_pole[pole[i]];
        result.truth[members[i]].pole = pole[i];
        result.truth[members[i]].geography = local ? Geography::local : Geography::global;
    }
    for (std::size_t i = 0; i < n; ++i) {
        result.truth[members[i]].affiliation =
            sample_affiliation(spec.category_mix_per_pole[pole[i]], rng);
    }

    archive.followers.insert(members.begin(), members.end());
    archive.followees.insert(members.begin(), members.end());
    for (std::size_t i = 0; i < spec.extra_followers; ++i) {
        archive.followers.insert(padded("xf", i + 1));
    }
    for (std::size_t i = 0; i < spec.extra_followees; ++i) {
        archive.followees.insert(padded("xg", i + 1));
    }

    for (std::size_t i = 0; i < n; ++i) {
        const GroundTruthEntry& truth = result.truth[members[i]];
        AccountProfile profile;
        profile.id = members[i];
        profile.handle = padded("member_", i + 1);
        profile.bio = "Synthetic account, pole " + std::to_string(truth.pole) + ", " +
                      to_token(truth.affiliation);
        profile.declared_location =
            truth.geography == Geography::local ? "Hometown" : "Abroad";
        archive.profiles[members[i]] = std::move(profile);
    }
    for (const auto& id : archive.followers) {
        archive.profiles.try_emplace(id).first->second.id = id;
    }
    for (const auto& id : archive.followees) {
        archive.profiles.try_emplace(id).first->second.id = id;
    }

    validate_archive(archive);
    return result;
}

CodingSheet coding_sheet_from_truth(const GroundTruth& truth, const EgoArchive& archive) {
    CodingSheet sheet;
    for (const auto& [id, entry] : truth) {
        CodingRow row;
        row.id = id;
        auto it = archive.profiles.find(id);
        if (it != archive.profiles.end()) {
            row.handle = it->second.handle;
            row.bio = it->second.bio;
            row.location = it->second.declared_location;
            row.url = it->second.url;
        }
        row.geography = entry.geography;
        row.affiliation = entry.affiliation;
        row.evidence = "generator ground truth";
        sheet.rows.push_back(std::move(row));
    }
    std::sort(sheet.rows.begin(), sheet.rows.end(), [](const auto& a, const auto& b) {
        if (a.handle != b.handle) return a.handle < b.handle;
        return a.id < b.id;
    });
    return sheet;
}

SyntheticProfileSpec synth_spec_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw InvalidSpecError("synthetic spec is not a JSON object");
    }
    SyntheticProfileSpec spec;
    spec.community_size = j.value("community_size", std::size_t{0});
    spec.pole_count = j.value("pole_count", 1);
    spec.intra_pole_edge_prob = j.value("intra_pole_edge_prob", 0.0);
    spec.inter_pole_edge_prob = j.value("inter_pole_edge_prob", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.extra_followers = j.value("extra_followers", std::size_t{0});
    spec.extra_followees = j.value("extra_followees", std::size_t{0});
    if (j.contains("category_mix_per_pole")) {
        for (const auto& mix_json : j["category_mix_per_pole"]) {
            std::map<Affiliation, double> mix;
            for (const auto& item : mix_json.items()) {
                auto a = affiliation_from_token(item.key());
                if (!a) throw InvalidSpecError("unknown affiliation '" + item.key() + "'");
                mix[*a] = item.value().get<double>();
            }
            spec.category_mix_per_pole.push_back(std::move(mix));
        }
    }
    if (j.contains("local_fraction_per_pole")) {
        for (const auto& p : j["local_fraction_per_pole"]) {
            spec.local_fraction_per_pole.push_back(p.get<double>());
        }
    }
    spec.validate();
    return spec;
}

SyntheticProfileSpec load_synth_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return synth_spec_from_string(buffer.str());
}

std::string ground_truth_to_string(const GroundTruth& truth) {
    json j = json::object();
    for (const auto& [id, entry] : truth) {
        j[id] = {{"pole", entry.pole},
                 {"geography", to_token(entry.geography)},
                 {"affiliation", to_token(entry.affiliation)}};
    }
    return j.dump(2) + "\n";
}

}  // namespace egomap
