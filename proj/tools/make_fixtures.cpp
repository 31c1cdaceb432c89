// Regenerates the bundled example datasets under fixtures/. The two
// researchers differ sharply: researcher1 has a small, almost entirely
// academic and international community; researcher2 a larger two-pole one
// mixing academics with local policy stakeholders.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <vector>

#include "egomap/archive.hpp"
#include "egomap/attributes.hpp"
#include "egomap/egonet.hpp"
#include "egomap/rng.hpp"

using namespace egomap;

namespace {

std::string padded(const char* prefix, std::size_t index, int width = 3) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%s%0*zu", prefix, width, index);
    return buffer;
}

struct MemberPlan {
    AccountId id;
    int pole = 0;
    Geography geography = Geography::unknown;
    Affiliation affiliation = Affiliation::unknown;
};

const char* bio_for(Affiliation a) {
    switch (a) {
        case Affiliation::academic: return "Researcher, science policy and innovation studies";
        case Affiliation::private_sector: return "Consultant, research strategy and evaluation";
        case Affiliation::public_sector: return "Policy officer, national research council";
        case Affiliation::politician: return "Member of parliament, science and education";
        case Affiliation::ngo: return "Program lead, open knowledge foundation";
        case Affiliation::unknown: return "";
    }
    return "";
}

const char* location_for(Geography g) {
    switch (g) {
        case Geography::local: return "The Hague, Netherlands";
        case Geography::global: return "Brighton, UK";
        case Geography::unknown: return "";
    }
    return "";
}

EgoArchive assemble(const AccountProfile& ego, const std::vector<MemberPlan>& members,
                    std::size_t extra_followers, std::size_t extra_followees,
                    double intra_prob, double inter_prob, std::uint64_t seed,
                    const std::string& prefix) {
    EgoArchive archive;
    archive.ego = ego;
    archive.fetched_at = parse_utc("2016-05-12T09:30:00Z");

    std::vector<AccountId> follower_extras, followee_extras;
    for (std::size_t i = 1; i <= extra_followers; ++i) {
        follower_extras.push_back(padded((prefix + "f").c_str(), i));
    }
    for (std::size_t i = 1; i <= extra_followees; ++i) {
        followee_extras.push_back(padded((prefix + "g").c_str(), i));
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < members.size(); ++i) {
        auto& list = archive.member_followees[members[i].id];
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i == j) continue;
            double p = members[i].pole == members[j].pole ? intra_prob : inter_prob;
            if (uniform01(rng) < p) list.insert(members[j].id);
        }
        list.insert(ego.id);
        // Some out-links leave the community: a couple of the ego's other
        // followees, and for every fifth member an account outside the
        // archive entirely.
        if (!followee_extras.empty()) {
            list.insert(followee_extras[(i * 7) % followee_extras.size()]);
            list.insert(followee_extras[(i * 13 + 5) % followee_extras.size()]);
        }
        if (i % 5 == 0) {
            list.insert(padded((prefix + "out").c_str(), i / 5 + 1));
        }
    }

    for (const auto& member : members) {
        archive.followers.insert(member.id);
        archive.followees.insert(member.id);
        AccountProfile profile;
        profile.id = member.id;
        profile.handle = member.id;
        profile.bio = bio_for(member.affiliation);
        profile.declared_location = location_for(member.geography);
        if (member.affiliation != Affiliation::unknown) {
            profile.url = "https://example.org/" + member.id;
        }
        archive.profiles[member.id] = std::move(profile);
    }
    archive.followers.insert(follower_extras.begin(), follower_extras.end());
    archive.followees.insert(followee_extras.begin(), followee_extras.end());

    auto ensure_profile = [&](const AccountId& id) {
        if (id == ego.id) return;
        archive.profiles.try_emplace(id).first->second.id = id;
    };
    for (const auto& id : archive.followers) ensure_profile(id);
    for (const auto& id : archive.followees) ensure_profile(id);
    for (const auto& [_, list] : archive.member_followees) {
        for (const auto& id : list) ensure_profile(id);
    }

    validate_archive(archive);
    return archive;
}

CodingSheet sheet_for(const std::vector<MemberPlan>& members, const EgoArchive& archive) {
    InteractionCommunity community = interaction_community(archive);
    CodingSheet sheet = generate_coding_template(community, archive);
    std::map<AccountId, const MemberPlan*> plan;
    for (const auto& member : members) plan[member.id] = &member;
    for (auto& row : sheet.rows) {
        const MemberPlan* p = plan.at(row.id);
        row.geography = p->geography;
        row.affiliation = p->affiliation;
        row.evidence = p->affiliation == Affiliation::unknown ? "no public affiliation found"
                                                              : "account bio";
    }
    return sheet;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// 44 members: 42 academic, one consultant, one ministry officer; 6 local.
std::vector<MemberPlan> researcher1_members() {
    std::vector<MemberPlan> members;
    for (std::size_t i = 1; i <= 44; ++i) {
        MemberPlan m;
        m.id = padded("r1m", i, 2);
        m.pole = 0;
        m.geography = i <= 6 ? Geography::local : Geography::global;
        m.affiliation = Affiliation::academic;
        members.push_back(m);
    }
    members[9].affiliation = Affiliation::private_sector;   // r1m10
    members[29].affiliation = Affiliation::public_sector;   // r1m30
    return members;
}

// 110 members in two poles of 55. Pole 0 (academic, mostly abroad):
// 48 academic, 2 private, 1 public, 1 ngo, 3 unknown; 8 local.
// Pole 1 (local stakeholders): 6 academic, 18 private, 17 public,
// 6 politicians, 5 ngo, 3 unknown; 45 local.
std::vector<MemberPlan> researcher2_members() {
    std::vector<MemberPlan> members;
    for (std::size_t i = 1; i <= 110; ++i) {
        MemberPlan m;
        m.id = padded("r2m", i, 3);
        m.pole = i <= 55 ? 0 : 1;
        members.push_back(m);
    }
    auto assign = [&](std::size_t first, std::size_t count, Affiliation a) {
        for (std::size_t i = first; i < first + count; ++i) members[i - 1].affiliation = a;
    };
    // pole 0: members 1..55
    assign(1, 48, Affiliation::academic);
    assign(49, 2, Affiliation::private_sector);
    assign(51, 1, Affiliation::public_sector);
    assign(52, 1, Affiliation::ngo);
    assign(53, 3, Affiliation::unknown);
    // pole 1: members 56..110
    assign(56, 6, Affiliation::academic);
    assign(62, 18, Affiliation::private_sector);
    assign(80, 17, Affiliation::public_sector);
    assign(97, 6, Affiliation::politician);
    assign(103, 5, Affiliation::ngo);
    assign(108, 3, Affiliation::unknown);

    for (std::size_t i = 1; i <= 110; ++i) {
        MemberPlan& m = members[i - 1];
        if (m.pole == 0) {
            m.geography = i <= 8 ? Geography::local : Geography::global;  // 8 of 55 local
        } else {
            m.geography = i <= 100 ? Geography::local : Geography::global;  // 45 of 55 local
        }
    }
    return members;
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path root = argc > 1 ? argv[1] : "fixtures";
    std::filesystem::create_directories(root / "researcher1");
    std::filesystem::create_directories(root / "researcher2");
    std::filesystem::create_directories(root / "synth");

    {
        AccountProfile ego;
        ego.id = "researcher_1";
        ego.handle = "researcher_1";
        ego.bio = "Professor, quantitative science studies";
        ego.declared_location = "Netherlands";
        auto members = researcher1_members();
        // 44 members + 207 extra followers = 251; + 37 extra followees = 81
        EgoArchive archive = assemble(ego, members, 207, 37, 0.35, 0.35, 101, "r1");
        save_archive(archive, root / "researcher1" / "archive.json");
        save_coding_sheet(sheet_for(members, archive), root / "researcher1" / "coding.csv");
        write_file(root / "researcher1" / "config.json", R"({
  "home_country": "Netherlands",
  "archive": "archive.json",
  "coding_sheet": "coding.csv",
  "output_dir": "out",
  "symmetrization": "any",
  "clustering": {"resolution": 1.0, "seed": 7},
  "layout": {"seed": 7, "iterations": 150},
  "map": {"color_by": "affiliation", "shape_by": "geography"}
}
)");
    }

    {
        AccountProfile ego;
        ego.id = "researcher_2";
        ego.handle = "researcher_2";
        ego.bio = "Senior researcher, science policy; advisor";
        ego.declared_location = "Netherlands";
        auto members = researcher2_members();
        // 110 members + 111 extra followers = 221; + 122 extra followees = 232
        EgoArchive archive = assemble(ego, members, 111, 122, 0.30, 0.02, 202, "r2");
        save_archive(archive, root / "researcher2" / "archive.json");
        save_coding_sheet(sheet_for(members, archive), root / "researcher2" / "coding.csv");
        write_file(root / "researcher2" / "config.json", R"({
  "home_country": "Netherlands",
  "archive": "archive.json",
  "coding_sheet": "coding.csv",
  "output_dir": "out",
  "symmetrization": "any",
  "clustering": {"resolution": 1.0, "seed": 7},
  "layout": {"seed": 7, "iterations": 150},
  "map": {"color_by": "affiliation", "shape_by": "geography"}
}
)");
    }

    // Synthetic specs mirroring the two profiles, used by tests and docs.
    write_file(root / "synth" / "two_pole_spec.json", R"({
  "community_size": 110,
  "pole_count": 2,
  "intra_pole_edge_prob": 0.30,
  "inter_pole_edge_prob": 0.02,
  "category_mix_per_pole": [
    {"academic": 0.87, "private_sector": 0.04, "public_sector": 0.02, "ngo": 0.02, "unknown": 0.05},
    {"academic": 0.11, "private_sector": 0.33, "public_sector": 0.31, "politician": 0.11, "ngo": 0.09, "unknown": 0.05}
  ],
  "local_fraction_per_pole": [0.15, 0.82],
  "seed": 7,
  "extra_followers": 111,
  "extra_followees": 122
}
)");
    write_file(root / "synth" / "one_pole_spec.json", R"({
  "community_size": 44,
  "pole_count": 1,
  "intra_pole_edge_prob": 0.35,
  "inter_pole_edge_prob": 0.35,
  "category_mix_per_pole": [
    {"academic": 0.95, "private_sector": 0.03, "public_sector": 0.02}
  ],
  "local_fraction_per_pole": [0.14],
  "seed": 7,
  "extra_followers": 207,
  "extra_followees": 37
}
)");

    write_file(root / "endpoints.example.json", R"({
  "base_url": "https://api.example.com",
  "auth_header": "Authorization",
  "auth_value_template": "Bearer ${EGOMAP_API_TOKEN}",
  "resolve_path": "/users/by_handle/{handle}",
  "followers_path": "/users/{id}/followers",
  "followees_path": "/users/{id}/followees",
  "profiles_path": "/users/lookup",
  "cursor_param": "cursor",
  "page_size_param": "count",
  "page_size": 200
}
)");

    std::cout << "fixtures written under " << root.string() << "\n";
    return 0;
}
