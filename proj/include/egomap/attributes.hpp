#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "egomap/archive.hpp"
#include "egomap/egonet.hpp"

namespace egomap {

// Geography relative to the researcher's home country.
enum class Geography { local, global, unknown };

// The five published affiliation categories plus unknown.
enum class Affiliation { academic, private_sector, public_sector, politician, ngo, unknown };

std::string to_token(Geography g);
std::string to_token(Affiliation a);
std::optional<Geography> geography_from_token(const std::string& token);
std::optional<Affiliation> affiliation_from_token(const std::string& token);

// Canonical enumeration orders (used for shares, mixing matrices, legends).
const std::vector<Geography>& all_geographies();
const std::vector<Affiliation>& all_affiliations();

struct Coding {
    Geography geography = Geography::unknown;
    Affiliation affiliation = Affiliation::unknown;

    bool operator==(const Coding&) const = default;
};

using CodingMap = std::map<AccountId, Coding>;

struct CodingRow {
    AccountId id;
    std::string handle;
    std::string bio;
    std::string location;
    std::string url;
    Geography geography = Geography::unknown;
    Affiliation affiliation = Affiliation::unknown;
    std::string evidence;

    bool operator==(const CodingRow&) const = default;
};

// One row per community member, sorted by handle (ties by id).
struct CodingSheet {
    std::vector<CodingRow> rows;

    bool operator==(const CodingSheet&) const = default;
};

struct AttributedGraph {
    DirectedFollowGraph graph;
    CodingMap coding;  // keys = graph nodes, exactly
    std::string home_country;
};

// Pre-filled template for the analyst: profile metadata copied in, both
// codes set to unknown.
CodingSheet generate_coding_template(const InteractionCommunity& community,
                                     const EgoArchive& archive);

// Re-template over the current community, carrying geography/affiliation/
// evidence over from an existing sheet for ids that are still members.
CodingSheet merge_coding_template(const CodingSheet& existing,
                                  const InteractionCommunity& community,
                                  const EgoArchive& archive);

std::string coding_sheet_to_string(const CodingSheet& sheet);
CodingSheet coding_sheet_from_string(const std::string& text);

void save_coding_sheet(const CodingSheet& sheet, const std::filesystem::path& path);
CodingSheet load_coding_sheet_file(const std::filesystem::path& path);

// Validated load: exactly one row per community member. Collects all
// problems before failing — MissingMembers, UnknownRows (duplicates
// included), BadCode with row/column context.
CodingMap load_coding_sheet(const std::filesystem::path& path,
                            const InteractionCommunity& community);
CodingMap validate_coding_sheet(const CodingSheet& sheet, const InteractionCommunity& community);

// Attach codes to graph nodes. Throws KeyMismatch unless coding keys equal
// the node set.
AttributedGraph annotate(const DirectedFollowGraph& graph, const CodingMap& coding,
                         const std::string& home_country);

}  // namespace egomap
