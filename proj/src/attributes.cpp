#include "egomap/attributes.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "egomap/csv.hpp"
#include "egomap/errors.hpp"

namespace egomap {

namespace {

const char* kHeader[] = {"id",  "handle",    "bio",         "location",
                         "url", "geography", "affiliation", "evidence"};
constexpr std::size_t kColumns = std::size(kHeader);

}  // namespace

std::string to_token(Geography g) {
    switch (g) {
        case Geography::local: return "local";
        case Geography::global: return "global";
        case Geography::unknown: return "unknown";
    }
    return "unknown";
}

std::string to_token(Affiliation a) {
    switch (a) {
        case Affiliation::academic: return "academic";
        case Affiliation::private_sector: return "private_sector";
        case Affiliation::public_sector: return "public_sector";
        case Affiliation::politician: return "politician";
        case Affiliation::ngo: return "ngo";
        case Affiliation::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Geography> geography_from_token(const std::string& token) {
    for (Geography g : all_geographies()) {
        if (token == to_token(g)) return g;
    }
    return std::nullopt;
}

std::optional<Affiliation> affiliation_from_token(const std::string& token) {
    for (Affiliation a : all_affiliations()) {
        if (token == to_token(a)) return a;
    }
    return std::nullopt;
}

const std::vector<Geography>& all_geographies() {
    static const std::vector<Geography> order{Geography::local, Geography::global,
                                              Geography::unknown};
    return order;
}

const std::vector<Affiliation>& all_affiliations() {
    static const std::vector<Affiliation> order{
        Affiliation::academic,   Affiliation::private_sector, Affiliation::public_sector,
        Affiliation::politician, Affiliation::ngo,            Affiliation::unknown};
    return order;
}

namespace {

void sort_rows(std::vector<CodingRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const CodingRow& a, const CodingRow& b) {
        if (a.handle != b.handle) return a.handle < b.handle;
        return a.id < b.id;
    });
}

CodingRow template_row(const AccountId& member, const EgoArchive& archive) {
    CodingRow row;
    row.id = member;
    auto it = archive.profiles.find(member);
    if (it != archive.profiles.end()) {
        row.handle = it->second.handle;
        row.bio = it->second.bio;
        row.location = it->second.declared_location;
        row.url = it->second.url;
    }
    return row;
}

}  // namespace

CodingSheet generate_coding_template(const InteractionCommunity& community,
                                     const EgoArchive& archive) {
    CodingSheet sheet;
    sheet.rows.reserve(community.members.size());
    for (const auto& member : community.members) {
        sheet.rows.push_back(template_row(member, archive));
    }
    sort_rows(sheet.rows);
    return sheet;
}

CodingSheet merge_coding_template(const CodingSheet& existing,
                                  const InteractionCommunity& community,
                                  const EgoArchive& archive) {
    std::map<AccountId, const CodingRow*> old_rows;
    for (const auto& row : existing.rows) {
        old_rows.emplace(row.id, &row);
    }
    CodingSheet sheet;
    for (const auto& member : community.members) {
        CodingRow row = template_row(member, archive);
        if (auto it = old_rows.find(member); it != old_rows.end()) {
            row.geography = it->second->geography;
            row.affiliation = it->second->affiliation;
            row.evidence = it->second->evidence;
        }
        sheet.rows.push_back(std::move(row));
    }
    sort_rows(sheet.rows);
    return sheet;
}

std::string coding_sheet_to_string(const CodingSheet& sheet) {
    std::string text = csv_format_row(
        std::vector<std::string>(std::begin(kHeader), std::end(kHeader)));
    for (const auto& row : sheet.rows) {
        text += csv_format_row({row.id, row.handle, row.bio, row.location, row.url,
                                to_token(row.geography), to_token(row.affiliation),
                                row.evidence});
    }
    return text;
}

CodingSheet coding_sheet_from_string(const std::string& text) {
    auto rows = csv_parse(text);
    if (rows.empty()) {
        throw SchemaViolationError("coding sheet has no header row");
    }
    const auto& header = rows.front();
    if (header.size() != kColumns ||
        !std::equal(header.begin(), header.end(), std::begin(kHeader))) {
        throw SchemaViolationError("coding sheet header does not match the schema");
    }

    CodingSheet sheet;
    std::vector<BadCodeError::Entry> bad_codes;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& fields = rows[i];
        if (fields.size() != kColumns) {
            throw SchemaViolationError("coding sheet row " + std::to_string(i) + " has " +
                                       std::to_string(fields.size()) + " fields, expected " +
                                       std::to_string(kColumns));
        }
        CodingRow row;
        row.id = fields[0];
        row.handle = fields[1];
        row.bio = fields[2];
        row.location = fields[3];
        row.url = fields[4];
        if (auto g = geography_from_token(fields[5])) {
            row.geography = *g;
        } else {
            bad_codes.push_back({i, "geography", fields[5]});
        }
        if (auto a = affiliation_from_token(fields[6])) {
            row.affiliation = *a;
        } else {
            bad_codes.push_back({i, "affiliation", fields[6]});
        }
        row.evidence = fields[7];
        if (row.id.empty()) {
            throw SchemaViolationError("coding sheet row " + std::to_string(i) +
                                       " has an empty id");
        }
        sheet.rows.push_back(std::move(row));
    }
    if (!bad_codes.empty()) {
        throw BadCodeError(std::move(bad_codes));
    }
    return sheet;
}

void save_coding_sheet(const CodingSheet& sheet, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << coding_sheet_to_string(sheet);
    if (!out.good()) {
        throw IoError("short write to '" + path.string() + "'");
    }
}

CodingSheet load_coding_sheet_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return coding_sheet_from_string(buffer.str());
}

CodingMap validate_coding_sheet(const CodingSheet& sheet,
                                const InteractionCommunity& community) {
    CodingMap coding;
    std::vector<AccountId> unknown_rows;
    for (const auto& row : sheet.rows) {
        if (!community.members.count(row.id) || coding.count(row.id)) {
            unknown_rows.push_back(row.id);  // outsider or duplicate
            continue;
        }
        coding[row.id] = Coding{row.geography, row.affiliation};
    }
    if (!unknown_rows.empty()) {
        throw UnknownRowsError(std::move(unknown_rows));
    }
    std::vector<AccountId> missing;
    for (const auto& member : community.members) {
        if (!coding.count(member)) missing.push_back(member);
    }
    if (!missing.empty()) {
        throw MissingMembersError(std::move(missing));
    }
    return coding;
}

CodingMap load_coding_sheet(const std::filesystem::path& path,
                            const InteractionCommunity& community) {
    return validate_coding_sheet(load_coding_sheet_file(path), community);
}

AttributedGraph annotate(const DirectedFollowGraph& graph, const CodingMap& coding,
                         const std::string& home_country) {
    for (const auto& node : graph.nodes) {
        if (!coding.count(node)) {
            throw KeyMismatchError("graph node '" + node + "' has no coding entry");
        }
    }
    for (const auto& [id, _] : coding) {
        if (!graph.nodes.count(id)) {
            throw KeyMismatchError("coding entry '" + id + "' is not a graph node");
        }
    }
    return AttributedGraph{graph, coding, home_country};
}

}  // namespace egomap
