#include "egomap/archive.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egomap/errors.hpp"

namespace egomap {

using nlohmann::json;

namespace {

const char* const kProfileFields[] = {"bio", "declared_location", "handle", "id",
                                      "protected", "url"};
const char* const kTopFields[] = {"ego",      "fetched_at",       "followees",
                                  "followers", "member_followees", "profiles"};

void reject_unknown_fields(const json& object, const char* const* allowed,
                           std::size_t count, const std::string& where) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (std::size_t i = 0; i < count; ++i) {
            if (item.key() == allowed[i]) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SchemaViolationError("unknown field '" + item.key() + "' in " + where);
        }
    }
}

json profile_to_json(const AccountProfile& profile) {
    json j;
    j["id"] = profile.id;
    j["handle"] = profile.handle;
    j["bio"] = profile.bio;
    j["declared_location"] = profile.declared_location;
    j["url"] = profile.url;
    if (profile.protected_account) {
        j["protected"] = true;  // omitted when false: canonical form
    }
    return j;
}

std::string require_string(const json& object, const char* field, const std::string& where) {
    auto it = object.find(field);
    if (it == object.end() || !it->is_string()) {
        throw SchemaViolationError(std::string("missing or non-string field '") + field +
                                   "' in " + where);
    }
    return it->get<std::string>();
}

AccountProfile profile_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) {
        throw SchemaViolationError("profile is not an object in " + where);
    }
    reject_unknown_fields(j, kProfileFields, std::size(kProfileFields), where);
    AccountProfile profile;
    profile.id = require_string(j, "id", where);
    profile.handle = require_string(j, "handle", where);
    profile.bio = require_string(j, "bio", where);
    profile.declared_location = require_string(j, "declared_location", where);
    profile.url = require_string(j, "url", where);
    if (auto it = j.find("protected"); it != j.end()) {
        if (!it->is_boolean()) {
            throw SchemaViolationError("field 'protected' is not a boolean in " + where);
        }
        profile.protected_account = it->get<bool>();
    }
    return profile;
}

std::set<AccountId> id_array_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) {
        throw SchemaViolationError(where + " is not an array");
    }
    std::set<AccountId> ids;
    for (const auto& element : j) {
        if (!element.is_string()) {
            throw SchemaViolationError("non-string id in " + where);
        }
        ids.insert(element.get<AccountId>());
    }
    return ids;
}

}  // namespace

void validate_archive(const EgoArchive& archive) {
    const AccountId& ego = archive.ego.id;
    if (ego.empty()) {
        throw SchemaViolationError("ego id is empty");
    }
    if (archive.followers.count(ego)) {
        throw SchemaViolationError("ego '" + ego + "' appears in followers");
    }
    if (archive.followees.count(ego)) {
        throw SchemaViolationError("ego '" + ego + "' appears in followees");
    }
    if (archive.member_followees.count(ego)) {
        throw SchemaViolationError("ego '" + ego + "' is a member_followees key");
    }
    if (archive.profiles.count(ego)) {
        throw SchemaViolationError("ego '" + ego +
                                   "' has a profiles entry; the ego profile lives in 'ego'");
    }

    // keys(member_followees) must equal followers ∩ followees, exactly.
    for (const auto& id : archive.followers) {
        if (id.empty()) throw SchemaViolationError("empty id in followers");
        bool member = archive.followees.count(id) > 0;
        if (member && !archive.member_followees.count(id)) {
            throw SchemaViolationError("community member '" + id +
                                       "' missing from member_followees");
        }
    }
    for (const auto& id : archive.followees) {
        if (id.empty()) throw SchemaViolationError("empty id in followees");
    }
    for (const auto& [id, followees] : archive.member_followees) {
        if (!archive.followers.count(id) || !archive.followees.count(id)) {
            throw SchemaViolationError("member_followees key '" + id +
                                       "' is not in followers ∩ followees");
        }
        if (followees.count(id)) {
            throw SchemaViolationError("account '" + id + "' lists itself as a followee");
        }
    }

    // Every referenced id has a profile entry whose id matches its key.
    auto check_profile = [&](const AccountId& id, const char* where) {
        auto it = archive.profiles.find(id);
        if (it == archive.profiles.end()) {
            throw SchemaViolationError("no profile entry for '" + id + "' (referenced in " +
                                       where + ")");
        }
    };
    for (const auto& id : archive.followers) check_profile(id, "followers");
    for (const auto& id : archive.followees) check_profile(id, "followees");
    for (const auto& [member, followees] : archive.member_followees) {
        for (const auto& id : followees) {
            if (id == ego) continue;  // ego's profile lives in the 'ego' field
            check_profile(id, "member_followees");
        }
    }
    for (const auto& [id, profile] : archive.profiles) {
        if (id.empty()) throw SchemaViolationError("empty id key in profiles");
        if (profile.id != id) {
            throw SchemaViolationError("profile entry '" + id + "' carries mismatched id '" +
                                       profile.id + "'");
        }
    }
}

std::string archive_to_string(const EgoArchive& archive) {
    validate_archive(archive);
    json j;
    j["ego"] = profile_to_json(archive.ego);
    j["fetched_at"] = format_utc(archive.fetched_at);
    j["followers"] = json::array();
    for (const auto& id : archive.followers) j["followers"].push_back(id);
    j["followees"] = json::array();
    for (const auto& id : archive.followees) j["followees"].push_back(id);
    j["member_followees"] = json::object();
    for (const auto& [member, followees] : archive.member_followees) {
        json arr = json::array();
        for (const auto& id : followees) arr.push_back(id);
        j["member_followees"][member] = std::move(arr);
    }
    j["profiles"] = json::object();
    for (const auto& [id, profile] : archive.profiles) {
        j["profiles"][id] = profile_to_json(profile);
    }
    return j.dump(2) + "\n";
}

EgoArchive archive_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw SchemaViolationError("archive is not a JSON object");
    }
    reject_unknown_fields(j, kTopFields, std::size(kTopFields), "archive");
    for (const char* field : kTopFields) {
        if (!j.contains(field)) {
            throw SchemaViolationError(std::string("archive is missing field '") + field + "'");
        }
    }

    EgoArchive archive;
    archive.ego = profile_from_json(j["ego"], "ego");
    if (!j["fetched_at"].is_string()) {
        throw SchemaViolationError("fetched_at is not a string");
    }
    archive.fetched_at = parse_utc(j["fetched_at"].get<std::string>());
    archive.followers = id_array_from_json(j["followers"], "followers");
    archive.followees = id_array_from_json(j["followees"], "followees");
    if (!j["member_followees"].is_object()) {
        throw SchemaViolationError("member_followees is not an object");
    }
    for (const auto& item : j["member_followees"].items()) {
        archive.member_followees[item.key()] =
            id_array_from_json(item.value(), "member_followees['" + item.key() + "']");
    }
    if (!j["profiles"].is_object()) {
        throw SchemaViolationError("profiles is not an object");
    }
    for (const auto& item : j["profiles"].items()) {
        archive.profiles[item.key()] =
            profile_from_json(item.value(), "profiles['" + item.key() + "']");
    }
    validate_archive(archive);
    return archive;
}

void save_archive(const EgoArchive& archive, const std::filesystem::path& path) {
    std::string text = archive_to_string(archive);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    if (!out.good()) {
        throw IoError("short write to '" + path.string() + "'");
    }
}

EgoArchive load_archive(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return archive_from_string(buffer.str());
}

std::string format_utc(std::int64_t epoch_seconds) {
    std::time_t t = static_cast<std::time_t>(epoch_seconds);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buffer[80];
    std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buffer;
}

std::int64_t parse_utc(const std::string& text) {
    std::tm tm{};
    char zone = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &tm.tm_year, &tm.tm_mon,
                    &tm.tm_mday, &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &zone) != 7 ||
        zone != 'Z') {
        throw SchemaViolationError("fetched_at '" + text + "' is not ISO-8601 UTC");
    }
    if (tm.tm_mon < 1 || tm.tm_mon > 12 || tm.tm_mday < 1 || tm.tm_mday > 31 ||
        tm.tm_hour > 23 || tm.tm_min > 59 || tm.tm_sec > 60) {
        throw SchemaViolationError("fetched_at '" + text + "' is out of range");
    }
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    std::int64_t parsed = static_cast<std::int64_t>(timegm(&tm));
    // Round-trip check catches non-canonical dates like Feb 30.
    if (format_utc(parsed) != text) {
        throw SchemaViolationError("fetched_at '" + text + "' is not a canonical timestamp");
    }
    return parsed;
}

}  // namespace egomap
