#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>

namespace egomap {

// Opaque, stable per-platform account identity.
using AccountId = std::string;

struct AccountProfile {
    AccountId id;
    std::string handle;
    std::string bio;
    std::string declared_location;
    std::string url;
    // Provenance flag: the account's followee list was unreadable
    // (protected/suspended) at fetch time.
    bool protected_account = false;

    bool operator==(const AccountProfile&) const = default;
};

// Snapshot of one researcher's relations: her follower and followee lists,
// plus the raw followee list of every interaction-community member
// (followers ∩ followees). The ego never appears as a follower, followee
// or member_followees key; she may appear inside member followee lists.
struct EgoArchive {
    AccountProfile ego;
    std::int64_t fetched_at = 0;  // UTC epoch seconds
    std::set<AccountId> followers;
    std::set<AccountId> followees;
    std::map<AccountId, std::set<AccountId>> member_followees;
    std::map<AccountId, AccountProfile> profiles;

    bool operator==(const EgoArchive&) const = default;
};

// Throws SchemaViolationError naming the failing invariant and the
// offending id. Checked on every load and before every save.
void validate_archive(const EgoArchive& archive);

// Canonical serialization: JSON with alphabetically ordered keys, sets as
// sorted arrays, two-space indent, trailing newline. save∘load is the
// identity on bytes, load∘save on values.
std::string archive_to_string(const EgoArchive& archive);
EgoArchive archive_from_string(const std::string& text);

void save_archive(const EgoArchive& archive, const std::filesystem::path& path);
EgoArchive load_archive(const std::filesystem::path& path);

// ISO-8601 UTC ("2016-05-12T09:30:00Z") <-> epoch seconds.
std::string format_utc(std::int64_t epoch_seconds);
std::int64_t parse_utc(const std::string& text);

}  // namespace egomap
