#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "egomap/archive.hpp"

namespace egomap {

// Request allowance for one rate-limit window. Shared across concurrent
// list requests as a token counter.
struct FetchBudget {
    std::size_t max_requests_per_window = 900;
    std::size_t window_seconds = 900;
    std::size_t max_pages_per_list = 100;

    void validate() const;
};

struct ListPage {
    std::vector<AccountId> ids;
    std::string next_cursor;  // empty = last page
};

// Abstract remote list source. Every call costs one budget token.
// Implementations: FixtureListProvider (replays an archive; canonical for
// tests) and HttpListProvider (endpoint-description driven).
class ListProvider {
public:
    virtual ~ListProvider() = default;

    // Empty optional = no such account (fetch_ego raises UnknownHandle).
    virtual std::optional<AccountProfile> resolve(const std::string& handle) = 0;

    // cursor "" requests the first page.
    virtual ListPage followers_page(const AccountId& account, const std::string& cursor) = 0;
    // Throws ProtectedAccountError when the account's list is unreadable.
    virtual ListPage followees_page(const AccountId& account, const std::string& cursor) = 0;

    // Batch hydration, at most 100 ids per call. Unknown ids are simply
    // absent from the result.
    virtual std::vector<AccountProfile> profiles(const std::vector<AccountId>& ids) = 0;
};

// Replays a previously saved archive: followers/followees of the ego, raw
// followee lists of members, profile metadata. fetch_ego over a replay of
// a fetch-produced archive reproduces it exactly.
class FixtureListProvider : public ListProvider {
public:
    explicit FixtureListProvider(EgoArchive archive, std::size_t page_size = 50);

    std::optional<AccountProfile> resolve(const std::string& handle) override;
    ListPage followers_page(const AccountId& account, const std::string& cursor) override;
    ListPage followees_page(const AccountId& account, const std::string& cursor) override;
    std::vector<AccountProfile> profiles(const std::vector<AccountId>& ids) override;

    std::size_t request_count() const { return requests_; }

private:
    ListPage page_of(const std::vector<AccountId>& ids, const std::string& cursor) const;

    EgoArchive archive_;
    std::size_t page_size_;
    std::size_t requests_ = 0;
};

// Where an interrupted fetch stopped. Serializable so the CLI can resume
// in a later window.
struct ResumeCursor {
    enum class Phase { resolve, followers, followees, members, profiles, done };
    Phase phase = Phase::resolve;
    std::string page_cursor;          // within the phase's current list
    std::size_t member_index = 0;     // into the sorted member sequence
    std::size_t profile_offset = 0;   // ids already hydrated
};

// Accumulated raw state of an in-flight fetch. Not an EgoArchive: its
// invariants only hold once the fetch completes.
struct FetchState {
    std::string handle;
    AccountProfile ego;
    std::int64_t started_at = 0;
    std::set<AccountId> followers;
    std::set<AccountId> followees;
    std::map<AccountId, std::set<AccountId>> member_followees;
    std::map<AccountId, AccountProfile> profiles;
    std::set<AccountId> protected_members;
    ResumeCursor cursor;
};

struct FetchOutcome {
    std::optional<EgoArchive> archive;     // set iff the fetch completed
    std::optional<FetchState> incomplete;  // set iff the budget ran out
    std::size_t requests_used = 0;

    bool complete() const { return archive.has_value(); }
};

// Two-phase acquisition: the ego's follower and followee lists first, then
// the raw followee list of every follower∩followee member, then member
// profile hydration. Stops cleanly when the budget or the per-list page
// cap runs out; resume_fetch continues from the returned state.
// started_at becomes the archive's fetched_at (snapshot start time).
FetchOutcome fetch_ego(const std::string& handle, ListProvider& client,
                       const FetchBudget& budget, std::int64_t started_at);
FetchOutcome resume_fetch(FetchState state, ListProvider& client, const FetchBudget& budget);

std::string fetch_state_to_string(const FetchState& state);
FetchState fetch_state_from_string(const std::string& text);
void save_fetch_state(const FetchState& state, const std::filesystem::path& path);
FetchState load_fetch_state(const std::filesystem::path& path);

}  // namespace egomap
