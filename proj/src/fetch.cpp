#include "egomap/fetch.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "egomap/errors.hpp"

namespace egomap {

using nlohmann::json;

void FetchBudget::validate() const {
    if (max_requests_per_window == 0 || window_seconds == 0 || max_pages_per_list == 0) {
        throw InvalidSpecError("fetch budget values must be strictly positive");
    }
}

// ------------------------------------------------------- FixtureListProvider

FixtureListProvider::FixtureListProvider(EgoArchive archive, std::size_t page_size)
    : archive_(std::move(archive)), page_size_(page_size == 0 ? 1 : page_size) {}

std::optional<AccountProfile> FixtureListProvider::resolve(const std::string& handle) {
    ++requests_;
    if (handle == archive_.ego.handle || handle == archive_.ego.id) {
        return archive_.ego;
    }
    return std::nullopt;
}

ListPage FixtureListProvider::page_of(const std::vector<AccountId>& ids,
                                      const std::string& cursor) const {
    std::size_t offset = cursor.empty() ? 0 : std::stoull(cursor);
    ListPage page;
    for (std::size_t i = offset; i < ids.size() && i < offset + page_size_; ++i) {
        page.ids.push_back(ids[i]);
    }
    std::size_t next = offset + page.ids.size();
    if (next < ids.size()) page.next_cursor = std::to_string(next);
    return page;
}

ListPage FixtureListProvider::followers_page(const AccountId& account,
                                             const std::string& cursor) {
    ++requests_;
    if (account != archive_.ego.id) return {};
    std::vector<AccountId> ids(archive_.followers.begin(), archive_.followers.end());
    return page_of(ids, cursor);
}

ListPage FixtureListProvider::followees_page(const AccountId& account,
                                             const std::string& cursor) {
    ++requests_;
    if (account == archive_.ego.id) {
        std::vector<AccountId> ids(archive_.followees.begin(), archive_.followees.end());
        return page_of(ids, cursor);
    }
    auto profile = archive_.profiles.find(account);
    if (profile != archive_.profiles.end() && profile->second.protected_account) {
        throw ProtectedAccountError(account);
    }
    auto it = archive_.member_followees.find(account);
    if (it == archive_.member_followees.end()) return {};
    std::vector<AccountId> ids(it->second.begin(), it->second.end());
    return page_of(ids, cursor);
}

std::vector<AccountProfile> FixtureListProvider::profiles(const std::vector<AccountId>& ids) {
    ++requests_;
    std::vector<AccountProfile> result;
    for (const auto& id : ids) {
        auto it = archive_.profiles.find(id);
        if (it != archive_.profiles.end()) result.push_back(it->second);
    }
    return result;
}

// ------------------------------------------------------------------ fetching

namespace {

constexpr std::size_t kProfileBatch = 100;
constexpr int kPageRetries = 5;

std::vector<AccountId> sorted_members(const FetchState& state) {
    std::vector<AccountId> members;
    std::set_intersection(state.followers.begin(), state.followers.end(),
                          state.followees.begin(), state.followees.end(),
                          std::back_inserter(members));
    return members;
}

struct TokenBudget {
    std::atomic<std::size_t> remaining;
    std::size_t used = 0;

    bool spend() {
        if (remaining == 0) return false;
        --remaining;
        ++used;
        return true;
    }
};

// Retries transient page failures; every attempt costs one token. Returns
// nullopt when the budget is exhausted before a page lands.
template <typename Call>
std::optional<ListPage> fetch_page(TokenBudget& budget, Call&& call) {
    for (int attempt = 0; attempt < kPageRetries; ++attempt) {
        if (!budget.spend()) return std::nullopt;
        try {
            return call();
        } catch (const TransientFetchError&) {
            if (attempt + 1 == kPageRetries) throw;
        }
    }
    return std::nullopt;
}

EgoArchive finalize(FetchState&& state) {
    EgoArchive archive;
    archive.ego = state.ego;
    archive.fetched_at = state.started_at;
    archive.followers = std::move(state.followers);
    archive.followees = std::move(state.followees);
    archive.member_followees = std::move(state.member_followees);
    archive.profiles = std::move(state.profiles);
    archive.profiles.erase(archive.ego.id);

    auto ensure_profile = [&](const AccountId& id) {
        if (id == archive.ego.id) return;
        auto [it, inserted] = archive.profiles.try_emplace(id);
        if (inserted) it->second.id = id;
    };
    for (const auto& id : archive.followers) ensure_profile(id);
    for (const auto& id : archive.followees) ensure_profile(id);
    for (const auto& [member, followees] : archive.member_followees) {
        for (const auto& id : followees) ensure_profile(id);
    }
    for (const auto& member : state.protected_members) {
        archive.profiles[member].id = member;
        archive.profiles[member].protected_account = true;
    }
    validate_archive(archive);
    return archive;
}

}  // namespace

FetchOutcome resume_fetch(FetchState state, ListProvider& client, const FetchBudget& budget) {
    budget.validate();
    TokenBudget tokens{budget.max_requests_per_window};
    using Phase = ResumeCursor::Phase;

    auto exhausted = [&]() {
        FetchOutcome outcome;
        outcome.incomplete = std::move(state);
        outcome.requests_used = tokens.used;
        return outcome;
    };

    if (state.cursor.phase == Phase::resolve) {
        if (!tokens.spend()) return exhausted();
        auto profile = client.resolve(state.handle);
        if (!profile) throw UnknownHandleError(state.handle);
        state.ego = *profile;
        state.ego.protected_account = false;
        state.cursor.phase = Phase::followers;
        state.cursor.page_cursor.clear();
    }

    // Ego list pages. The ego never keeps herself in her own lists.
    for (Phase phase : {Phase::followers, Phase::followees}) {
        if (state.cursor.phase != phase) continue;
        auto& target = phase == Phase::followers ? state.followers : state.followees;
        std::size_t pages = 0;
        while (true) {
            if (pages == budget.max_pages_per_list) return exhausted();
            auto page = fetch_page(tokens, [&] {
                return phase == Phase::followers
                           ? client.followers_page(state.ego.id, state.cursor.page_cursor)
                           : client.followees_page(state.ego.id, state.cursor.page_cursor);
            });
            if (!page) return exhausted();
            ++pages;
            for (auto& id : page->ids) {
                if (id != state.ego.id) target.insert(std::move(id));
            }
            state.cursor.page_cursor = page->next_cursor;
            if (state.cursor.page_cursor.empty()) break;
        }
        state.cursor.phase = phase == Phase::followers ? Phase::followees : Phase::members;
        state.cursor.page_cursor.clear();
        state.cursor.member_index = 0;
    }

    if (state.cursor.phase == Phase::members) {
        auto members = sorted_members(state);
        while (state.cursor.member_index < members.size()) {
            const AccountId& member = members[state.cursor.member_index];
            auto& list = state.member_followees[member];
            std::size_t pages = 0;
            while (true) {
                if (pages == budget.max_pages_per_list) return exhausted();
                std::optional<ListPage> page;
                try {
                    page = fetch_page(tokens, [&] {
                        return client.followees_page(member, state.cursor.page_cursor);
                    });
                } catch (const ProtectedAccountError&) {
                    list.clear();
                    state.protected_members.insert(member);
                    break;
                }
                if (!page) return exhausted();
                ++pages;
                for (auto& id : page->ids) {
                    if (id != member) list.insert(std::move(id));
                }
                state.cursor.page_cursor = page->next_cursor;
                if (state.cursor.page_cursor.empty()) break;
            }
            state.cursor.member_index += 1;
            state.cursor.page_cursor.clear();
        }
        state.cursor.phase = Phase::profiles;
        state.cursor.profile_offset = 0;
    }

    if (state.cursor.phase == Phase::profiles) {
        auto members = sorted_members(state);
        while (state.cursor.profile_offset < members.size()) {
            if (!tokens.spend()) return exhausted();
            std::size_t end =
                std::min(state.cursor.profile_offset + kProfileBatch, members.size());
            std::vector<AccountId> chunk(members.begin() + state.cursor.profile_offset,
                                         members.begin() + end);
            for (auto& profile : client.profiles(chunk)) {
                if (std::find(chunk.begin(), chunk.end(), profile.id) != chunk.end()) {
                    state.profiles[profile.id] = std::move(profile);
                }
            }
            state.cursor.profile_offset = end;
        }
        state.cursor.phase = Phase::done;
    }

    FetchOutcome outcome;
    outcome.requests_used = tokens.used;
    outcome.archive = finalize(std::move(state));
    return outcome;
}

FetchOutcome fetch_ego(const std::string& handle, ListProvider& client,
                       const FetchBudget& budget, std::int64_t started_at) {
    FetchState state;
    state.handle = handle;
    state.started_at = started_at;
    return resume_fetch(std::move(state), client, budget);
}

// ------------------------------------------------------- state serialization

namespace {

const char* phase_token(ResumeCursor::Phase phase) {
    switch (phase) {
        case ResumeCursor::Phase::resolve: return "resolve";
        case ResumeCursor::Phase::followers: return "followers";
        case ResumeCursor::Phase::followees: return "followees";
        case ResumeCursor::Phase::members: return "members";
        case ResumeCursor::Phase::profiles: return "profiles";
        case ResumeCursor::Phase::done: return "done";
    }
    return "resolve";
}

ResumeCursor::Phase phase_from_token(const std::string& token) {
    for (auto phase : {ResumeCursor::Phase::resolve, ResumeCursor::Phase::followers,
                       ResumeCursor::Phase::followees, ResumeCursor::Phase::members,
                       ResumeCursor::Phase::profiles, ResumeCursor::Phase::done}) {
        if (token == phase_token(phase)) return phase;
    }
    throw SchemaViolationError("unknown fetch phase '" + token + "'");
}

json profile_json(const AccountProfile& profile) {
    json j;
    j["id"] = profile.id;
    j["handle"] = profile.handle;
    j["bio"] = profile.bio;
    j["declared_location"] = profile.declared_location;
    j["url"] = profile.url;
    j["protected"] = profile.protected_account;
    return j;
}

AccountProfile profile_from(const json& j) {
    AccountProfile profile;
    profile.id = j.value("id", std::string{});
    profile.handle = j.value("handle", std::string{});
    profile.bio = j.value("bio", std::string{});
    profile.declared_location = j.value("declared_location", std::string{});
    profile.url = j.value("url", std::string{});
    profile.protected_account = j.value("protected", false);
    return profile;
}

}  // namespace

std::string fetch_state_to_string(const FetchState& state) {
    json j;
    j["handle"] = state.handle;
    j["ego"] = profile_json(state.ego);
    j["started_at"] = format_utc(state.started_at);
    j["followers"] = state.followers;
    j["followees"] = state.followees;
    j["member_followees"] = json::object();
    for (const auto& [member, followees] : state.member_followees) {
        j["member_followees"][member] = followees;
    }
    j["profiles"] = json::object();
    for (const auto& [id, profile] : state.profiles) {
        j["profiles"][id] = profile_json(profile);
    }
    j["protected_members"] = state.protected_members;
    j["cursor"] = {{"phase", phase_token(state.cursor.phase)},
                   {"page_cursor", state.cursor.page_cursor},
                   {"member_index", state.cursor.member_index},
                   {"profile_offset", state.cursor.profile_offset}};
    return j.dump(2) + "\n";
}

FetchState fetch_state_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
        throw SchemaViolationError("resume state is not a JSON object");
    }
    FetchState state;
    state.handle = j.value("handle", std::string{});
    state.ego = profile_from(j.at("ego"));
    state.started_at = parse_utc(j.at("started_at").get<std::string>());
    for (const auto& id : j.at("followers")) state.followers.insert(id.get<std::string>());
    for (const auto& id : j.at("followees")) state.followees.insert(id.get<std::string>());
    for (const auto& item : j.at("member_followees").items()) {
        auto& list = state.member_followees[item.key()];
        for (const auto& id : item.value()) list.insert(id.get<std::string>());
    }
    for (const auto& item : j.at("profiles").items()) {
        state.profiles[item.key()] = profile_from(item.value());
    }
    for (const auto& id : j.at("protected_members")) {
        state.protected_members.insert(id.get<std::string>());
    }
    const auto& cursor = j.at("cursor");
    state.cursor.phase = phase_from_token(cursor.at("phase").get<std::string>());
    state.cursor.page_cursor = cursor.value("page_cursor", std::string{});
    state.cursor.member_index = cursor.value("member_index", std::size_t{0});
    state.cursor.profile_offset = cursor.value("profile_offset", std::size_t{0});
    return state;
}

void save_fetch_state(const FetchState& state, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << fetch_state_to_string(state);
    if (!out.good()) throw IoError("short write to '" + path.string() + "'");
}

FetchState load_fetch_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return fetch_state_from_string(buffer.str());
}

}  // namespace egomap
