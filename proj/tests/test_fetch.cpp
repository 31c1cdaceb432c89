#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "egomap/egonet.hpp"
#include "egomap/errors.hpp"
#include "egomap/fetch.hpp"
#include "egomap/http_client.hpp"
#include "support/oracles.hpp"

using namespace egomap;

namespace {

const std::filesystem::path kFixtures = EGOMAP_FIXTURES_DIR;

FetchBudget roomy_budget() {
    FetchBudget budget;
    budget.max_requests_per_window = 100000;
    budget.window_seconds = 900;
    budget.max_pages_per_list = 1000;
    return budget;
}

EgoArchive twenty_account_fixture() {
    std::mt19937_64 rng(7);
    EgoArchive archive = oracles::random_archive(rng, 20);
    validate_archive(archive);
    return archive;
}

}  // namespace

TEST_CASE("replaying the researcher-1 fixture reproduces it exactly") {
    EgoArchive fixture = load_archive(kFixtures / "researcher1" / "archive.json");
    FixtureListProvider client(fixture);
    FetchOutcome outcome = fetch_ego("researcher_1", client, roomy_budget(),
                                     fixture.fetched_at);
    REQUIRE(outcome.complete());
    CHECK(outcome.archive->followers.size() == 251);
    CHECK(outcome.archive->followees.size() == 81);
    CHECK(interaction_community(*outcome.archive).members.size() == 44);
    CHECK(*outcome.archive == fixture);
}

TEST_CASE("empty lists produce an empty archive") {
    EgoArchive empty;
    empty.ego.id = "ego";
    empty.ego.handle = "ego";
    empty.fetched_at = 0;
    FixtureListProvider client(empty);
    FetchOutcome outcome = fetch_ego("ego", client, roomy_budget(), 0);
    REQUIRE(outcome.complete());
    CHECK(outcome.archive->followers.empty());
    CHECK(outcome.archive->followees.empty());
    CHECK(outcome.archive->member_followees.empty());
}

TEST_CASE("unknown handle raises without an archive") {
    EgoArchive fixture = twenty_account_fixture();
    FixtureListProvider client(fixture);
    CHECK_THROWS_AS(fetch_ego("nobody", client, roomy_budget(), 0), UnknownHandleError);
}

TEST_CASE("budget exhaustion is resumable and converges to the one-shot result") {
    EgoArchive fixture = twenty_account_fixture();

    FixtureListProvider oneshot_client(fixture);
    FetchOutcome oneshot =
        fetch_ego("ego", oneshot_client, roomy_budget(), fixture.fetched_at);
    REQUIRE(oneshot.complete());

    FetchBudget tight;
    tight.max_requests_per_window = 3;
    tight.window_seconds = 900;
    tight.max_pages_per_list = 1000;

    FixtureListProvider client(fixture);
    FetchOutcome outcome = fetch_ego("ego", client, tight, fixture.fetched_at);
    REQUIRE_FALSE(outcome.complete());
    REQUIRE(outcome.incomplete.has_value());
    CHECK(outcome.requests_used == 3);

    int windows = 1;
    while (!outcome.complete()) {
        REQUIRE(windows < 10000);
        // serialization round-trip mimics the CLI writing the resume file
        FetchState state = fetch_state_from_string(fetch_state_to_string(*outcome.incomplete));
        outcome = resume_fetch(std::move(state), client, tight);
        CHECK(outcome.requests_used <= 3);
        ++windows;
    }
    CHECK(windows > 1);
    CHECK(*outcome.archive == *oneshot.archive);
}

TEST_CASE("request counts never exceed the budget on fixtures") {
    for (const char* name : {"researcher1", "researcher2"}) {
        EgoArchive fixture = load_archive(kFixtures / name / "archive.json");
        FetchBudget budget;
        budget.max_requests_per_window = 40;
        budget.window_seconds = 900;
        budget.max_pages_per_list = 1000;
        FixtureListProvider client(fixture);
        FetchOutcome outcome =
            fetch_ego(fixture.ego.handle, client, budget, fixture.fetched_at);
        std::size_t last_seen = client.request_count();
        CHECK(last_seen <= 40);
        while (!outcome.complete()) {
            std::size_t before = client.request_count();
            outcome = resume_fetch(std::move(*outcome.incomplete), client, budget);
            CHECK(client.request_count() - before <= 40);
        }
        CHECK(*outcome.archive == fixture);
    }
}

TEST_CASE("protected member keeps its node, empty list and flag") {
    EgoArchive fixture = twenty_account_fixture();
    auto members = interaction_community(fixture).members;
    REQUIRE(!members.empty());
    AccountId shy = *members.begin();
    fixture.profiles[shy].protected_account = true;
    fixture.member_followees[shy] = {};  // what a real fetch would have stored
    validate_archive(fixture);

    FixtureListProvider client(fixture);
    FetchOutcome outcome = fetch_ego("ego", client, roomy_budget(), fixture.fetched_at);
    REQUIRE(outcome.complete());
    CHECK(outcome.archive->member_followees.at(shy).empty());
    CHECK(outcome.archive->profiles.at(shy).protected_account);
    CHECK(interaction_community(*outcome.archive).members.count(shy) == 1);
    CHECK(*outcome.archive == fixture);
}

TEST_CASE("max_pages_per_list caps a single call and stays resumable") {
    EgoArchive fixture = twenty_account_fixture();
    FixtureListProvider client(fixture, /*page_size=*/2);
    FetchBudget budget = roomy_budget();
    budget.max_pages_per_list = 1;  // every multi-page list forces a pause

    FetchOutcome outcome = fetch_ego("ego", client, budget, fixture.fetched_at);
    int rounds = 0;
    while (!outcome.complete()) {
        REQUIRE(++rounds < 10000);
        outcome = resume_fetch(std::move(*outcome.incomplete), client, budget);
    }
    CHECK(*outcome.archive == fixture);
}

TEST_CASE("transient page failures are retried, not truncated") {
    struct FlakyProvider : FixtureListProvider {
        explicit FlakyProvider(EgoArchive archive)
            : FixtureListProvider(std::move(archive)) {}
        int failures_left = 3;
        ListPage followers_page(const AccountId& account,
                                const std::string& cursor) override {
            if (failures_left > 0) {
                --failures_left;
                throw TransientFetchError("flaky");
            }
            return FixtureListProvider::followers_page(account, cursor);
        }
    };
    EgoArchive fixture = twenty_account_fixture();
    FlakyProvider client(fixture);
    FetchOutcome outcome = fetch_ego("ego", client, roomy_budget(), fixture.fetched_at);
    REQUIRE(outcome.complete());
    CHECK(*outcome.archive == fixture);
    CHECK(client.failures_left == 0);
}

TEST_CASE("invalid budgets are rejected") {
    FetchBudget budget;
    budget.max_requests_per_window = 0;
    EgoArchive fixture = twenty_account_fixture();
    FixtureListProvider client(fixture);
    CHECK_THROWS_AS(fetch_ego("ego", client, budget, 0), InvalidSpecError);
}

TEST_CASE("http list provider speaks the endpoint description protocol") {
    using nlohmann::json;
    EgoArchive fixture = twenty_account_fixture();
    FixtureListProvider backing(fixture, /*page_size=*/7);

    httplib::Server server;
    server.Get(R"(/users/by_handle/(.+))", [&](const httplib::Request& req,
                                               httplib::Response& res) {
        if (req.headers.find("Authorization") == req.headers.end() ||
            req.headers.find("Authorization")->second != "Bearer test-token-123") {
            res.status = 401;
            return;
        }
        auto profile = backing.resolve(req.matches[1]);
        if (!profile) {
            res.status = 404;
            return;
        }
        json j = {{"id", profile->id}, {"handle", profile->handle}, {"bio", profile->bio},
                  {"declared_location", profile->declared_location}, {"url", profile->url}};
        res.set_content(j.dump(), "application/json");
    });
    auto hiccups = std::make_shared<std::atomic<int>>(2);  // first pages fail with 503
    auto list_handler = [&](bool followers) {
        return [&backing, followers, hiccups](const httplib::Request& req,
                                              httplib::Response& res) {
            if (followers && hiccups->fetch_sub(1) > 0) {
                res.status = 503;
                return;
            }
            std::string id = req.matches[1];
            std::string cursor = req.get_param_value("cursor");
            ListPage page = followers ? backing.followers_page(id, cursor)
                                      : backing.followees_page(id, cursor);
            json j = {{"ids", page.ids}};
            if (!page.next_cursor.empty()) j["next_cursor"] = page.next_cursor;
            res.set_content(j.dump(), "application/json");
        };
    };
    server.Get(R"(/users/(.+)/followers)", list_handler(true));
    server.Get(R"(/users/(.+)/followees)", list_handler(false));
    server.Get("/users/lookup", [&](const httplib::Request& req, httplib::Response& res) {
        std::string ids_param = req.get_param_value("ids");
        std::vector<AccountId> ids;
        std::string current;
        for (char c : ids_param + ",") {
            if (c == ',') {
                if (!current.empty()) ids.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        json j = json::object();
        j["profiles"] = json::array();
        for (const auto& profile : backing.profiles(ids)) {
            j["profiles"].push_back({{"id", profile.id},
                                     {"handle", profile.handle},
                                     {"bio", profile.bio},
                                     {"declared_location", profile.declared_location},
                                     {"url", profile.url}});
        }
        res.set_content(j.dump(), "application/json");
    });

    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("EGOMAP_API_TOKEN", "test-token-123", 1);
    EndpointConfig config = endpoint_config_from_string(R"({
      "base_url": "http://127.0.0.1:)" + std::to_string(port) + R"(",
      "auth_header": "Authorization",
      "auth_value_template": "Bearer ${EGOMAP_API_TOKEN}",
      "resolve_path": "/users/by_handle/{handle}",
      "followers_path": "/users/{id}/followers",
      "followees_path": "/users/{id}/followees",
      "profiles_path": "/users/lookup",
      "cursor_param": "cursor",
      "page_size_param": "count",
      "page_size": 7
    })");

    HttpListProvider client(config);
    FetchOutcome outcome = fetch_ego("ego", client, roomy_budget(), fixture.fetched_at);
    REQUIRE(outcome.complete());
    CHECK(*outcome.archive == fixture);
    CHECK_THROWS_AS(fetch_ego("nobody", client, roomy_budget(), 0), UnknownHandleError);

    server.stop();
    server_thread.join();
}
