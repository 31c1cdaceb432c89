#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "egomap/archive.hpp"
#include "egomap/attributes.hpp"
#include "egomap/egonet.hpp"
#include "egomap/errors.hpp"

using namespace egomap;

namespace {

const std::filesystem::path kFixtures = EGOMAP_FIXTURES_DIR;
const std::string kCli = EGOMAP_CLI_PATH;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args, const std::filesystem::path& dir) {
    std::filesystem::path out_file = dir / "stdout.txt";
    std::filesystem::path err_file = dir / "stderr.txt";
    std::string command = kCli + " " + args + " >" + out_file.string() + " 2>" +
                          err_file.string();
    int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    };
    result.out = slurp(out_file);
    result.err = slurp(err_file);
    return result;
}

std::filesystem::path fresh_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("egomap_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("fetch from the researcher-1 fixture prints the relations summary") {
    auto dir = fresh_dir("fetch_r1");
    auto fixture = kFixtures / "researcher1" / "archive.json";
    RunResult result = run_cli("fetch --handle researcher_1 --fixture " + fixture.string() +
                                   " --fetched-at 2016-05-12T09:30:00Z --out " +
                                   (dir / "archive.json").string(),
                               dir);
    CHECK(result.exit_code == exit_ok);
    CHECK(result.out == "followers=251 followees=81 community=44\n");
    CHECK(load_archive(dir / "archive.json") == load_archive(fixture));
}

TEST_CASE("fetch with an unknown handle fails cleanly, writing nothing") {
    auto dir = fresh_dir("fetch_unknown");
    auto fixture = kFixtures / "researcher1" / "archive.json";
    RunResult result = run_cli("fetch --handle nobody --fixture " + fixture.string() +
                                   " --out " + (dir / "archive.json").string(),
                               dir);
    CHECK(result.exit_code == exit_unknown_handle);
    CHECK_FALSE(std::filesystem::exists(dir / "archive.json"));
}

TEST_CASE("exhausted budgets leave a resume file and finish on resume") {
    auto dir = fresh_dir("fetch_budget");
    auto fixture = kFixtures / "researcher1" / "archive.json";
    auto out = dir / "archive.json";
    std::string base = "fetch --handle researcher_1 --fixture " + fixture.string() +
                       " --fetched-at 2016-05-12T09:30:00Z --budget-requests 3 --out " +
                       out.string();
    RunResult result = run_cli(base, dir);
    CHECK(result.exit_code == exit_budget_exhausted);
    CHECK_FALSE(std::filesystem::exists(out));
    auto resume = dir / "archive.json.resume.json";
    REQUIRE(std::filesystem::exists(resume));

    int rounds = 0;
    while (result.exit_code == exit_budget_exhausted) {
        REQUIRE(++rounds < 1000);
        result = run_cli(base + " --resume " + resume.string(), dir);
    }
    CHECK(result.exit_code == exit_ok);
    CHECK(load_archive(out) == load_archive(fixture));
}

TEST_CASE("code writes a 110-row template for researcher 2") {
    auto dir = fresh_dir("code_r2");
    auto sheet = dir / "sheet.csv";
    RunResult result =
        run_cli("code --archive " + (kFixtures / "researcher2" / "archive.json").string() +
                    " --out " + sheet.string(),
                dir);
    CHECK(result.exit_code == exit_ok);
    CodingSheet loaded = load_coding_sheet_file(sheet);
    CHECK(loaded.rows.size() == 110);
}

TEST_CASE("code on an empty archive writes a header-only sheet") {
    auto dir = fresh_dir("code_empty");
    EgoArchive empty;
    empty.ego.id = "ego";
    empty.ego.handle = "ego";
    auto archive_path = dir / "empty.json";
    save_archive(empty, archive_path);
    auto sheet = dir / "sheet.csv";
    RunResult result = run_cli(
        "code --archive " + archive_path.string() + " --out " + sheet.string(), dir);
    CHECK(result.exit_code == exit_ok);
    CHECK(slurp_file(sheet) == "id,handle,bio,location,url,geography,affiliation,evidence\n");
}

TEST_CASE("merge preserves existing codes and appends new members") {
    auto dir = fresh_dir("code_merge");
    auto sheet = dir / "sheet.csv";
    auto archive_path = kFixtures / "researcher1" / "archive.json";
    REQUIRE(run_cli("code --archive " + archive_path.string() + " --out " + sheet.string(),
                    dir)
                .exit_code == exit_ok);

    // analyst codes one row, then the template is regenerated with --merge
    CodingSheet partial = load_coding_sheet_file(sheet);
    partial.rows[5].geography = Geography::local;
    partial.rows[5].affiliation = Affiliation::politician;
    partial.rows[5].evidence = "manual check";
    AccountId coded_id = partial.rows[5].id;
    partial.rows.erase(partial.rows.begin());  // pretend one member is new
    AccountId missing_id = load_coding_sheet_file(sheet).rows[0].id;
    save_coding_sheet(partial, sheet);

    REQUIRE(run_cli("code --merge --archive " + archive_path.string() + " --out " +
                        sheet.string(),
                    dir)
                .exit_code == exit_ok);
    CodingSheet merged = load_coding_sheet_file(sheet);
    CHECK(merged.rows.size() == 44);
    std::map<AccountId, CodingRow> by_id;
    for (const auto& row : merged.rows) by_id[row.id] = row;
    CHECK(by_id.at(coded_id).affiliation == Affiliation::politician);
    CHECK(by_id.at(coded_id).evidence == "manual check");
    CHECK(by_id.at(missing_id).affiliation == Affiliation::unknown);

    // merged output equals the template with the coded row carried over
    EgoArchive archive = load_archive(archive_path);
    CodingSheet expected =
        generate_coding_template(interaction_community(archive), archive);
    for (auto& row : expected.rows) {
        if (row.id == coded_id) {
            row.geography = Geography::local;
            row.affiliation = Affiliation::politician;
            row.evidence = "manual check";
        }
    }
    CHECK(coding_sheet_to_string(merged) == coding_sheet_to_string(expected));
}

TEST_CASE("pipeline reports for both fixtures carry the published contrasts") {
    auto dir = fresh_dir("pipeline_reports");
    RunResult r1 = run_cli(
        "pipeline --config " + (kFixtures / "researcher1" / "config.json").string() +
            " --out-dir " + (dir / "r1").string(),
        dir);
    CHECK(r1.exit_code == exit_ok);
    std::string report1 = slurp_file(dir / "r1" / "report.txt");
    CHECK(report1.find("profile=globally_academic\n") != std::string::npos);
    CHECK(report1.find("relations.community=44\n") != std::string::npos);

    RunResult r2 = run_cli(
        "pipeline --config " + (kFixtures / "researcher2" / "config.json").string() +
            " --out-dir " + (dir / "r2").string(),
        dir);
    CHECK(r2.exit_code == exit_ok);
    std::string report2 = slurp_file(dir / "r2" / "report.txt");
    CHECK(report2.find("profile=locally_engaged\n") != std::string::npos);
    CHECK(report2.find("non_academic_share=45%\n") != std::string::npos);

    for (const char* name :
         {"report.txt", "report.json", "network.svg", "network.graphml", "network.dot",
          "network.json"}) {
        CHECK(std::filesystem::exists(dir / "r1" / name));
        CHECK(std::filesystem::exists(dir / "r2" / name));
    }
}

TEST_CASE("a sheet with missing rows aborts the pipeline with their ids") {
    auto dir = fresh_dir("pipeline_missing");
    CodingSheet sheet =
        load_coding_sheet_file(kFixtures / "researcher2" / "coding.csv");
    AccountId dropped = sheet.rows[3].id;
    sheet.rows.erase(sheet.rows.begin() + 3);
    auto edited = dir / "coding.csv";
    save_coding_sheet(sheet, edited);

    RunResult result = run_cli(
        "pipeline --config " + (kFixtures / "researcher2" / "config.json").string() +
            " --sheet " + edited.string() + " --out-dir " + (dir / "out").string(),
        dir);
    CHECK(result.exit_code == exit_missing_members);
    CHECK(result.err.find(dropped) != std::string::npos);
    CHECK_FALSE(std::filesystem::exists(dir / "out" / "report.txt"));
}

TEST_CASE("synth runs are deterministic across invocations") {
    auto dir = fresh_dir("synth_det");
    auto spec = kFixtures / "synth" / "two_pole_spec.json";
    REQUIRE(run_cli("synth --spec " + spec.string() + " --out-dir " + (dir / "a").string(),
                    dir)
                .exit_code == exit_ok);
    REQUIRE(run_cli("synth --spec " + spec.string() + " --out-dir " + (dir / "b").string(),
                    dir)
                .exit_code == exit_ok);
    for (const char* name : {"archive.json", "ground_truth.json", "coding.csv"}) {
        CHECK(slurp_file(dir / "a" / name) == slurp_file(dir / "b" / name));
        CHECK(!slurp_file(dir / "a" / name).empty());
    }
}

TEST_CASE("synthetic output drives the full pipeline unattended") {
    auto dir = fresh_dir("synth_pipeline");
    auto spec = kFixtures / "synth" / "two_pole_spec.json";
    REQUIRE(run_cli("synth --spec " + spec.string() + " --out-dir " + (dir / "data").string(),
                    dir)
                .exit_code == exit_ok);
    RunResult result = run_cli(
        "pipeline --archive " + (dir / "data" / "archive.json").string() + " --sheet " +
            (dir / "data" / "coding.csv").string() + " --home-country Testland --out-dir " +
            (dir / "out").string(),
        dir);
    CHECK(result.exit_code == exit_ok);
    std::string report = slurp_file(dir / "out" / "report.txt");
    CHECK(report.find("profile=locally_engaged\n") != std::string::npos);
}

TEST_CASE("pipeline survives an empty community end to end") {
    auto dir = fresh_dir("pipeline_empty");
    EgoArchive empty;
    empty.ego.id = "ego";
    empty.ego.handle = "ego";
    empty.followers = {"only_follower"};
    empty.followees = {"only_followee"};
    empty.profiles["only_follower"].id = "only_follower";
    empty.profiles["only_followee"].id = "only_followee";
    save_archive(empty, dir / "archive.json");
    save_coding_sheet(CodingSheet{}, dir / "coding.csv");

    RunResult result = run_cli(
        "pipeline --archive " + (dir / "archive.json").string() + " --sheet " +
            (dir / "coding.csv").string() + " --home-country NL --out-dir " +
            (dir / "out").string(),
        dir);
    CHECK(result.exit_code == exit_ok);
    std::string report = slurp_file(dir / "out" / "report.txt");
    CHECK(report.find("relations.community=0\n") != std::string::npos);
    CHECK(report.find("profile=mixed\n") != std::string::npos);
    CHECK(slurp_file(dir / "out" / "network.svg").find("<svg") != std::string::npos);
}

TEST_CASE("stats prints the key=value report to stdout") {
    auto dir = fresh_dir("stats");
    RunResult result = run_cli(
        "stats --config " + (kFixtures / "researcher1" / "config.json").string(), dir);
    CHECK(result.exit_code == exit_ok);
    CHECK(result.out.find("relations.followers=251\n") != std::string::npos);
    CHECK(result.out.find("academic_share=95%\n") != std::string::npos);
}

TEST_CASE("map renders an svg") {
    auto dir = fresh_dir("map");
    auto out = dir / "map.svg";
    RunResult result = run_cli(
        "map --config " + (kFixtures / "researcher2" / "config.json").string() +
            " --color-by affiliation --shape-by none --out " + out.string(),
        dir);
    CHECK(result.exit_code == exit_ok);
    std::string svg = slurp_file(out);
    CHECK(svg.find("<svg") != std::string::npos);
}
