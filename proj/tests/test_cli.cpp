#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trisurf/cli.hpp"

using trisurf::run_cli;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("exact subcommand reports the N=1 histogram") {
    const CliResult r = cli({"exact", "-N", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["genus_histogram"]["0"] == 12);
    CHECK(j["genus_histogram"]["1"] == 3);
    CHECK(j["disconnected"] == 0);
    CHECK(j["config"]["command"] == "exact");
}

TEST_CASE("maxgenus subcommand") {
    const CliResult r = cli({"maxgenus", "-N", "1"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["s_value"] == "6/5");
    CHECK(j["exact"] == "3");
    CHECK(j["probability"] == "1/5");
    CHECK(j["asymptotic"] == 5.0);
}

TEST_CASE("sysdist subcommand") {
    const CliResult r = cli({"sysdist", "--kmax", "4"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["k"] == 3);
    CHECK(std::abs(j["rows"][0]["probability"].get<double>() - 0.3934693402873666) < 1e-9);
    CHECK(std::abs(j["rows"][1]["probability"].get<double>() - 0.38340049956420363) < 1e-9);

    const CliResult csv = cli({"sysdist", "--kmax", "4", "--format", "csv"});
    CHECK(csv.out.rfind("k,systole,probability\n", 0) == 0);
}

TEST_CASE("bounds subcommand") {
    const CliResult r = cli({"bounds", "--x", "1.0", "--m2", "0.5"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["bound"].get<double>() - std::exp(-0.5)) < 1e-12);

    const CliResult grid = cli({"bounds", "--x", "3.0", "--grid", "5", "--format", "csv"});
    REQUIRE(grid.code == 0);
    CHECK(std::count(grid.out.begin(), grid.out.end(), '\n') == 6);  // header + 5 rows

    const CliResult lower = cli({"bounds", "--x", "1.0", "--m2", "0.5", "--m1", "0.8"});
    REQUIRE(lower.code == 0);
    CHECK(nlohmann::json::parse(lower.out)["systole_at_least"] == 0.8);
    CHECK(cli({"bounds", "--x", "1.0", "--m1", "-2"}).code == 3);
}

TEST_CASE("sample with dump and reload") {
    const std::string path = "test_cli_pairing.json";
    const CliResult r = cli({"sample", "-N", "2", "--seed", "11", "--dump", path, "--out", "summary1.json"});
    REQUIRE(r.code == 0);

    std::ifstream f(path);
    REQUIRE(f.good());
    nlohmann::json dumped;
    f >> dumped;
    CHECK(dumped.size() == 6);  // 3N pairs, 1-based labels
    for (const auto& pr : dumped) {
        CHECK(pr[0].get<int>() >= 1);
        CHECK(pr[1].get<int>() <= 12);
    }

    const CliResult r2 = cli({"sample", "--load", path});
    REQUIRE(r2.code == 0);
    const auto j2 = nlohmann::json::parse(r2.out);
    std::ifstream s1("summary1.json");
    nlohmann::json j1;
    s1 >> j1;
    CHECK(j1["surface"] == j2["surface"]);
    std::remove(path.c_str());
    std::remove("summary1.json");
}

TEST_CASE("sample reports census with words") {
    const CliResult r = cli({"sample", "-N", "1", "--seed", "3", "--words", "LR", "--trace-cap", "8"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["census"]["counts"].contains("LR"));
    CHECK(j["census"]["lht"].is_array());
}

TEST_CASE("census runs end to end and is byte-reproducible") {
    const std::vector<std::string> args{"census", "-N", "4", "--samples", "500",
                                        "--seed", "31337", "--words", "LR,LLR"};
    const CliResult a = cli(args);
    const CliResult b = cli(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);

    const auto j = nlohmann::json::parse(a.out);
    CHECK(j["samples_requested"] == 500);
    CHECK(j["classes"][0]["word"] == "LR");
    CHECK(j["classes"][0]["lambda"] == "1/2");

    // csv: header plus one row per occupied histogram bin
    std::vector<std::string> csv_args = args;
    csv_args.push_back("--format");
    csv_args.push_back("csv");
    const CliResult c = cli(csv_args);
    std::size_t bins = 0;
    for (const auto& cls : j["classes"]) bins += cls["histogram"].size();
    CHECK(static_cast<std::size_t>(std::count(c.out.begin(), c.out.end(), '\n')) == bins + 1);
}

TEST_CASE("census with the max-genus filter at odd N") {
    const CliResult r = cli({"census", "-N", "3", "--samples", "3000", "--seed", "8",
                             "--words", "LR", "--filter", "maxgenus"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["samples_accepted"].get<long long>() > 0);
    CHECK(j["filter"].get<std::string>().find("maximal genus") != std::string::npos);
}

TEST_CASE("duplicate words are deduplicated with a warning") {
    const CliResult r = cli({"census", "-N", "2", "--samples", "200", "--seed", "5",
                             "--words", "LR,RL"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("duplicates class") != std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["classes"].size() == 1);
}

TEST_CASE("exit codes: flags 2, guards 3") {
    CHECK(cli({"no-such-command"}).code == 2);
    CHECK(cli({"census", "-N", "2"}).code == 2);            // missing required --words
    CHECK(cli({"exact", "-N", "9"}).code == 3);             // enumeration guard
    CHECK(cli({"sample", "-N", "0", "--seed", "1"}).code == 3);
    CHECK(cli({"census", "-N", "2", "--samples", "100", "--seed", "1", "--words", "LX"}).code == 3);
    CHECK(cli({"census", "-N", "3", "--samples", "100", "--seed", "1", "--words", "LR",
               "--filter", "window:2"}).code == 3);         // window needs even N
    CHECK(cli({"bounds", "--x", "1.0", "--m2", "-1"}).code == 3);
}

TEST_CASE("unwritable output paths report failure") {
    const CliResult r = cli({"sysdist", "--kmax", "3", "--out", "/no/such/dir/report.json"});
    CHECK(r.code == 1);
    CHECK(r.err.find("/no/such/dir/report.json") != std::string::npos);
}

TEST_CASE("seed is generated and echoed when missing") {
    const CliResult r = cli({"sample", "-N", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("no --seed given") != std::string::npos);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"].contains("seed"));
}
