// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "coopvanet/cli.hpp"

using namespace coopvanet;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(line);
    }
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "coopvanet_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const auto path = scratch_dir() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"enumerate", "--bogus"}).code == kExitUsage);
    CHECK(run({"payoffs", "--structure", "99"}).code != kExitOk);
    CHECK(run({"payoffs", "--structure", "{1,2}"}).code == kExitUsage);
}

TEST_CASE("help and version exit with 0") {
    const auto help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("enumerate") != std::string::npos);
    const auto version = run({"--version"});
    CHECK(version.code == kExitOk);
    CHECK(version.out == std::string(COOPVANET_VERSION) + "\n");
}

TEST_CASE("enumerate lists the fifteen structures with table labels") {
    const auto r = run({"enumerate"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 16);
    CHECK(rows[0] == "structure_id,table_label,structure,normalized,normalized_id");
    CHECK(rows[1] == "1,C1,\"{1,2,3,4}\",\"{1,2,3,4}\",1");
    CHECK(rows[15] == "15,C4,\"{1},{2},{3},{4}\",\"{1},{2},{3},{4}\",15");
    CHECK(r.out.find("\r\n") != std::string::npos);
}

TEST_CASE("core reports the stability verdict") {
    const auto r = run({"core"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("condition 1 (positive weights): holds") != std::string::npos);
    CHECK(r.out.find("grand vector in core") != std::string::npos);
    CHECK(r.out.find("grand vector:") != std::string::npos);
}

TEST_CASE("payoffs for the all-singleton structure") {
    const auto r = run({"payoffs", "--structure", "C4"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] ==
          "d_km,structure_id,table_label,structure,player,role,share,zeta,chi,throughput,payment,"
          "revenue,cost,payoff");
    CHECK(rows[1].ends_with(",1,vehicle,0.6,0,0,0.24,0,,,2.4"));
    CHECK(rows[2].ends_with(",2,vehicle,0.6,0,0,0.24,0,,,2.4"));
    CHECK(rows[3].ends_with(",3,rsu,,,,,,0,0,0"));
    CHECK(rows[4].ends_with(",4,rsu,,,,,,0,0,0"));
}

TEST_CASE("payoffs accept ids, labels and explicit partitions alike") {
    const auto by_id = run({"payoffs", "--structure", "15"});
    const auto by_label = run({"payoffs", "--structure", "C4"});
    const auto by_spec = run({"payoffs", "--structure", "{1},{2},{3},{4}"});
    CHECK(by_id.out == by_label.out);
    CHECK(by_id.out == by_spec.out);
}

TEST_CASE("payoffs over a d-sweep emit one block per range") {
    const auto r = run({"payoffs", "--structure", "C1", "--d-sweep", "0.1,0.2,0.3"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(r.out);
    CHECK(rows.size() == 1 + 3 * 4);
    CHECK(rows[1].starts_with("0.1,1,C1,"));
    CHECK(rows[12].starts_with("0.3,1,C1,"));
}

TEST_CASE("simulate output is byte-identical for a fixed seed") {
    const std::vector<std::string> args{"simulate", "--slots", "20000", "--seed", "5"};
    const auto a = run(args);
    const auto b = run(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    const auto rows = lines(a.out);
    CHECK(rows[0] == "player,quantity,estimate,stderr,n_slots,seed,analytic,z_score");
    CHECK(rows.size() == 1 + 4 * 3);
    CHECK(rows[1].starts_with("1,throughput,"));
    CHECK(rows[1].find(",20000,5,") != std::string::npos);
}

TEST_CASE("simulate end-to-end mode runs from positions") {
    const auto r = run({"simulate", "--slots", "2000", "--end-to-end", "--placement", "grid"});
    CHECK(r.code == kExitOk);
}

TEST_CASE("encounter sweep writes CSV, manifest and an encounter section") {
    const auto csv = scratch_dir() / "enc.csv";
    const auto section = scratch_dir() / "enc.json";
    const auto r = run({"encounter", "--slots", "2000", "--seed", "3", "--d-sweep", "0.25",
                        "--out", csv.string(), "--encounter-json", section.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    const auto rows = lines(slurp(csv));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "d_km,pair,estimate,stderr,analytic");
    CHECK(rows[1].starts_with("0.25,rsu3-vehicle1,"));
    const auto manifest = nlohmann::json::parse(slurp(csv.string() + ".manifest.json"));
    CHECK(manifest.at("command") == "encounter");
    CHECK(manifest.at("seed") == 3);
    CHECK(manifest.at("config_path") == "<built-in default>");
    CHECK(manifest.at("tool_version") == COOPVANET_VERSION);
    const auto enc = nlohmann::json::parse(slurp(section));
    CHECK(enc.at("matrix").size() == 2);

    const auto again = scratch_dir() / "enc2.csv";
    run({"encounter", "--slots", "2000", "--seed", "3", "--d-sweep", "0.25", "--out",
         again.string()});
    CHECK(slurp(csv) == slurp(again));
}

TEST_CASE("invalid configuration exits with 3 and lists the problems") {
    const auto path = write_file("bad.json", R"({
      "game": {"K": 2, "M": 2, "p": 1.2, "delta": 0.5, "price": 1.5, "cost_fwd": -0.5,
               "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1, "mu": 1},
      "encounter": {"matrix": 0.5}
    })");
    const auto r = run({"check", "--config", path.string()});
    CHECK(r.code == kExitInvalidConfig);
    CHECK(r.err.find("probability out of range") != std::string::npos);
    CHECK(r.err.find("negative value") != std::string::npos);
    CHECK(run({"core", "--config", "/nonexistent.json"}).code == kExitInvalidConfig);
}

TEST_CASE("check passes on the default and on a user config") {
    const auto r = run({"check"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).size() == 10);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const auto path = write_file("weights.json", R"({
      "game": {"K": 2, "M": 2, "p": [0.3, 0.8], "delta": [[0.1, 0.9], [0.4, 0.2]],
               "price": [[1, 2], [3, 0.5]], "cost_fwd": 0.1, "cost_rcv": 0.05,
               "alpha": 2, "beta": 2, "gamma": 1, "mu": 1},
      "encounter": {"matrix": [[0.2, 0.7], [0.9, 0.1]]}
    })");
    const auto custom = run({"check", "--config", path.string()});
    CHECK(custom.code == kExitOk);
    CHECK(custom.out.find("SKIP pricing_cancellation") != std::string::npos);
}
