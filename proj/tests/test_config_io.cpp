// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "coopvanet/config_io.hpp"
#include "coopvanet/csv.hpp"
#include "coopvanet/geo_sim.hpp"

using namespace coopvanet;

namespace {

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
    return std::any_of(errors.begin(), errors.end(),
                       [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

std::vector<std::string> errors_of(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.errors();
    }
    return {};
}

}  // namespace

TEST_CASE("the built-in default holds the reference parameters") {
    const auto project = default_project_config();
    const auto& cfg = project.game;
    CHECK(cfg.K == 2);
    CHECK(cfg.M == 2);
    CHECK(cfg.p == std::vector<double>{0.6, 0.6});
    CHECK(cfg.delta == Matrix{{0.5, 0.5}, {0.5, 0.5}});
    CHECK(cfg.price[1][0] == 1.5);
    CHECK(cfg.cost_fwd[0][1] == 0.5);
    CHECK(cfg.cost_rcv[1][1] == 0.2);
    CHECK(cfg.alpha == std::vector<double>{10, 10});
    CHECK(cfg.mu == std::vector<double>{1, 1});
    REQUIRE(project.geometry.has_value());
    CHECK(project.encounter_source == EncounterSource::analytic);
    CHECK(cfg.enc[0][0] == analytic_pair_encounter(0.3, 1.0));
}

TEST_CASE("the shipped parameter file matches the built-in default") {
    const std::string path = std::string(COOPVANET_SOURCE_DIR) + "/configs/default.json";
    std::ifstream in(path);
    REQUIRE(in.good());
    const auto file = nlohmann::json::parse(in);
    CHECK(file == nlohmann::json::parse(default_config_text()));
}

TEST_CASE("explicit arrays and an explicit encounter matrix") {
    const auto project = parse_config(R"({
      "game": {"K": 2, "M": 1, "p": [0.2, 0.7], "delta": [[0.1], [0.3]],
               "price": [[1, 2]], "cost_fwd": 0, "cost_rcv": [[0.5, 0.25]],
               "alpha": [1, 2], "beta": 1, "gamma": [3], "mu": 4},
      "encounter": {"matrix": [[0.9, 0.4]]}
    })");
    const auto& cfg = project.game;
    CHECK(project.encounter_source == EncounterSource::matrix);
    CHECK_FALSE(project.geometry.has_value());
    CHECK(cfg.p == std::vector<double>{0.2, 0.7});
    CHECK(cfg.delta == Matrix{{0.1}, {0.3}});
    CHECK(cfg.enc == Matrix{{0.9, 0.4}});
    CHECK(cfg.cost_fwd == Matrix{{0.0, 0.0}});
    CHECK(cfg.gamma == std::vector<double>{3});
}

TEST_CASE("a scalar encounter matrix broadcasts") {
    const auto project = parse_config(R"({
      "game": {"K": 2, "M": 2, "p": 0.6, "delta": 0.5, "price": 1.5, "cost_fwd": 0.5,
               "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1, "mu": 1},
      "encounter": {"matrix": 0.5}
    })");
    CHECK(project.game.enc == Matrix{{0.5, 0.5}, {0.5, 0.5}});
}

TEST_CASE("per-vehicle ranges drive the analytic encounter matrix") {
    const auto project = parse_config(R"({
      "game": {"K": 2, "M": 1, "p": 0.6, "delta": 0.5, "price": 1.5, "cost_fwd": 0.5,
               "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1, "mu": 1},
      "encounter": {"source": "analytic"},
      "geometry": {"side_km": 2.0, "ranges": [0.2, 0.4]}
    })");
    CHECK(project.game.enc[0][0] == analytic_pair_encounter(0.2, 2.0));
    CHECK(project.game.enc[0][1] == analytic_pair_encounter(0.4, 2.0));
}

TEST_CASE("monte carlo encounter source runs the estimator") {
    const auto project = parse_config(R"({
      "game": {"K": 1, "M": 1, "p": 0.6, "delta": 0.5, "price": 1.5, "cost_fwd": 0.5,
               "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1, "mu": 1},
      "encounter": {"source": "monte_carlo"},
      "geometry": {"range_km": 0.2, "n_slots": 20000, "seed": 3}
    })");
    GeometryConfig geo;
    geo.range_km = {0.2};
    geo.n_slots = 20000;
    geo.seed = 3;
    CHECK(project.game.enc == estimate_encounter_matrix(geo, 1, 1).probability);
}

TEST_CASE("validation errors are collected") {
    const auto errors = errors_of(R"({
      "game": {"K": 2, "M": 2, "p": [1.2, 0.5], "delta": [[0.5], [0.5]], "price": 1.5,
               "cost_fwd": -1, "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1, "mu": 1},
      "encounter": {"matrix": 0.5}
    })");
    CHECK(any_contains(errors, "probability out of range"));
    CHECK(any_contains(errors, "shape mismatch"));
    CHECK(any_contains(errors, "negative value"));
}

TEST_CASE("structural problems are reported") {
    CHECK(any_contains(errors_of("{not json"), "malformed"));
    CHECK(any_contains(errors_of("{}"), "game: missing section"));
    CHECK(any_contains(errors_of(R"({"game": {"K": 1}})"), "game.M"));
    const auto missing = errors_of(R"({"game": {"K": 1, "M": 1}, "encounter": {"matrix": 0.5}})");
    CHECK(any_contains(missing, "game.p: missing"));
    CHECK(any_contains(missing, "game.mu: missing"));
    CHECK(any_contains(errors_of(R"({"game": {"K": 1, "M": 0, "p": 0.5, "delta": 0, "price": 0,
        "cost_fwd": 0, "cost_rcv": 0, "alpha": 1, "beta": 1, "gamma": 1, "mu": 1}})"),
                       "no matrix"));
    CHECK(any_contains(errors_of(R"({"game": {"K": 1, "M": 0, "p": 0.5, "delta": 0, "price": 0,
        "cost_fwd": 0, "cost_rcv": 0, "alpha": 1, "beta": 1, "gamma": 1, "mu": 1},
        "encounter": {"source": "magic"}, "geometry": {"range_km": 0.1}})"),
                       "unknown value"));
    CHECK(any_contains(errors_of(R"({"game": {"K": 1, "M": 0, "p": 0.5, "delta": 0, "price": 0,
        "cost_fwd": 0, "cost_rcv": 0, "alpha": 1, "beta": 1, "gamma": 1, "mu": 1},
        "geometry": {"range_km": 0.1, "placement": "hex"}})"),
                       "geometry.placement"));
}

TEST_CASE("missing files raise a config error") {
    CHECK_THROWS_AS(load_config_file("/nonexistent/coopvanet.json"), ConfigError);
}

TEST_CASE("an encounter section round-trips") {
    const Matrix enc{{0.1, 1.0 / 3.0}, {0.25, 0.0}};
    const auto text = std::string(R"({"game": {"K": 2, "M": 2, "p": 0.6, "delta": 0.5,
        "price": 1.5, "cost_fwd": 0.5, "cost_rcv": 0.2, "alpha": 10, "beta": 1, "gamma": 1,
        "mu": 1}, "encounter": )") + encounter_section_json(enc) + "}";
    CHECK(parse_config(text).game.enc == enc);
}

TEST_CASE("CSV fields are quoted when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("{1,2}") == "\"{1,2}\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("a\nb") == "\"a\nb\"");
    std::ostringstream os;
    CsvWriter(os).row({"a", "b,c", ""});
    CHECK(os.str() == "a,\"b,c\",\r\n");
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.4) == "2.4");
    CHECK(format_double(-0.0) == "0");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("manifest JSON carries every field") {
    RunManifest m{"payoffs", "cfg.json", 7, "out.csv", "0.1.0", "2026-01-01T00:00:00Z"};
    const auto j = nlohmann::json::parse(manifest_json(m));
    CHECK(j.at("command") == "payoffs");
    CHECK(j.at("seed") == 7);
    CHECK(j.at("output_path") == "out.csv");
    m.seed.reset();
    CHECK(nlohmann::json::parse(manifest_json(m)).at("seed").is_null());
    const auto ts = utc_timestamp();
    CHECK(ts.size() == 20);
    CHECK(ts.back() == 'Z');
}
