// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coopvanet {

namespace {

using nlohmann::json;

constexpr std::string_view kDefaultConfig = R"({
  "game": {
    "K": 2,
    "M": 2,
    "p": 0.6,
    "delta": 0.5,
    "price": 1.5,
    "cost_fwd": 0.5,
    "cost_rcv": 0.2,
    "alpha": 10,
    "beta": 1,
    "gamma": 1,
    "mu": 1
  },
  "encounter": {"source": "analytic"},
  "geometry": {
    "side_km": 1.0,
    "placement": "continuous",
    "grid_cells": 10,
    "range_km": 0.3,
    "n_slots": 1000000,
    "seed": 1
  }
}
)";

class Reader {
public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    std::vector<double> vector(const json& section, const std::string& prefix, const char* key,
                               int length) {
        const auto name = prefix + key;
        if (!section.contains(key)) {
            errors_.push_back(name + ": missing");
            return {};
        }
        const auto& node = section.at(key);
        if (node.is_number()) {
            return std::vector<double>(static_cast<std::size_t>(std::max(length, 0)),
                                       node.get<double>());
        }
        if (!node.is_array()) {
            errors_.push_back(name + ": expected a number or a list");
            return {};
        }
        std::vector<double> out;
        for (const auto& v : node) {
            if (!v.is_number()) {
                errors_.push_back(name + ": non-numeric entry");
                return {};
            }
            out.push_back(v.get<double>());
        }
        return out;
    }

    Matrix matrix(const json& section, const std::string& prefix, const char* key, int rows,
                  int cols) {
        const auto name = prefix + key;
        if (!section.contains(key)) {
            errors_.push_back(name + ": missing");
            return {};
        }
        const auto& node = section.at(key);
        if (node.is_number()) {
            return Matrix(static_cast<std::size_t>(std::max(rows, 0)),
                          std::vector<double>(static_cast<std::size_t>(std::max(cols, 0)),
                                              node.get<double>()));
        }
        if (!node.is_array()) {
            errors_.push_back(name + ": expected a number or a list of rows");
            return {};
        }
        Matrix out;
        for (const auto& row : node) {
            if (!row.is_array()) {
                errors_.push_back(name + ": expected a list of rows");
                return {};
            }
            std::vector<double> r;
            for (const auto& v : row) {
                if (!v.is_number()) {
                    errors_.push_back(name + ": non-numeric entry");
                    return {};
                }
                r.push_back(v.get<double>());
            }
            out.push_back(std::move(r));
        }
        return out;
    }

private:
    std::vector<std::string>& errors_;
};

int read_count(const json& section, const char* key, std::vector<std::string>& errors) {
    if (!section.contains(key) || !section.at(key).is_number_integer()) {
        errors.push_back(std::string("game.") + key + ": missing or not an integer");
        return 0;
    }
    return section.at(key).get<int>();
}

GeometryConfig read_geometry(const json& node, int K, std::vector<std::string>& errors) {
    GeometryConfig geo;
    Reader reader(errors);
    if (node.contains("side_km")) {
        if (node.at("side_km").is_number()) geo.side_km = node.at("side_km").get<double>();
        else errors.emplace_back("geometry.side_km: expected a number");
    }
    if (node.contains("placement")) {
        try {
            geo.placement = parse_placement(node.at("placement").get<std::string>());
        } catch (const std::exception& e) {
            errors.push_back(std::string("geometry.placement: ") + e.what());
        }
    }
    if (node.contains("grid_cells")) {
        if (node.at("grid_cells").is_number_integer()) geo.grid_cells = node.at("grid_cells").get<int>();
        else errors.emplace_back("geometry.grid_cells: expected an integer");
    }
    if (node.contains("ranges") && !node.contains("range_km")) {
        geo.range_km = reader.vector(node, "geometry.", "ranges", K);
    } else {
        geo.range_km = reader.vector(node, "geometry.", "range_km", K);
    }
    if (node.contains("n_slots")) {
        if (node.at("n_slots").is_number_unsigned()) geo.n_slots = node.at("n_slots").get<std::uint64_t>();
        else errors.emplace_back("geometry.n_slots: expected a non-negative integer");
    }
    if (node.contains("seed")) {
        if (node.at("seed").is_number_unsigned()) geo.seed = node.at("seed").get<std::uint64_t>();
        else errors.emplace_back("geometry.seed: expected a non-negative integer");
    }
    return geo;
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error([&] {
          std::string msg = "invalid configuration:";
          for (const auto& e : errors) msg += "\n  " + e;
          return msg;
      }()),
      errors_(std::move(errors)) {}

ProjectConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("malformed document: ") + e.what()});
    }
    std::vector<std::string> errors;
    if (!doc.is_object() || !doc.contains("game") || !doc.at("game").is_object()) {
        throw ConfigError({"game: missing section"});
    }
    const auto& game = doc.at("game");
    ProjectConfig out;
    auto& cfg = out.game;
    cfg.K = read_count(game, "K", errors);
    cfg.M = read_count(game, "M", errors);
    if (!errors.empty()) throw ConfigError(errors);

    Reader reader(errors);
    cfg.p = reader.vector(game, "game.", "p", cfg.K);
    cfg.delta = reader.matrix(game, "game.", "delta", cfg.K, cfg.M);
    cfg.price = reader.matrix(game, "game.", "price", cfg.M, cfg.K);
    cfg.cost_fwd = reader.matrix(game, "game.", "cost_fwd", cfg.M, cfg.K);
    cfg.cost_rcv = reader.matrix(game, "game.", "cost_rcv", cfg.M, cfg.K);
    cfg.alpha = reader.vector(game, "game.", "alpha", cfg.K);
    cfg.beta = reader.vector(game, "game.", "beta", cfg.K);
    cfg.gamma = reader.vector(game, "game.", "gamma", cfg.M);
    cfg.mu = reader.vector(game, "game.", "mu", cfg.M);

    if (doc.contains("geometry")) {
        out.geometry = read_geometry(doc.at("geometry"), cfg.K, errors);
        for (auto& e : validate_geometry(*out.geometry, cfg.K)) errors.push_back(std::move(e));
    }

    const json encounter = doc.contains("encounter") ? doc.at("encounter") : json::object();
    if (encounter.contains("matrix")) {
        out.encounter_source = EncounterSource::matrix;
        cfg.enc = reader.matrix(encounter, "encounter.", "matrix", cfg.M, cfg.K);
    } else {
        const auto source = encounter.value("source", std::string("analytic"));
        if (source == "analytic") {
            out.encounter_source = EncounterSource::analytic;
        } else if (source == "monte_carlo") {
            out.encounter_source = EncounterSource::monte_carlo;
        } else {
            errors.push_back("encounter.source: unknown value '" + source + "'");
        }
        if (!out.geometry) {
            errors.emplace_back("encounter: no matrix given and no geometry section to derive one");
        }
    }
    if (!errors.empty()) throw ConfigError(errors);

    if (out.encounter_source == EncounterSource::analytic) {
        try {
            cfg.enc = analytic_encounter_matrix(*out.geometry, cfg.M);
        } catch (const std::exception& e) {
            throw ConfigError({std::string("encounter: ") + e.what()});
        }
    } else if (out.encounter_source == EncounterSource::monte_carlo) {
        cfg.enc = estimate_encounter_matrix(*out.geometry, cfg.K, cfg.M).probability;
    }

    if (auto problems = validate_config(cfg); !problems.empty()) throw ConfigError(problems);
    return out;
}

ProjectConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file '" + path + "'"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string_view default_config_text() { return kDefaultConfig; }

ProjectConfig default_project_config() { return parse_config(kDefaultConfig); }

std::string encounter_section_json(const Matrix& enc) {
    std::string out = "{\"matrix\": [";
    for (std::size_t j = 0; j < enc.size(); ++j) {
        if (j) out += ", ";
        out += "[";
        for (std::size_t i = 0; i < enc[j].size(); ++i) {
            if (i) out += ", ";
            out += format_number(enc[j][i]);
        }
        out += "]";
    }
    return out + "]}";
}

}  // namespace coopvanet
