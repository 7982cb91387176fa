// SPDX-License-Identifier: Apache-2.0
//
// JSON configuration documents. Layout:
//
//   {
//     "game": {
//       "K": 2, "M": 2,
//       "p": 0.6,                      // number, or list of K
//       "delta": 0.5,                  // number, or K x M rows
//       "price": 1.5,                  // number, or M x K rows
//       "cost_fwd": 0.5, "cost_rcv": 0.2,   // number, or M x K rows
//       "alpha": 10, "beta": 1,        // number, or list of K
//       "gamma": 1, "mu": 1            // number, or list of M
//     },
//     "encounter": {"matrix": [[...], ...]}      // M x K rows, or a number
//               | {"source": "analytic"}         // from geometry ranges
//               | {"source": "monte_carlo"},     // geo-sim estimate
//     "geometry": {
//       "side_km": 1.0, "placement": "continuous", "grid_cells": 10,
//       "range_km": 0.3,               // number, or list of K
//       "n_slots": 1000000, "seed": 1
//     }
//   }

#ifndef COOPVANET_CONFIG_IO_HPP
#define COOPVANET_CONFIG_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coopvanet/geo_sim.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet {

enum class EncounterSource { matrix, analytic, monte_carlo };

struct ProjectConfig {
    GameConfig game;  // `enc` already resolved from the encounter section
    std::optional<GeometryConfig> geometry;
    EncounterSource encounter_source{EncounterSource::matrix};
};

/// Carries every problem found while reading a configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> errors);
    [[nodiscard]] const std::vector<std::string>& errors() const noexcept { return errors_; }

private:
    std::vector<std::string> errors_;
};

ProjectConfig parse_config(std::string_view json_text);
ProjectConfig load_config_file(const std::string& path);

/// The built-in parameter document (2 vehicles, 2 RSUs, reference values,
/// encounter probabilities from 0.3 km ranges in a 1 km square).
std::string_view default_config_text();
ProjectConfig default_project_config();

/// `enc` rendered as an `encounter` section: {"matrix": [[...], ...]}.
std::string encounter_section_json(const Matrix& enc);

}  // namespace coopvanet

#endif  // COOPVANET_CONFIG_IO_HPP
