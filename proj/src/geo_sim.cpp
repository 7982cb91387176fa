// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/geo_sim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coopvanet {

Placement parse_placement(std::string_view text) {
    if (text == "continuous") return Placement::continuous;
    if (text == "grid") return Placement::grid;
    throw std::invalid_argument("unknown placement '" + std::string(text) +
                                "' (expected continuous or grid)");
}

std::string to_string(Placement placement) {
    return placement == Placement::grid ? "grid" : "continuous";
}

std::vector<std::string> validate_geometry(const GeometryConfig& geo, int K) {
    std::vector<std::string> errors;
    if (!(geo.side_km > 0.0) || !std::isfinite(geo.side_km)) {
        errors.emplace_back("geometry.side_km: must be positive");
    }
    if (geo.placement == Placement::grid && geo.grid_cells < 1) {
        errors.emplace_back("geometry.grid_cells: must be at least 1");
    }
    if (static_cast<int>(geo.range_km.size()) != K) {
        errors.push_back("geometry.range_km: shape mismatch, expected " + std::to_string(K) +
                         " entries, got " + std::to_string(geo.range_km.size()));
    }
    for (std::size_t i = 0; i < geo.range_km.size(); ++i) {
        if (!(geo.range_km[i] >= 0.0) || !std::isfinite(geo.range_km[i])) {
            errors.push_back("geometry.range_km[" + std::to_string(i + 1) +
                             "]: negative value");
        }
    }
    if (geo.n_slots < 1) errors.emplace_back("geometry.n_slots: must be at least 1");
    return errors;
}

Point draw_position(const GeometryConfig& geo, Rng& rng) {
    if (geo.placement == Placement::continuous) {
        const double x = rng.uniform(geo.side_km);
        const double y = rng.uniform(geo.side_km);
        return {x, y};
    }
    const auto cells = static_cast<std::uint64_t>(geo.grid_cells);
    const double pitch = geo.side_km / static_cast<double>(geo.grid_cells);
    const auto cx = rng.index(cells);
    const auto cy = rng.index(cells);
    return {(static_cast<double>(cx) + 0.5) * pitch, (static_cast<double>(cy) + 0.5) * pitch};
}

bool encounters(Point rsu, Point vehicle, double range_km) {
    const double dx = rsu.x - vehicle.x;
    const double dy = rsu.y - vehicle.y;
    return dx * dx + dy * dy <= range_km * range_km;
}

EncounterEstimate estimate_encounter_matrix(const GeometryConfig& geo, int K, int M) {
    if (auto errors = validate_geometry(geo, K); !errors.empty()) {
        throw std::invalid_argument(errors.front());
    }
    if (M < 0) throw std::invalid_argument("negative RSU count");
    const auto k = static_cast<std::size_t>(K);
    const auto m = static_cast<std::size_t>(M);

    std::vector<std::vector<std::uint64_t>> hits(m, std::vector<std::uint64_t>(k, 0));
    std::vector<Point> vehicles(k);
    std::vector<Point> rsus(m);
    Rng rng(geo.seed);
    for (std::uint64_t slot = 0; slot < geo.n_slots; ++slot) {
        for (auto& v : vehicles) v = draw_position(geo, rng);
        for (auto& r : rsus) r = draw_position(geo, rng);
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < k; ++i) {
                hits[j][i] += encounters(rsus[j], vehicles[i], geo.range_km[i]) ? 1 : 0;
            }
        }
    }

    EncounterEstimate est;
    est.n_slots = geo.n_slots;
    const double n = static_cast<double>(geo.n_slots);
    est.probability.assign(m, std::vector<double>(k, 0.0));
    est.std_error.assign(m, std::vector<double>(k, 0.0));
    est.hits.assign(m, std::vector<double>(k, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i) {
            const double q = static_cast<double>(hits[j][i]) / n;
            est.hits[j][i] = static_cast<double>(hits[j][i]);
            est.probability[j][i] = q;
            est.std_error[j][i] = std::sqrt(q * (1.0 - q) / n);
        }
    }
    return est;
}

double analytic_pair_encounter(double d, double side) {
    if (!(side > 0.0)) throw std::domain_error("side must be positive");
    if (!(d >= 0.0) || d > side) {
        throw std::domain_error("analytic encounter formula needs 0 <= d <= side");
    }
    const double t = d / side;
    const double t2 = t * t;
    return std::numbers::pi * t2 - 8.0 / 3.0 * t2 * t + 0.5 * t2 * t2;
}

Matrix analytic_encounter_matrix(const GeometryConfig& geo, int M) {
    const auto m = static_cast<std::size_t>(M);
    Matrix out(m, std::vector<double>(geo.range_km.size(), 0.0));
    for (std::size_t i = 0; i < geo.range_km.size(); ++i) {
        const double q = analytic_pair_encounter(geo.range_km[i], geo.side_km);
        for (std::size_t j = 0; j < m; ++j) out[j][i] = q;
    }
    return out;
}

}  // namespace coopvanet
