// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo estimation of RSU/vehicle encounter probabilities under
// per-slot uniform placement in a square area.

#ifndef COOPVANET_GEO_SIM_HPP
#define COOPVANET_GEO_SIM_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coopvanet/rng.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet {

enum class Placement {
    continuous,  // uniform over the square
    grid,        // uniform over the centers of a grid_cells x grid_cells grid
};

Placement parse_placement(std::string_view text);
std::string to_string(Placement placement);

struct GeometryConfig {
    double side_km{1.0};
    Placement placement{Placement::continuous};
    int grid_cells{10};
    std::vector<double> range_km;  // transmission range per vehicle
    std::uint64_t n_slots{1'000'000};
    std::uint64_t seed{1};
};

std::vector<std::string> validate_geometry(const GeometryConfig& geo, int K);

struct Point {
    double x{0.0};
    double y{0.0};
};

/// One position drawn from the placement distribution.
Point draw_position(const GeometryConfig& geo, Rng& rng);

/// True when `rsu` lies within `range_km` of `vehicle`.
bool encounters(Point rsu, Point vehicle, double range_km);

struct EncounterEstimate {
    Matrix probability;  // M x K
    Matrix std_error;    // M x K, binomial standard error
    Matrix hits;         // M x K, raw encounter counts
    std::uint64_t n_slots{0};
};

/// Each slot draws vehicles 1..K then RSUs 1..M, all i.i.d. from the
/// placement distribution, and counts pairs within the vehicle's range.
EncounterEstimate estimate_encounter_matrix(const GeometryConfig& geo, int K, int M);

/// Probability that two independent uniform points of a square with side
/// `side` are within distance d: pi t^2 - 8 t^3 / 3 + t^4 / 2, t = d / side.
/// Throws std::domain_error unless 0 <= d <= side.
double analytic_pair_encounter(double d, double side);

/// M x K matrix with entry analytic_pair_encounter(range_km[i], side_km).
Matrix analytic_encounter_matrix(const GeometryConfig& geo, int M);

}  // namespace coopvanet

#endif  // COOPVANET_GEO_SIM_HPP
