// SPDX-License-Identifier: Apache-2.0
//
// Slot-by-slot simulation of scheduling, collisions, relay selection,
// charging and costs.

#ifndef COOPVANET_SLOT_SIM_HPP
#define COOPVANET_SLOT_SIM_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "coopvanet/geo_sim.hpp"
#include "coopvanet/scheduler.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet {

struct Estimate {
    double mean{0.0};
    double std_error{0.0};
};

struct VehicleEstimate {
    PlayerId id;
    Estimate throughput;
    Estimate payment;
    Estimate payoff;
    std::uint64_t scheduled{0};
    std::uint64_t collided{0};   // scheduled slots lost to a collision
    std::uint64_t relayed{0};    // scheduled slots with a relay selected
};

struct RsuEstimate {
    PlayerId id;
    Estimate revenue;
    Estimate cost;
    Estimate payoff;
    std::uint64_t encountered{0};  // scheduled in-coalition vehicles encountered
    std::uint64_t selected{0};     // times chosen as relay
};

struct EmpiricalReport {
    std::uint64_t n_slots{0};
    std::uint64_t seed{0};
    std::vector<VehicleEstimate> vehicles;  // ascending player id
    std::vector<RsuEstimate> rsus;          // ascending player id
    /// Slots in which total vehicle payments differed from total RSU
    /// revenues, or a coalition scheduled more than one vehicle, or a
    /// vehicle succeeded while someone outside its coalition transmitted.
    std::uint64_t balance_violations{0};
    std::uint64_t schedule_violations{0};
    std::uint64_t collision_violations{0};
};

enum class EncounterMode {
    bernoulli,  // independent draws from the encounter matrix
    geometry,   // per-slot positions from a GeometryConfig
};

struct SlotSimOptions {
    Scheduler scheduler{};
    EncounterMode encounter_mode{EncounterMode::bernoulli};
    std::optional<GeometryConfig> geometry;  // required for EncounterMode::geometry
};

/// Per slot:
///  1. each vehicle is active with probability p_i (draws in vehicle order);
///  2. each coalition schedules one active member via the scheduler;
///  3. a scheduled transmission succeeds iff every vehicle outside the
///     coalition is inactive;
///  4. each RSU of the coalition encounters the scheduled vehicle (Bernoulli
///     with the encounter probability, or by distance in geometry mode);
///  5. the vehicle picks a relay uniformly among the encountering RSUs;
///  6. on success the vehicle earns rate 1 + Delta, or 1 without a relay;
///  7. the relay charges its price whether or not the slot collides;
///  8. every encountering RSU pays its receive cost, the relay also its
///     forwarding cost.
/// Throws std::invalid_argument when n_slots == 0.
EmpiricalReport simulate_slots(const CoalitionStructure& cs, const GameConfig& cfg,
                               std::uint64_t n_slots, std::uint64_t seed,
                               const SlotSimOptions& options = {});

}  // namespace coopvanet

#endif  // COOPVANET_SLOT_SIM_HPP
