// SPDX-License-Identifier: Apache-2.0
//
// Closed-form per-player quantities of a coalition: transmission shares,
// relay-selection probabilities, throughput, payments, revenues, costs and
// payoffs. Every function is pure; membership violations throw
// std::invalid_argument.

#ifndef COOPVANET_ANALYTIC_HPP
#define COOPVANET_ANALYTIC_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "coopvanet/scheduler.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet {

/// Largest |S_r| the subset-enumeration oracle accepts.
inline constexpr std::size_t kOracleMaxRsus = 20;

/// Long-run fraction of slots in which `vehicle` is the member of S chosen
/// to transmit: its activity probability times the probability that every
/// higher-priority member of S is inactive.
double transmission_share(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                          const Scheduler& scheduler = {});

/// Probability that `vehicle` picks `rsu` as its relay in a slot where it
/// transmits: the RSU must encounter it and then win the uniform draw among
/// all encountering RSUs of S.
double relay_usage_prob(const Coalition& S, PlayerId vehicle, PlayerId rsu, const GameConfig& cfg);

/// eta row of `vehicle`, one entry per RSU of S in ascending order.
std::vector<double> relay_usage_row(const Coalition& S, PlayerId vehicle, const GameConfig& cfg);

/// Expected weight of the relay `vehicle` ends up with (0 when no RSU of S
/// encounters it). `weights[k]` belongs to the k-th RSU of S, ascending.
///
/// Accumulated per encounter-set size: the sum over sets A of size s of
/// (sum of w over A) Pr(A) is carried through a single pass over the RSUs
/// together with the size distribution, then divided by s.
double relay_weighted_mean(const Coalition& S, PlayerId vehicle, std::span<const double> weights,
                           const GameConfig& cfg);

struct RelayEnumeration {
    double mean{0.0};
    std::vector<double> eta;  // per RSU of S, ascending
};

/// Same expectation as relay_weighted_mean, plus the eta row, by explicit
/// enumeration of all 2^|S_r| encounter sets. Throws std::length_error when
/// |S_r| > kOracleMaxRsus.
RelayEnumeration oracle_relay_mean(const Coalition& S, PlayerId vehicle,
                                   std::span<const double> weights, const GameConfig& cfg);

/// Per-RSU weights for `vehicle`: Delta_{vehicle,j} and xi_{j,vehicle}.
std::vector<double> gain_weights(const Coalition& S, PlayerId vehicle, const GameConfig& cfg);
std::vector<double> price_weights(const Coalition& S, PlayerId vehicle, const GameConfig& cfg);

/// zeta: average rate increase.
double rate_increase(const Coalition& S, PlayerId vehicle, const GameConfig& cfg);
/// chi: average price paid per transmission.
double expected_price(const Coalition& S, PlayerId vehicle, const GameConfig& cfg);

/// share * (1 + zeta) * prod over vehicles outside S of (1 - p).
double throughput(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                  const Scheduler& scheduler = {});
/// share * chi. Payments accrue whether or not the slot collides.
double avg_payment(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                   const Scheduler& scheduler = {});
double revenue(const Coalition& S, PlayerId rsu, const GameConfig& cfg,
               const Scheduler& scheduler = {});
double cost(const Coalition& S, PlayerId rsu, const GameConfig& cfg,
            const Scheduler& scheduler = {});

struct VehicleTerms {
    PlayerId id;
    double share{0.0};
    double zeta{0.0};
    double chi{0.0};
    double throughput{0.0};
    double payment{0.0};
    double payoff{0.0};
};

struct RsuTerms {
    PlayerId id;
    std::vector<double> eta;  // eta_{i j} for each vehicle i of S, ascending
    double revenue{0.0};
    double cost{0.0};
    double payoff{0.0};
};

struct PayoffReport {
    Coalition coalition;
    std::vector<VehicleTerms> vehicles;
    std::vector<RsuTerms> rsus;
    double sum_payoff{0.0};

    /// Payoff of any member; throws std::invalid_argument otherwise.
    [[nodiscard]] double payoff_of(PlayerId id) const;
};

PayoffReport player_payoffs(const Coalition& S, const GameConfig& cfg,
                            const Scheduler& scheduler = {});

}  // namespace coopvanet

#endif  // COOPVANET_ANALYTIC_HPP
