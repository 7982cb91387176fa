// SPDX-License-Identifier: Apache-2.0
//
// Structure-level analysis: payoff vectors, profitability of vehicle-only
// coalitions, the pricing-cancellation identity and core stability.

#ifndef COOPVANET_GAME_HPP
#define COOPVANET_GAME_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coopvanet/analytic.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet {

/// Largest K+M for which stability checks enumerate every sub-coalition.
inline constexpr int kMaxStabilityPlayers = 20;

/// Payoff of every player inside its own coalition, indexed by PlayerId::slot().
using PayoffVector = std::vector<double>;

PayoffVector structure_payoffs(const CoalitionStructure& cs, const GameConfig& cfg,
                               const Scheduler& scheduler = {});

/// Payoffs of the members of S when S forms, indexed by PlayerId::slot();
/// entries of non-members are left at zero.
PayoffVector coalition_payoffs(const Coalition& S, const GameConfig& cfg,
                               const Scheduler& scheduler = {});

struct ProfitabilityVerdict {
    PlayerId player;
    /// u_i({i}) / u_i(S) in cancelled product form. The member profits
    /// weakly when ratio <= 1, strictly when ratio < 1.
    double ratio{1.0};
    bool profitable{true};
    bool strict{false};
};

/// Per-member profitability of a vehicle-only coalition under the
/// min-index scheduler, ordered by ascending player index. Throws
/// std::invalid_argument when S contains an RSU.
std::vector<ProfitabilityVerdict> vehicle_coalition_profitability(const Coalition& S,
                                                                  const GameConfig& cfg);

struct PricingCheck {
    bool applicable{false};  // false when some beta_i or gamma_j differs from 1
    bool holds{false};
    double residual{0.0};
    std::string message;
};

/// With beta = gamma = 1 on S, the sum payoff must not depend on prices and
/// total payments must equal total revenues. Residual is the largest of
/// |f(S) - f_no_prices(S)|, |f(S) - (sum alpha T - sum mu C)| and
/// |sum P - sum R|.
PricingCheck pricing_cancellation_check(const Coalition& S, const GameConfig& cfg,
                                        double tolerance = 1e-12);

struct ConditionWitness {
    PlayerId player;
    std::optional<Coalition> coalition;
    std::string detail;
};

struct SufficientConditions {
    bool weights_positive{false};
    bool members_profit{false};
    bool grand_dominates{false};
    std::optional<ConditionWitness> weights_witness;
    std::optional<ConditionWitness> profit_witness;
    std::optional<ConditionWitness> dominance_witness;

    [[nodiscard]] bool all_hold() const noexcept {
        return weights_positive && members_profit && grand_dominates;
    }
};

struct CoreMembership {
    bool in_core{false};
    std::optional<Coalition> blocking;
    PayoffVector blocking_payoffs;  // in-coalition payoffs of the witness
};

struct StabilityVerdict {
    SufficientConditions conditions;
    CoreMembership membership;
    PayoffVector grand_payoffs;
};

/// Checks the three sufficient conditions for a nonempty core:
///  1) every alpha, beta, gamma, mu strictly positive;
///  2) in every proper coalition with at least one vehicle, each vehicle
///     member has alpha T > beta P and each RSU member gamma R > mu C;
///  3) every member of every proper coalition is strictly better off in the
///     grand coalition.
/// Witnesses are the first violation in lexicographic coalition order.
SufficientConditions core_sufficient_conditions(const GameConfig& cfg);

/// x is in the core unless some non-empty proper coalition gives every one
/// of its members a payoff strictly above x. Reports the lexicographically
/// smallest blocking coalition.
CoreMembership core_membership(std::span<const double> x, const GameConfig& cfg);

/// Both checks, with membership evaluated on the grand-coalition vector.
StabilityVerdict analyze_stability(const GameConfig& cfg);

/// Calls `visit` for each non-empty proper subset of {1..n} in lexicographic
/// order of the ascending member lists; stops early when `visit` returns
/// false.
void for_each_proper_coalition(int n, const std::function<bool(const Coalition&)>& visit);

}  // namespace coopvanet

#endif  // COOPVANET_GAME_HPP
