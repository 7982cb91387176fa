// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace coopvanet {

namespace {

std::string describe(double lhs, const char* op, double rhs) {
    std::ostringstream os;
    os.precision(17);
    os << lhs << ' ' << op << ' ' << rhs;
    return os.str();
}

void require_enumerable(const GameConfig& cfg) {
    if (cfg.num_players() > kMaxStabilityPlayers) {
        throw std::length_error("stability analysis enumerates 2^(K+M) coalitions; K+M = " +
                                std::to_string(cfg.num_players()) + " exceeds " +
                                std::to_string(kMaxStabilityPlayers));
    }
}

Coalition grand_coalition(const GameConfig& cfg) {
    std::vector<PlayerId> all;
    for (int k = 1; k <= cfg.num_players(); ++k) all.emplace_back(k);
    return Coalition(std::move(all));
}

void visit_from(std::vector<PlayerId>& prefix, int next, int n, bool& keep_going,
                const std::function<bool(const Coalition&)>& visit) {
    for (int k = next; k <= n && keep_going; ++k) {
        prefix.emplace_back(k);
        if (static_cast<int>(prefix.size()) < n) {
            keep_going = visit(Coalition(prefix));
            if (keep_going) visit_from(prefix, k + 1, n, keep_going, visit);
        }
        prefix.pop_back();
    }
}

bool strictly_dominates(const Coalition& S, const PayoffVector& in_s, std::span<const double> x) {
    return std::all_of(S.members().begin(), S.members().end(),
                       [&](PlayerId id) { return in_s[id.slot()] > x[id.slot()]; });
}

}  // namespace

void for_each_proper_coalition(int n, const std::function<bool(const Coalition&)>& visit) {
    if (n < 2) return;
    std::vector<PlayerId> prefix;
    bool keep_going = true;
    visit_from(prefix, 1, n, keep_going, visit);
}

PayoffVector coalition_payoffs(const Coalition& S, const GameConfig& cfg,
                               const Scheduler& scheduler) {
    PayoffVector out(static_cast<std::size_t>(cfg.num_players()), 0.0);
    const auto report = player_payoffs(S, cfg, scheduler);
    for (const auto& v : report.vehicles) out[v.id.slot()] = v.payoff;
    for (const auto& r : report.rsus) out[r.id.slot()] = r.payoff;
    return out;
}

PayoffVector structure_payoffs(const CoalitionStructure& cs, const GameConfig& cfg,
                               const Scheduler& scheduler) {
    if (cs.num_players() != cfg.num_players()) {
        throw std::invalid_argument("structure covers " + std::to_string(cs.num_players()) +
                                    " players, config has " + std::to_string(cfg.num_players()));
    }
    PayoffVector out(static_cast<std::size_t>(cfg.num_players()), 0.0);
    for (const auto& S : cs.coalitions()) {
        const auto report = player_payoffs(S, cfg, scheduler);
        for (const auto& v : report.vehicles) out[v.id.slot()] = v.payoff;
        for (const auto& r : report.rsus) out[r.id.slot()] = r.payoff;
    }
    return out;
}

std::vector<ProfitabilityVerdict> vehicle_coalition_profitability(const Coalition& S,
                                                                  const GameConfig& cfg) {
    if (!S.rsus(cfg).empty() || S.vehicles(cfg).size() != S.size()) {
        throw std::invalid_argument("coalition " + S.to_string() + " is not vehicle-only");
    }
    double outside = 1.0;
    for (int v = 1; v <= cfg.K; ++v) {
        if (!S.contains(PlayerId{v})) outside *= 1.0 - cfg.activity(PlayerId{v});
    }
    const auto members = S.members();  // ascending = priority order
    std::vector<ProfitabilityVerdict> out;
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
        const auto i = members[pos];
        double others = 1.0;          // prod over S \ {i}
        double higher_priority = 1.0; // prod over smaller-index members
        for (std::size_t k = 0; k < members.size(); ++k) {
            if (k == pos) continue;
            const double q = 1.0 - cfg.activity(members[k]);
            others *= q;
            if (k < pos) higher_priority *= q;
        }
        ProfitabilityVerdict verdict;
        verdict.player = i;
        // Both throughputs vanish together when this common factor is zero.
        const double common = cfg.activity(i) * higher_priority * outside;
        verdict.ratio = common == 0.0 ? 1.0 : others / higher_priority;
        verdict.profitable = verdict.ratio <= 1.0;
        verdict.strict = verdict.ratio < 1.0;
        out.push_back(verdict);
    }
    return out;
}

PricingCheck pricing_cancellation_check(const Coalition& S, const GameConfig& cfg,
                                        double tolerance) {
    PricingCheck check;
    for (auto i : S.vehicles(cfg)) {
        if (cfg.beta[cfg.vehicle_slot(i)] != 1.0) {
            check.message = "weights not 1 (beta of player " + std::to_string(i.index()) + ")";
            return check;
        }
    }
    for (auto j : S.rsus(cfg)) {
        if (cfg.gamma[cfg.rsu_slot(j)] != 1.0) {
            check.message = "weights not 1 (gamma of player " + std::to_string(j.index()) + ")";
            return check;
        }
    }
    check.applicable = true;

    const auto priced = player_payoffs(S, cfg);
    auto free_cfg = cfg;
    for (auto& row : free_cfg.price) std::fill(row.begin(), row.end(), 0.0);
    const auto free = player_payoffs(S, free_cfg);

    double weighted = 0.0;
    double payments = 0.0;
    double revenues = 0.0;
    for (const auto& v : priced.vehicles) {
        weighted += cfg.alpha[cfg.vehicle_slot(v.id)] * v.throughput;
        payments += v.payment;
    }
    for (const auto& r : priced.rsus) {
        weighted -= cfg.mu[cfg.rsu_slot(r.id)] * r.cost;
        revenues += r.revenue;
    }
    check.residual = std::max({std::abs(priced.sum_payoff - free.sum_payoff),
                               std::abs(priced.sum_payoff - weighted),
                               std::abs(payments - revenues)});
    check.holds = check.residual <= tolerance;
    check.message = check.holds ? "sum payoff independent of prices"
                                : "residual " + describe(check.residual, ">", tolerance);
    return check;
}

SufficientConditions core_sufficient_conditions(const GameConfig& cfg) {
    require_enumerable(cfg);
    SufficientConditions out;

    out.weights_positive = true;
    for (int k = 1; k <= cfg.num_players() && out.weights_positive; ++k) {
        const PlayerId id{k};
        std::optional<std::string> bad;
        if (cfg.is_vehicle(id)) {
            const auto s = cfg.vehicle_slot(id);
            if (!(cfg.alpha[s] > 0.0)) bad = "alpha = " + std::to_string(cfg.alpha[s]);
            else if (!(cfg.beta[s] > 0.0)) bad = "beta = " + std::to_string(cfg.beta[s]);
        } else {
            const auto s = cfg.rsu_slot(id);
            if (!(cfg.gamma[s] > 0.0)) bad = "gamma = " + std::to_string(cfg.gamma[s]);
            else if (!(cfg.mu[s] > 0.0)) bad = "mu = " + std::to_string(cfg.mu[s]);
        }
        if (bad) {
            out.weights_positive = false;
            out.weights_witness = ConditionWitness{id, std::nullopt, *bad + " is not positive"};
        }
    }

    const auto grand = player_payoffs(grand_coalition(cfg), cfg);
    out.members_profit = true;
    out.grand_dominates = true;
    for_each_proper_coalition(cfg.num_players(), [&](const Coalition& S) {
        const auto report = player_payoffs(S, cfg);
        if (out.members_profit && !report.vehicles.empty()) {
            for (const auto& v : report.vehicles) {
                const auto s = cfg.vehicle_slot(v.id);
                const double gain = cfg.alpha[s] * v.throughput;
                const double paid = cfg.beta[s] * v.payment;
                if (!(gain > paid)) {
                    out.members_profit = false;
                    out.profit_witness =
                        ConditionWitness{v.id, S, "alpha*T <= beta*P: " + describe(gain, "<=", paid)};
                    break;
                }
            }
            for (const auto& r : report.rsus) {
                if (!out.members_profit) break;
                const auto s = cfg.rsu_slot(r.id);
                const double earned = cfg.gamma[s] * r.revenue;
                const double spent = cfg.mu[s] * r.cost;
                if (!(earned > spent)) {
                    out.members_profit = false;
                    out.profit_witness = ConditionWitness{
                        r.id, S, "gamma*R <= mu*C: " + describe(earned, "<=", spent)};
                }
            }
        }
        if (out.grand_dominates) {
            for (auto id : S.members()) {
                const double in_grand = grand.payoff_of(id);
                const double in_s = report.payoff_of(id);
                if (!(in_grand > in_s)) {
                    out.grand_dominates = false;
                    out.dominance_witness = ConditionWitness{
                        id, S, "grand payoff <= in-coalition payoff: " +
                                   describe(in_grand, "<=", in_s)};
                    break;
                }
            }
        }
        return out.members_profit || out.grand_dominates;
    });
    return out;
}

CoreMembership core_membership(std::span<const double> x, const GameConfig& cfg) {
    require_enumerable(cfg);
    if (static_cast<int>(x.size()) != cfg.num_players()) {
        throw std::invalid_argument("payoff vector has " + std::to_string(x.size()) +
                                    " entries for " + std::to_string(cfg.num_players()) +
                                    " players");
    }
    CoreMembership out;
    out.in_core = true;
    for_each_proper_coalition(cfg.num_players(), [&](const Coalition& S) {
        const auto in_s = coalition_payoffs(S, cfg);
        if (!strictly_dominates(S, in_s, x)) return true;
        // Recompute independently before reporting the witness.
        const auto again = player_payoffs(S, cfg);
        for (auto id : S.members()) {
            if (!(again.payoff_of(id) > x[id.slot()])) {
                throw std::logic_error("blocking witness " + S.to_string() +
                                       " failed re-verification");
            }
        }
        out.in_core = false;
        out.blocking = S;
        out.blocking_payoffs = in_s;
        return false;
    });
    return out;
}

StabilityVerdict analyze_stability(const GameConfig& cfg) {
    StabilityVerdict verdict;
    verdict.conditions = core_sufficient_conditions(cfg);
    verdict.grand_payoffs = coalition_payoffs(grand_coalition(cfg), cfg);
    verdict.membership = core_membership(verdict.grand_payoffs, cfg);
    return verdict;
}

}  // namespace coopvanet
