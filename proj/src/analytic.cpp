// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/analytic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coopvanet {

namespace {

void require_member(const Coalition& S, PlayerId id, bool role_ok, const char* role) {
    if (!role_ok || !S.contains(id)) {
        throw std::invalid_argument("player " + std::to_string(id.index()) + " is not a " + role +
                                    " member of coalition " + S.to_string());
    }
}

void require_vehicle(const Coalition& S, PlayerId id, const GameConfig& cfg) {
    require_member(S, id, cfg.is_vehicle(id), "vehicle");
}

void require_rsu(const Coalition& S, PlayerId id, const GameConfig& cfg) {
    require_member(S, id, cfg.is_rsu(id), "RSU");
}

std::vector<double> encounter_probs(std::span<const PlayerId> rsus, PlayerId vehicle,
                                    const GameConfig& cfg) {
    std::vector<double> q;
    q.reserve(rsus.size());
    for (auto j : rsus) q.push_back(cfg.encounter(j, vehicle));
    return q;
}

// Distribution of the number of encounters among `q` except index `skip`.
std::vector<double> count_distribution_without(const std::vector<double>& q, std::size_t skip) {
    std::vector<double> dist{1.0};
    for (std::size_t k = 0; k < q.size(); ++k) {
        if (k == skip) continue;
        dist.push_back(0.0);
        for (std::size_t b = dist.size() - 1; b > 0; --b) {
            dist[b] = dist[b] * (1.0 - q[k]) + dist[b - 1] * q[k];
        }
        dist[0] *= 1.0 - q[k];
    }
    return dist;
}

double eta_from(const std::vector<double>& q, std::size_t j) {
    const auto others = count_distribution_without(q, j);
    double bracket = 0.0;
    for (std::size_t b = 0; b < others.size(); ++b) {
        bracket += others[b] / static_cast<double>(b + 1);
    }
    return q[j] * bracket;
}

double outside_inactive(const Coalition& S, const GameConfig& cfg) {
    double prod = 1.0;
    for (int v = 1; v <= cfg.K; ++v) {
        const PlayerId id{v};
        if (!S.contains(id)) prod *= 1.0 - cfg.activity(id);
    }
    return prod;
}

double share_in_order(std::span<const PlayerId> ordered, PlayerId vehicle, const GameConfig& cfg) {
    double silent = 1.0;
    for (auto id : ordered) {
        if (id == vehicle) return cfg.activity(id) * silent;
        silent *= 1.0 - cfg.activity(id);
    }
    return 0.0;
}

}  // namespace

double transmission_share(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                          const Scheduler& scheduler) {
    require_vehicle(S, vehicle, cfg);
    const auto ordered = scheduler.order(S.vehicles(cfg));
    return share_in_order(ordered, vehicle, cfg);
}

double relay_usage_prob(const Coalition& S, PlayerId vehicle, PlayerId rsu, const GameConfig& cfg) {
    require_vehicle(S, vehicle, cfg);
    require_rsu(S, rsu, cfg);
    const auto rsus = S.rsus(cfg);
    const auto q = encounter_probs(rsus, vehicle, cfg);
    const auto pos = static_cast<std::size_t>(std::find(rsus.begin(), rsus.end(), rsu) - rsus.begin());
    return eta_from(q, pos);
}

std::vector<double> relay_usage_row(const Coalition& S, PlayerId vehicle, const GameConfig& cfg) {
    require_vehicle(S, vehicle, cfg);
    const auto rsus = S.rsus(cfg);
    const auto q = encounter_probs(rsus, vehicle, cfg);
    std::vector<double> row(rsus.size());
    for (std::size_t j = 0; j < rsus.size(); ++j) row[j] = eta_from(q, j);
    return row;
}

double relay_weighted_mean(const Coalition& S, PlayerId vehicle, std::span<const double> weights,
                           const GameConfig& cfg) {
    require_vehicle(S, vehicle, cfg);
    const auto rsus = S.rsus(cfg);
    if (weights.size() != rsus.size()) {
        throw std::invalid_argument("weight vector has " + std::to_string(weights.size()) +
                                    " entries for " + std::to_string(rsus.size()) + " RSUs");
    }
    // size_prob[s] = Pr(|A| = s); weight_sum[s] = E[sum_{j in A} w_j ; |A| = s]
    std::vector<double> size_prob{1.0};
    std::vector<double> weight_sum{0.0};
    for (std::size_t k = 0; k < rsus.size(); ++k) {
        const double q = cfg.encounter(rsus[k], vehicle);
        size_prob.push_back(0.0);
        weight_sum.push_back(0.0);
        for (std::size_t s = size_prob.size() - 1; s > 0; --s) {
            weight_sum[s] = weight_sum[s] * (1.0 - q) +
                            (weight_sum[s - 1] + weights[k] * size_prob[s - 1]) * q;
            size_prob[s] = size_prob[s] * (1.0 - q) + size_prob[s - 1] * q;
        }
        size_prob[0] *= 1.0 - q;
        weight_sum[0] *= 1.0 - q;
    }
    double mean = 0.0;
    for (std::size_t s = 1; s < weight_sum.size(); ++s) {
        mean += weight_sum[s] / static_cast<double>(s);
    }
    return mean;
}

RelayEnumeration oracle_relay_mean(const Coalition& S, PlayerId vehicle,
                                   std::span<const double> weights, const GameConfig& cfg) {
    require_vehicle(S, vehicle, cfg);
    const auto rsus = S.rsus(cfg);
    if (rsus.size() > kOracleMaxRsus) {
        throw std::length_error("oracle enumeration bound exceeded: |S_r| = " +
                                std::to_string(rsus.size()));
    }
    if (weights.size() != rsus.size()) {
        throw std::invalid_argument("weight vector shape mismatch");
    }
    const auto q = encounter_probs(rsus, vehicle, cfg);
    RelayEnumeration out;
    out.eta.assign(rsus.size(), 0.0);
    const std::uint64_t subsets = std::uint64_t{1} << rsus.size();
    for (std::uint64_t a = 1; a < subsets; ++a) {
        double prob = 1.0;
        double total = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < rsus.size(); ++j) {
            if (a >> j & 1U) {
                prob *= q[j];
                total += weights[j];
                ++count;
            } else {
                prob *= 1.0 - q[j];
            }
        }
        // Uniform relay choice inside the encountered set.
        for (std::size_t j = 0; j < rsus.size(); ++j) {
            if (a >> j & 1U) out.eta[j] += prob / count;
        }
        out.mean += prob * total / count;
    }
    return out;
}

std::vector<double> gain_weights(const Coalition& S, PlayerId vehicle, const GameConfig& cfg) {
    std::vector<double> w;
    for (auto j : S.rsus(cfg)) w.push_back(cfg.gain(vehicle, j));
    return w;
}

std::vector<double> price_weights(const Coalition& S, PlayerId vehicle, const GameConfig& cfg) {
    std::vector<double> w;
    for (auto j : S.rsus(cfg)) w.push_back(cfg.price_of(j, vehicle));
    return w;
}

double rate_increase(const Coalition& S, PlayerId vehicle, const GameConfig& cfg) {
    return relay_weighted_mean(S, vehicle, gain_weights(S, vehicle, cfg), cfg);
}

double expected_price(const Coalition& S, PlayerId vehicle, const GameConfig& cfg) {
    return relay_weighted_mean(S, vehicle, price_weights(S, vehicle, cfg), cfg);
}

double throughput(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                  const Scheduler& scheduler) {
    return transmission_share(S, vehicle, cfg, scheduler) *
           (1.0 + rate_increase(S, vehicle, cfg)) * outside_inactive(S, cfg);
}

double avg_payment(const Coalition& S, PlayerId vehicle, const GameConfig& cfg,
                   const Scheduler& scheduler) {
    return transmission_share(S, vehicle, cfg, scheduler) * expected_price(S, vehicle, cfg);
}

double revenue(const Coalition& S, PlayerId rsu, const GameConfig& cfg, const Scheduler& scheduler) {
    require_rsu(S, rsu, cfg);
    const auto ordered = scheduler.order(S.vehicles(cfg));
    double total = 0.0;
    for (auto i : ordered) {
        total += share_in_order(ordered, i, cfg) * relay_usage_prob(S, i, rsu, cfg) *
                 cfg.price_of(rsu, i);
    }
    return total;
}

double cost(const Coalition& S, PlayerId rsu, const GameConfig& cfg, const Scheduler& scheduler) {
    require_rsu(S, rsu, cfg);
    const auto ordered = scheduler.order(S.vehicles(cfg));
    double total = 0.0;
    for (auto i : ordered) {
        total += share_in_order(ordered, i, cfg) *
                 (cfg.forward_cost(rsu, i) * relay_usage_prob(S, i, rsu, cfg) +
                  cfg.encounter(rsu, i) * cfg.receive_cost(rsu, i));
    }
    return total;
}

double PayoffReport::payoff_of(PlayerId id) const {
    for (const auto& v : vehicles) {
        if (v.id == id) return v.payoff;
    }
    for (const auto& r : rsus) {
        if (r.id == id) return r.payoff;
    }
    throw std::invalid_argument("player " + std::to_string(id.index()) + " not in coalition " +
                                coalition.to_string());
}

PayoffReport player_payoffs(const Coalition& S, const GameConfig& cfg, const Scheduler& scheduler) {
    PayoffReport report;
    report.coalition = S;
    const auto vehicles = S.vehicles(cfg);
    const auto rsus = S.rsus(cfg);
    if (vehicles.size() + rsus.size() != S.size()) {
        throw std::invalid_argument("coalition " + S.to_string() + " has players outside 1.." +
                                    std::to_string(cfg.num_players()));
    }
    const auto ordered = scheduler.order(vehicles);
    const double outside = outside_inactive(S, cfg);

    // eta[v][r] for vehicle v and RSU r of S, both ascending.
    std::vector<std::vector<double>> eta;
    std::vector<double> shares;
    for (auto i : vehicles) {
        VehicleTerms t;
        t.id = i;
        t.share = share_in_order(ordered, i, cfg);
        t.zeta = relay_weighted_mean(S, i, gain_weights(S, i, cfg), cfg);
        t.chi = relay_weighted_mean(S, i, price_weights(S, i, cfg), cfg);
        t.throughput = t.share * (1.0 + t.zeta) * outside;
        t.payment = t.share * t.chi;
        const auto k = cfg.vehicle_slot(i);
        t.payoff = cfg.alpha[k] * t.throughput - cfg.beta[k] * t.payment;
        report.sum_payoff += t.payoff;
        report.vehicles.push_back(t);
        shares.push_back(t.share);
        eta.push_back(relay_usage_row(S, i, cfg));
    }
    for (std::size_t r = 0; r < rsus.size(); ++r) {
        const auto j = rsus[r];
        RsuTerms t;
        t.id = j;
        for (std::size_t v = 0; v < vehicles.size(); ++v) {
            const auto i = vehicles[v];
            const double e = eta[v][r];
            t.eta.push_back(e);
            t.revenue += shares[v] * e * cfg.price_of(j, i);
            t.cost += shares[v] * (cfg.forward_cost(j, i) * e +
                                   cfg.encounter(j, i) * cfg.receive_cost(j, i));
        }
        const auto k = cfg.rsu_slot(j);
        t.payoff = cfg.gamma[k] * t.revenue - cfg.mu[k] * t.cost;
        report.sum_payoff += t.payoff;
        report.rsus.push_back(std::move(t));
    }
    return report;
}

}  // namespace coopvanet
