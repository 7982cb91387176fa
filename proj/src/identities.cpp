// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/identities.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "coopvanet/analytic.hpp"
#include "coopvanet/game.hpp"
#include "coopvanet/partition.hpp"

namespace coopvanet {

namespace {

constexpr int kMaxSuitePlayers = 16;
constexpr int kMaxNormalizePlayers = 10;

class Tracker {
public:
    Tracker(std::string name, double tolerance) : tolerance_(tolerance) { result_.name = std::move(name); }

    void residual(double r, const std::string& where) {
        if (r > result_.max_residual || std::isnan(r)) {
            result_.max_residual = std::isnan(r) ? INFINITY : r;
        }
        if (!(r <= tolerance_) && result_.status != CheckStatus::fail) {
            result_.status = CheckStatus::fail;
            std::ostringstream os;
            os.precision(6);
            os << where << " (residual " << r << ")";
            result_.detail = os.str();
        }
    }

    void require(bool ok, const std::string& where) {
        if (!ok && result_.status != CheckStatus::fail) {
            result_.status = CheckStatus::fail;
            result_.detail = where;
        }
    }

    void skip(std::string why) {
        result_.status = CheckStatus::skip;
        result_.detail = std::move(why);
    }

    InvariantResult take() { return std::move(result_); }

private:
    InvariantResult result_;
    double tolerance_;
};

void for_each_coalition(int n, const std::function<void(const Coalition&)>& fn) {
    const std::uint64_t all = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < all; ++mask) fn(Coalition::from_mask(mask));
}

}  // namespace

const char* to_string(CheckStatus status) {
    switch (status) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skip: return "SKIP";
    }
    return "?";
}

std::vector<InvariantResult> run_identity_suite(const GameConfig& cfg, double tolerance) {
    if (auto errors = validate_config(cfg); !errors.empty()) {
        throw std::invalid_argument("invalid config: " + errors.front());
    }
    if (cfg.num_players() > kMaxSuitePlayers) {
        throw std::length_error("identity suite enumerates all coalitions; K+M must be <= 16");
    }
    Tracker share_sum("share_sum", tolerance);
    Tracker eta_sum("eta_sum", tolerance);
    Tracker chi_identity("chi_identity", tolerance);
    Tracker zeta_identity("zeta_identity", tolerance);
    Tracker balance("payment_balance", tolerance);
    Tracker oracle("oracle_agreement", tolerance);
    Tracker pricing("pricing_cancellation", tolerance);
    Tracker rsu_only("rsu_only_zero", tolerance);
    Tracker normalize("normalize_invariance", 0.0);
    Tracker bounds("bounds", 0.0);

    bool pricing_applicable = true;

    for_each_coalition(cfg.num_players(), [&](const Coalition& S) {
        const auto where = "coalition " + S.to_string();
        const auto vehicles = S.vehicles(cfg);
        const auto rsus = S.rsus(cfg);
        const auto report = player_payoffs(S, cfg);

        double share_total = 0.0;
        double inactive = 1.0;
        for (const auto& v : report.vehicles) {
            share_total += v.share;
            inactive *= 1.0 - cfg.activity(v.id);
        }
        share_sum.residual(std::abs(share_total - (1.0 - inactive)), where);

        double payments = 0.0;
        double revenues = 0.0;
        for (std::size_t vi = 0; vi < report.vehicles.size(); ++vi) {
            const auto& v = report.vehicles[vi];
            const auto vwhere = where + ", vehicle " + std::to_string(v.id.index());
            double eta_total = 0.0;
            double none = 1.0;
            double chi = 0.0;
            double zeta = 0.0;
            for (std::size_t ri = 0; ri < rsus.size(); ++ri) {
                const double e = report.rsus[ri].eta[vi];
                eta_total += e;
                none *= 1.0 - cfg.encounter(rsus[ri], v.id);
                chi += e * cfg.price_of(rsus[ri], v.id);
                zeta += e * cfg.gain(v.id, rsus[ri]);
                bounds.require(e >= 0.0 && e <= 1.0, vwhere + ": eta outside [0,1]");
            }
            eta_sum.residual(std::abs(eta_total - (1.0 - none)), vwhere);
            chi_identity.residual(std::abs(chi - v.chi), vwhere);
            zeta_identity.residual(std::abs(zeta - v.zeta), vwhere);
            payments += v.payment;
            bounds.require(v.share >= 0.0 && v.share <= 1.0, vwhere + ": share outside [0,1]");
            bounds.require(v.throughput >= 0.0 && v.payment >= 0.0,
                           vwhere + ": negative throughput or payment");

            if (rsus.size() <= kOracleMaxRsus && rsus.size() <= 12) {
                const auto gains = oracle_relay_mean(S, v.id, gain_weights(S, v.id, cfg), cfg);
                const auto prices = oracle_relay_mean(S, v.id, price_weights(S, v.id, cfg), cfg);
                oracle.residual(std::abs(gains.mean - v.zeta), vwhere + ": zeta");
                oracle.residual(std::abs(prices.mean - v.chi), vwhere + ": chi");
                for (std::size_t ri = 0; ri < rsus.size(); ++ri) {
                    oracle.residual(std::abs(gains.eta[ri] - report.rsus[ri].eta[vi]),
                                    vwhere + ": eta");
                }
            }
        }
        for (const auto& r : report.rsus) {
            revenues += r.revenue;
            bounds.require(r.revenue >= 0.0 && r.cost >= 0.0,
                           where + ", RSU " + std::to_string(r.id.index()) +
                               ": negative revenue or cost");
        }
        balance.residual(std::abs(payments - revenues), where);

        if (vehicles.empty()) {
            for (const auto& r : report.rsus) rsu_only.residual(std::abs(r.payoff), where);
        }

        const auto check = pricing_cancellation_check(S, cfg, tolerance);
        if (!check.applicable) {
            pricing_applicable = false;
        } else {
            pricing.residual(check.residual, where);
        }
    });

    if (!pricing_applicable) pricing.skip("beta or gamma differs from 1");

    if (cfg.num_players() <= kMaxNormalizePlayers) {
        for (const auto& cs : enumerate_partitions(cfg.num_players())) {
            const auto norm = normalize_structure(cs, cfg);
            const auto before = structure_payoffs(cs, cfg);
            const auto after = structure_payoffs(norm, cfg);
            normalize.require(before == after, "structure " + cs.to_string());
            normalize.require(normalize_structure(norm, cfg) == norm,
                              "normalize not idempotent on " + cs.to_string());
        }
    } else {
        normalize.skip("more than 10 players");
    }

    std::vector<InvariantResult> out;
    for (auto* t : {&share_sum, &eta_sum, &chi_identity, &zeta_identity, &balance, &oracle,
                    &pricing, &rsu_only, &normalize, &bounds}) {
        out.push_back(t->take());
    }
    return out;
}

}  // namespace coopvanet
