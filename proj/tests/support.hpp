// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures for the test binaries: random configurations and a
// brute-force protocol oracle that enumerates every activity pattern and
// every encounter set, independent of the closed forms under test.

#ifndef COOPVANET_TESTS_SUPPORT_HPP
#define COOPVANET_TESTS_SUPPORT_HPP

#include <cstdint>
#include <vector>

#include "coopvanet/rng.hpp"
#include "coopvanet/types.hpp"

namespace coopvanet::testing {

struct RandomConfigOptions {
    int max_k{4};
    int max_m{5};
    int min_k{0};
    int min_m{0};
    bool unit_payment_weights{false};  // beta = gamma = 1
    bool equal_activity{false};
};

inline GameConfig random_config(Rng& rng, const RandomConfigOptions& o = {}) {
    GameConfig cfg;
    do {
        cfg.K = o.min_k + static_cast<int>(rng.index(static_cast<std::uint64_t>(o.max_k - o.min_k + 1)));
        cfg.M = o.min_m + static_cast<int>(rng.index(static_cast<std::uint64_t>(o.max_m - o.min_m + 1)));
    } while (cfg.K + cfg.M == 0);
    const auto k = static_cast<std::size_t>(cfg.K);
    const auto m = static_cast<std::size_t>(cfg.M);
    const double shared_p = rng.uniform();
    for (std::size_t i = 0; i < k; ++i) cfg.p.push_back(o.equal_activity ? shared_p : rng.uniform());
    auto fill = [&](std::size_t rows, std::size_t cols, double scale) {
        Matrix mat(rows, std::vector<double>(cols));
        for (auto& row : mat) {
            for (auto& x : row) x = rng.uniform(scale);
        }
        return mat;
    };
    cfg.enc = fill(m, k, 1.0);
    cfg.delta = fill(k, m, 2.0);
    cfg.price = fill(m, k, 3.0);
    cfg.cost_fwd = fill(m, k, 1.0);
    cfg.cost_rcv = fill(m, k, 1.0);
    for (std::size_t i = 0; i < k; ++i) {
        cfg.alpha.push_back(0.1 + rng.uniform(10.0));
        cfg.beta.push_back(o.unit_payment_weights ? 1.0 : 0.1 + rng.uniform(2.0));
    }
    for (std::size_t j = 0; j < m; ++j) {
        cfg.gamma.push_back(o.unit_payment_weights ? 1.0 : 0.1 + rng.uniform(2.0));
        cfg.mu.push_back(0.1 + rng.uniform(2.0));
    }
    return cfg;
}

/// A random non-empty subset of {1..n}.
inline Coalition random_coalition(Rng& rng, int n) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    return Coalition::from_mask(1 + rng.index(all));
}

/// Exact per-slot expectations of coalition S, obtained by summing over
/// all 2^K activity patterns and all 2^|S_r| encounter sets of the
/// scheduled vehicle, with the smallest active member of S transmitting.
struct ProtocolExpectation {
    std::vector<double> share;       // per vehicle of S, ascending
    std::vector<double> throughput;  // per vehicle of S
    std::vector<double> payment;     // per vehicle of S
    std::vector<std::vector<double>> eta;  // [vehicle of S][rsu of S]
    std::vector<double> revenue;     // per RSU of S
    std::vector<double> cost;        // per RSU of S
};

inline ProtocolExpectation brute_force_protocol(const Coalition& S, const GameConfig& cfg) {
    const auto vs = S.vehicles(cfg);
    const auto rs = S.rsus(cfg);
    ProtocolExpectation out;
    out.share.assign(vs.size(), 0.0);
    out.throughput.assign(vs.size(), 0.0);
    out.payment.assign(vs.size(), 0.0);
    out.eta.assign(vs.size(), std::vector<double>(rs.size(), 0.0));
    out.revenue.assign(rs.size(), 0.0);
    out.cost.assign(rs.size(), 0.0);

    const std::uint64_t patterns = std::uint64_t{1} << cfg.K;
    for (std::uint64_t act = 0; act < patterns; ++act) {
        double pr = 1.0;
        bool outside_active = false;
        int scheduled = -1;
        for (int i = 1; i <= cfg.K; ++i) {
            const bool on = (act >> (i - 1)) & 1U;
            const double p = cfg.p[static_cast<std::size_t>(i - 1)];
            pr *= on ? p : 1.0 - p;
            const bool member = S.contains(PlayerId{i});
            if (on && !member) outside_active = true;
            if (on && member && scheduled < 0) scheduled = i;
        }
        if (scheduled < 0 || pr == 0.0) continue;
        std::size_t vi = 0;
        while (vs[vi].index() != scheduled) ++vi;
        const PlayerId v{scheduled};
        out.share[vi] += pr;

        const std::uint64_t sets = std::uint64_t{1} << rs.size();
        for (std::uint64_t enc = 0; enc < sets; ++enc) {
            double pe = 1.0;
            int count = 0;
            for (std::size_t r = 0; r < rs.size(); ++r) {
                const bool hit = (enc >> r) & 1U;
                const double q = cfg.encounter(rs[r], v);
                pe *= hit ? q : 1.0 - q;
                count += hit ? 1 : 0;
            }
            const double w = pr * pe;
            if (w == 0.0) continue;
            if (count == 0) {
                if (!outside_active) out.throughput[vi] += w;
                continue;
            }
            for (std::size_t r = 0; r < rs.size(); ++r) {
                if (!((enc >> r) & 1U)) continue;
                out.cost[r] += w * cfg.receive_cost(rs[r], v);
                const double pick = w / count;
                out.revenue[r] += pick * cfg.price_of(rs[r], v);
                out.payment[vi] += pick * cfg.price_of(rs[r], v);
                out.cost[r] += pick * cfg.forward_cost(rs[r], v);
                if (!outside_active) out.throughput[vi] += pick * (1.0 + cfg.gain(v, rs[r]));
            }
        }
    }
    // eta is conditional on the vehicle transmitting, so it is summed over
    // encounter sets alone.
    const std::uint64_t sets = std::uint64_t{1} << rs.size();
    for (std::size_t vi = 0; vi < vs.size(); ++vi) {
        for (std::uint64_t enc = 0; enc < sets; ++enc) {
            double pe = 1.0;
            int count = 0;
            for (std::size_t r = 0; r < rs.size(); ++r) {
                const bool hit = (enc >> r) & 1U;
                const double q = cfg.encounter(rs[r], vs[vi]);
                pe *= hit ? q : 1.0 - q;
                count += hit ? 1 : 0;
            }
            if (count == 0) continue;
            for (std::size_t r = 0; r < rs.size(); ++r) {
                if ((enc >> r) & 1U) out.eta[vi][r] += pe / count;
            }
        }
    }
    return out;
}

}  // namespace coopvanet::testing

#endif  // COOPVANET_TESTS_SUPPORT_HPP
