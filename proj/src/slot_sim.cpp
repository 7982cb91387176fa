// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/slot_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coopvanet/rng.hpp"

namespace coopvanet {

namespace {

// Sample mean and standard error of a variable that is zero except for
// `counts[c]` slots where it equals `values[c]`.
class DiscreteTally {
public:
    void add(std::uint64_t count, double value) {
        const double c = static_cast<double>(count);
        sum_ += c * value;
        sum_sq_ += c * value * value;
    }

    [[nodiscard]] Estimate finish(std::uint64_t n_slots) const {
        const double n = static_cast<double>(n_slots);
        Estimate e;
        e.mean = sum_ / n;
        if (n_slots > 1) {
            const double var = std::max(0.0, (sum_sq_ - n * e.mean * e.mean) / (n - 1.0));
            e.std_error = std::sqrt(var / n);
        }
        return e;
    }

private:
    double sum_{0.0};
    double sum_sq_{0.0};
};

struct Block {
    std::vector<PlayerId> vehicles;  // ascending
    std::vector<PlayerId> rsus;      // ascending
};

using Counts = std::vector<std::vector<std::uint64_t>>;

}  // namespace

EmpiricalReport simulate_slots(const CoalitionStructure& cs, const GameConfig& cfg,
                               std::uint64_t n_slots, std::uint64_t seed,
                               const SlotSimOptions& options) {
    if (n_slots == 0) throw std::invalid_argument("simulate_slots needs n_slots >= 1");
    if (auto errors = validate_config(cfg); !errors.empty()) {
        throw std::invalid_argument("invalid config: " + errors.front());
    }
    if (cs.num_players() != cfg.num_players()) {
        throw std::invalid_argument("structure does not cover the config's players");
    }
    const bool geometric = options.encounter_mode == EncounterMode::geometry;
    if (geometric) {
        if (!options.geometry) throw std::invalid_argument("geometry mode needs a GeometryConfig");
        if (auto errors = validate_geometry(*options.geometry, cfg.K); !errors.empty()) {
            throw std::invalid_argument(errors.front());
        }
    }

    const auto K = static_cast<std::size_t>(cfg.K);
    const auto M = static_cast<std::size_t>(cfg.M);

    std::vector<Block> blocks;
    std::vector<std::size_t> block_of_vehicle(K);
    for (const auto& c : cs.coalitions()) {
        Block b{c.vehicles(cfg), c.rsus(cfg)};
        for (auto v : b.vehicles) block_of_vehicle[cfg.vehicle_slot(v)] = blocks.size();
        blocks.push_back(std::move(b));
    }

    // Integer event accounting, indexed [vehicle][rsu] or [rsu][vehicle].
    std::vector<std::uint64_t> direct_success(K, 0);
    std::vector<std::uint64_t> direct_collided(K, 0);
    Counts relay_success(K, std::vector<std::uint64_t>(M, 0));
    Counts relay_collided(K, std::vector<std::uint64_t>(M, 0));
    Counts encounter_only(M, std::vector<std::uint64_t>(K, 0));
    Counts selected(M, std::vector<std::uint64_t>(K, 0));

    EmpiricalReport report;
    report.n_slots = n_slots;
    report.seed = seed;

    Rng rng(seed);
    std::vector<char> active(K, 0);
    std::vector<std::size_t> active_in_block(blocks.size(), 0);
    std::vector<PlayerId> active_members;
    std::vector<std::size_t> encountered;  // RSU slots
    std::vector<Point> vehicle_pos(geometric ? K : 0);
    std::vector<Point> rsu_pos(geometric ? M : 0);
    // Per-slot ledger: who paid whom, seen from both sides.
    std::vector<long> paid_to(K, -1);
    std::vector<long> charged(M, -1);

    for (std::uint64_t slot = 0; slot < n_slots; ++slot) {
        if (geometric) {
            for (auto& v : vehicle_pos) v = draw_position(*options.geometry, rng);
            for (auto& r : rsu_pos) r = draw_position(*options.geometry, rng);
        }
        std::size_t total_active = 0;
        std::fill(active_in_block.begin(), active_in_block.end(), 0);
        for (std::size_t i = 0; i < K; ++i) {
            active[i] = rng.bernoulli(cfg.p[i]) ? 1 : 0;
            if (active[i]) {
                ++total_active;
                ++active_in_block[block_of_vehicle[i]];
            }
        }
        std::fill(paid_to.begin(), paid_to.end(), -1);
        std::fill(charged.begin(), charged.end(), -1);
        std::size_t transmitters = 0;

        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& block = blocks[b];
            active_members.clear();
            for (auto v : block.vehicles) {
                if (active[v.slot()]) active_members.push_back(v);
            }
            const auto scheduled = options.scheduler.pick(active_members);
            if (!scheduled) continue;
            ++transmitters;
            const std::size_t i = cfg.vehicle_slot(*scheduled);
            const bool success = total_active == active_in_block[b];

            encountered.clear();
            for (auto r : block.rsus) {
                const std::size_t j = cfg.rsu_slot(r);
                const bool hit = geometric
                                     ? encounters(rsu_pos[j], vehicle_pos[i],
                                                  options.geometry->range_km[i])
                                     : rng.bernoulli(cfg.enc[j][i]);
                if (hit) encountered.push_back(j);
            }
            if (encountered.empty()) {
                ++(success ? direct_success[i] : direct_collided[i]);
                continue;
            }
            const std::size_t relay = encountered[rng.index(encountered.size())];
            ++(success ? relay_success[i][relay] : relay_collided[i][relay]);
            for (auto j : encountered) {
                if (j == relay) {
                    ++selected[j][i];
                    charged[j] = static_cast<long>(i);
                } else {
                    ++encounter_only[j][i];
                }
            }
            paid_to[i] = static_cast<long>(relay);
        }

        if (transmitters > blocks.size()) ++report.schedule_violations;
        // Success needs total_active == active_in_block; verify against the
        // transmitter count of other coalitions.
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (active_in_block[b] > 0 && total_active == active_in_block[b] && transmitters != 1) {
                ++report.collision_violations;
            }
        }
        std::size_t payments = 0;
        std::size_t revenues = 0;
        bool consistent = true;
        for (std::size_t i = 0; i < K; ++i) {
            if (paid_to[i] < 0) continue;
            ++payments;
            consistent = consistent && charged[static_cast<std::size_t>(paid_to[i])] ==
                                           static_cast<long>(i);
        }
        for (std::size_t j = 0; j < M; ++j) revenues += charged[j] >= 0 ? 1 : 0;
        if (!consistent || payments != revenues) ++report.balance_violations;
    }

    for (std::size_t i = 0; i < K; ++i) {
        const PlayerId id{static_cast<int>(i) + 1};
        DiscreteTally rate;
        DiscreteTally pay;
        DiscreteTally utility;
        const double a = cfg.alpha[i];
        const double bw = cfg.beta[i];
        rate.add(direct_success[i], 1.0);
        utility.add(direct_success[i], a);
        VehicleEstimate v;
        v.id = id;
        v.scheduled = direct_success[i] + direct_collided[i];
        v.collided = direct_collided[i];
        for (std::size_t j = 0; j < M; ++j) {
            const double gain = 1.0 + cfg.delta[i][j];
            const double price = cfg.price[j][i];
            rate.add(relay_success[i][j], gain);
            pay.add(relay_success[i][j], price);
            pay.add(relay_collided[i][j], price);
            utility.add(relay_success[i][j], a * gain - bw * price);
            utility.add(relay_collided[i][j], -bw * price);
            v.scheduled += relay_success[i][j] + relay_collided[i][j];
            v.collided += relay_collided[i][j];
            v.relayed += relay_success[i][j] + relay_collided[i][j];
        }
        v.throughput = rate.finish(n_slots);
        v.payment = pay.finish(n_slots);
        v.payoff = utility.finish(n_slots);
        report.vehicles.push_back(v);
    }
    for (std::size_t j = 0; j < M; ++j) {
        const PlayerId id{cfg.K + static_cast<int>(j) + 1};
        DiscreteTally earned;
        DiscreteTally spent;
        DiscreteTally utility;
        const double g = cfg.gamma[j];
        const double mu = cfg.mu[j];
        RsuEstimate r;
        r.id = id;
        for (std::size_t i = 0; i < K; ++i) {
            const double price = cfg.price[j][i];
            const double rcv = cfg.cost_rcv[j][i];
            const double both = rcv + cfg.cost_fwd[j][i];
            earned.add(selected[j][i], price);
            spent.add(encounter_only[j][i], rcv);
            spent.add(selected[j][i], both);
            utility.add(encounter_only[j][i], -mu * rcv);
            utility.add(selected[j][i], g * price - mu * both);
            r.encountered += encounter_only[j][i] + selected[j][i];
            r.selected += selected[j][i];
        }
        r.revenue = earned.finish(n_slots);
        r.cost = spent.finish(n_slots);
        r.payoff = utility.finish(n_slots);
        report.rsus.push_back(r);
    }
    return report;
}

}  // namespace coopvanet
