// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/types.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coopvanet {

std::ostream& operator<<(std::ostream& os, PlayerId id) { return os << id.index(); }

Role GameConfig::role(PlayerId id) const {
    if (is_vehicle(id)) return Role::vehicle;
    if (is_rsu(id)) return Role::rsu;
    throw std::invalid_argument("player " + std::to_string(id.index()) + " is not in 1.." +
                                std::to_string(num_players()));
}

std::size_t GameConfig::vehicle_slot(PlayerId vehicle) const {
    if (!is_vehicle(vehicle)) {
        throw std::invalid_argument("player " + std::to_string(vehicle.index()) +
                                    " is not a vehicle");
    }
    return vehicle.slot();
}

std::size_t GameConfig::rsu_slot(PlayerId rsu) const {
    if (!is_rsu(rsu)) {
        throw std::invalid_argument("player " + std::to_string(rsu.index()) + " is not an RSU");
    }
    return static_cast<std::size_t>(rsu.index() - K - 1);
}

double GameConfig::activity(PlayerId vehicle) const { return p[vehicle_slot(vehicle)]; }

double GameConfig::encounter(PlayerId rsu, PlayerId vehicle) const {
    return enc[rsu_slot(rsu)][vehicle_slot(vehicle)];
}

double GameConfig::gain(PlayerId vehicle, PlayerId rsu) const {
    return delta[vehicle_slot(vehicle)][rsu_slot(rsu)];
}

double GameConfig::price_of(PlayerId rsu, PlayerId vehicle) const {
    return price[rsu_slot(rsu)][vehicle_slot(vehicle)];
}

double GameConfig::forward_cost(PlayerId rsu, PlayerId vehicle) const {
    return cost_fwd[rsu_slot(rsu)][vehicle_slot(vehicle)];
}

double GameConfig::receive_cost(PlayerId rsu, PlayerId vehicle) const {
    return cost_rcv[rsu_slot(rsu)][vehicle_slot(vehicle)];
}

namespace {

enum class Range { probability, nonnegative, real };

void check_value(std::vector<std::string>& errors, const std::string& where, double v, Range range) {
    if (!std::isfinite(v)) {
        errors.push_back(where + ": non-finite value");
        return;
    }
    if (range == Range::probability && (v < 0.0 || v > 1.0)) {
        std::ostringstream os;
        os << where << ": probability out of range [0,1] (" << v << ")";
        errors.push_back(os.str());
    } else if (range == Range::nonnegative && v < 0.0) {
        std::ostringstream os;
        os << where << ": negative value (" << v << ")";
        errors.push_back(os.str());
    }
}

void check_vector(std::vector<std::string>& errors, const char* name, const std::vector<double>& v,
                  int expected, Range range) {
    if (static_cast<int>(v.size()) != expected) {
        errors.push_back(std::string(name) + ": shape mismatch, expected " +
                         std::to_string(expected) + " entries, got " + std::to_string(v.size()));
        return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        check_value(errors, std::string(name) + "[" + std::to_string(i + 1) + "]", v[i], range);
    }
}

void check_matrix(std::vector<std::string>& errors, const char* name, const Matrix& m, int rows,
                  int cols, Range range) {
    const auto shape = std::to_string(rows) + "x" + std::to_string(cols);
    if (static_cast<int>(m.size()) != rows) {
        errors.push_back(std::string(name) + ": shape mismatch, expected " + shape + ", got " +
                         std::to_string(m.size()) + " rows");
        return;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (static_cast<int>(m[r].size()) != cols) {
            errors.push_back(std::string(name) + ": shape mismatch, expected " + shape + ", row " +
                             std::to_string(r + 1) + " has " + std::to_string(m[r].size()) +
                             " entries");
            continue;
        }
        for (std::size_t c = 0; c < m[r].size(); ++c) {
            check_value(errors,
                        std::string(name) + "[" + std::to_string(r + 1) + "][" +
                            std::to_string(c + 1) + "]",
                        m[r][c], range);
        }
    }
}

}  // namespace

std::vector<std::string> validate_config(const GameConfig& cfg) {
    std::vector<std::string> errors;
    if (cfg.K < 0) errors.emplace_back("K: negative vehicle count");
    if (cfg.M < 0) errors.emplace_back("M: negative RSU count");
    if (cfg.K + cfg.M < 1) errors.emplace_back("K+M: at least one player is required");
    if (cfg.K + cfg.M > 62) errors.emplace_back("K+M: more than 62 players is not supported");
    if (!errors.empty()) return errors;

    check_vector(errors, "p", cfg.p, cfg.K, Range::probability);
    check_matrix(errors, "enc", cfg.enc, cfg.M, cfg.K, Range::probability);
    check_matrix(errors, "delta", cfg.delta, cfg.K, cfg.M, Range::nonnegative);
    check_matrix(errors, "price", cfg.price, cfg.M, cfg.K, Range::nonnegative);
    check_matrix(errors, "cost_fwd", cfg.cost_fwd, cfg.M, cfg.K, Range::nonnegative);
    check_matrix(errors, "cost_rcv", cfg.cost_rcv, cfg.M, cfg.K, Range::nonnegative);
    check_vector(errors, "alpha", cfg.alpha, cfg.K, Range::real);
    check_vector(errors, "beta", cfg.beta, cfg.K, Range::real);
    check_vector(errors, "gamma", cfg.gamma, cfg.M, Range::real);
    check_vector(errors, "mu", cfg.mu, cfg.M, Range::real);
    return errors;
}

GameConfig uniform_config(int K, int M, double p, double enc, double delta, double price,
                          double cost_fwd, double cost_rcv, double alpha, double beta,
                          double gamma, double mu) {
    const auto k = static_cast<std::size_t>(K);
    const auto m = static_cast<std::size_t>(M);
    GameConfig cfg;
    cfg.K = K;
    cfg.M = M;
    cfg.p.assign(k, p);
    cfg.enc.assign(m, std::vector<double>(k, enc));
    cfg.delta.assign(k, std::vector<double>(m, delta));
    cfg.price.assign(m, std::vector<double>(k, price));
    cfg.cost_fwd.assign(m, std::vector<double>(k, cost_fwd));
    cfg.cost_rcv.assign(m, std::vector<double>(k, cost_rcv));
    cfg.alpha.assign(k, alpha);
    cfg.beta.assign(k, beta);
    cfg.gamma.assign(m, gamma);
    cfg.mu.assign(m, mu);
    return cfg;
}

GameConfig reference_config(double enc) {
    return uniform_config(2, 2, 0.6, enc, 0.5, 1.5, 0.5, 0.2, 10.0, 1.0, 1.0, 1.0);
}

// Coalition ---------------------------------------------------------------

Coalition::Coalition(std::vector<PlayerId> members) : members_(std::move(members)) {
    if (members_.empty()) throw std::invalid_argument("coalition must be non-empty");
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw std::invalid_argument("coalition has duplicate members");
    }
    if (members_.front().index() < 1) {
        throw std::invalid_argument("player indices are 1-based");
    }
}

Coalition::Coalition(std::initializer_list<int> members)
    : Coalition([&] {
          std::vector<PlayerId> ids;
          for (int m : members) ids.emplace_back(m);
          return ids;
      }()) {}

Coalition Coalition::from_mask(std::uint64_t mask) {
    std::vector<PlayerId> ids;
    for (int bit = 0; bit < 64; ++bit) {
        if (mask >> bit & 1U) ids.emplace_back(bit + 1);
    }
    return Coalition(std::move(ids));
}

bool Coalition::contains(PlayerId id) const noexcept {
    return std::binary_search(members_.begin(), members_.end(), id);
}

std::uint64_t Coalition::mask() const noexcept {
    std::uint64_t m = 0;
    for (auto id : members_) m |= std::uint64_t{1} << id.slot();
    return m;
}

std::vector<PlayerId> Coalition::vehicles(const GameConfig& cfg) const {
    std::vector<PlayerId> out;
    for (auto id : members_) {
        if (cfg.is_vehicle(id)) out.push_back(id);
    }
    return out;
}

std::vector<PlayerId> Coalition::rsus(const GameConfig& cfg) const {
    std::vector<PlayerId> out;
    for (auto id : members_) {
        if (cfg.is_rsu(id)) out.push_back(id);
    }
    return out;
}

std::string Coalition::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(members_[i].index());
    }
    return s + "}";
}

// CoalitionStructure ------------------------------------------------------

CoalitionStructure::CoalitionStructure(std::vector<Coalition> coalitions, int n_players)
    : coalitions_(std::move(coalitions)), n_players_(n_players) {
    if (n_players < 1) throw std::invalid_argument("structure needs at least one player");
    std::vector<int> seen(static_cast<std::size_t>(n_players), 0);
    for (const auto& c : coalitions_) {
        for (auto id : c.members()) {
            if (id.index() < 1 || id.index() > n_players) {
                throw std::invalid_argument("player " + std::to_string(id.index()) +
                                            " outside 1.." + std::to_string(n_players));
            }
            if (seen[id.slot()]++) {
                throw std::invalid_argument("coalitions are not disjoint (player " +
                                            std::to_string(id.index()) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            throw std::invalid_argument("player " + std::to_string(i + 1) +
                                        " is not covered by the structure");
        }
    }
    std::sort(coalitions_.begin(), coalitions_.end(),
              [](const Coalition& a, const Coalition& b) { return a.front() < b.front(); });
}

CoalitionStructure::CoalitionStructure(std::initializer_list<std::initializer_list<int>> blocks,
                                       int n_players)
    : CoalitionStructure(
          [&] {
              std::vector<Coalition> cs;
              for (const auto& b : blocks) cs.emplace_back(b);
              return cs;
          }(),
          n_players) {}

const Coalition& CoalitionStructure::coalition_of(PlayerId id) const {
    for (const auto& c : coalitions_) {
        if (c.contains(id)) return c;
    }
    throw std::invalid_argument("player " + std::to_string(id.index()) + " not in structure");
}

std::string CoalitionStructure::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coalitions_.size(); ++i) {
        if (i) s += ",";
        s += coalitions_[i].to_string();
    }
    return s;
}

}  // namespace coopvanet
