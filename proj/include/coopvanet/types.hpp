// SPDX-License-Identifier: Apache-2.0
//
// Domain types for the vehicle/RSU coalitional game.

#ifndef COOPVANET_TYPES_HPP
#define COOPVANET_TYPES_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace coopvanet {

using Matrix = std::vector<std::vector<double>>;

/// 1-based player index. Vehicles occupy 1..K, RSUs K+1..K+M.
class PlayerId {
public:
    constexpr PlayerId() = default;
    constexpr explicit PlayerId(int index) : index_(index) {}

    [[nodiscard]] constexpr int index() const noexcept { return index_; }
    /// Zero-based position, handy for indexing per-player vectors.
    [[nodiscard]] constexpr std::size_t slot() const noexcept {
        return static_cast<std::size_t>(index_ - 1);
    }

    friend constexpr auto operator<=>(PlayerId, PlayerId) = default;

private:
    int index_{0};
};

std::ostream& operator<<(std::ostream& os, PlayerId id);

enum class Role { vehicle, rsu };

/// Exogenous parameters of the game.
///
/// Matrix orientation follows the symbols they carry: `enc`, `price`,
/// `cost_fwd` and `cost_rcv` are RSU-major (M rows of K entries) while
/// `delta` is vehicle-major (K rows of M entries).
struct GameConfig {
    int K{0};
    int M{0};
    std::vector<double> p;     // K, activity probability
    Matrix enc;                // M x K, encounter probability of RSU j with vehicle i
    Matrix delta;              // K x M, rate gain of vehicle i relayed by RSU j
    Matrix price;              // M x K, price RSU j charges vehicle i per transmission
    Matrix cost_fwd;           // M x K
    Matrix cost_rcv;           // M x K
    std::vector<double> alpha; // K
    std::vector<double> beta;  // K
    std::vector<double> gamma; // M
    std::vector<double> mu;    // M

    [[nodiscard]] int num_players() const noexcept { return K + M; }
    [[nodiscard]] bool is_vehicle(PlayerId id) const noexcept {
        return id.index() >= 1 && id.index() <= K;
    }
    [[nodiscard]] bool is_rsu(PlayerId id) const noexcept {
        return id.index() > K && id.index() <= K + M;
    }
    [[nodiscard]] Role role(PlayerId id) const;

    // Accessors taking player ids; they throw std::invalid_argument when a
    // role does not match.
    [[nodiscard]] double activity(PlayerId vehicle) const;
    [[nodiscard]] double encounter(PlayerId rsu, PlayerId vehicle) const;
    [[nodiscard]] double gain(PlayerId vehicle, PlayerId rsu) const;
    [[nodiscard]] double price_of(PlayerId rsu, PlayerId vehicle) const;
    [[nodiscard]] double forward_cost(PlayerId rsu, PlayerId vehicle) const;
    [[nodiscard]] double receive_cost(PlayerId rsu, PlayerId vehicle) const;

    [[nodiscard]] std::size_t vehicle_slot(PlayerId vehicle) const;
    [[nodiscard]] std::size_t rsu_slot(PlayerId rsu) const;
};

/// Every violated invariant of `cfg`; empty when the config is valid.
std::vector<std::string> validate_config(const GameConfig& cfg);

/// Builds a config with every entry of each array set to the given scalar.
GameConfig uniform_config(int K, int M, double p, double enc, double delta, double price,
                          double cost_fwd, double cost_rcv, double alpha, double beta,
                          double gamma, double mu);

/// The numerical-evaluation parameter set: 2 vehicles, 2 RSUs,
/// Delta=0.5, p=0.6, xi=1.5, c^f=0.5, c^r=0.2, alpha=10, beta=1, gamma=mu=1.
/// The encounter matrix is filled with `enc` for every pair.
GameConfig reference_config(double enc);

/// A non-empty set of players, stored sorted ascending.
class Coalition {
public:
    Coalition() = default;
    explicit Coalition(std::vector<PlayerId> members);
    Coalition(std::initializer_list<int> members);

    /// Players whose bit (index-1) is set in `mask`.
    static Coalition from_mask(std::uint64_t mask);

    [[nodiscard]] std::span<const PlayerId> members() const noexcept { return members_; }
    [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
    [[nodiscard]] bool contains(PlayerId id) const noexcept;
    [[nodiscard]] std::uint64_t mask() const noexcept;
    [[nodiscard]] PlayerId front() const { return members_.front(); }

    /// S_u, ascending.
    [[nodiscard]] std::vector<PlayerId> vehicles(const GameConfig& cfg) const;
    /// S_r, ascending.
    [[nodiscard]] std::vector<PlayerId> rsus(const GameConfig& cfg) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Coalition&, const Coalition&) = default;
    friend auto operator<=>(const Coalition& a, const Coalition& b) {
        return a.members_ <=> b.members_;
    }

private:
    std::vector<PlayerId> members_;
};

/// A partition of {1..n} into coalitions, blocks ordered by smallest member.
class CoalitionStructure {
public:
    CoalitionStructure() = default;
    /// Throws std::invalid_argument unless the blocks are pairwise disjoint
    /// and cover exactly {1..n_players}.
    CoalitionStructure(std::vector<Coalition> coalitions, int n_players);
    CoalitionStructure(std::initializer_list<std::initializer_list<int>> blocks, int n_players);

    [[nodiscard]] std::span<const Coalition> coalitions() const noexcept { return coalitions_; }
    [[nodiscard]] int num_players() const noexcept { return n_players_; }
    [[nodiscard]] const Coalition& coalition_of(PlayerId id) const;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const CoalitionStructure&, const CoalitionStructure&) = default;

private:
    std::vector<Coalition> coalitions_;
    int n_players_{0};
};

}  // namespace coopvanet

#endif  // COOPVANET_TYPES_HPP
