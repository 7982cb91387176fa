// SPDX-License-Identifier: Apache-2.0
//
// Set-partition enumeration and coalition-structure utilities.

#ifndef COOPVANET_PARTITION_HPP
#define COOPVANET_PARTITION_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coopvanet/types.hpp"

namespace coopvanet {

/// Largest n accepted by enumerate_partitions (B(12) = 4213597).
inline constexpr int kMaxEnumeratedPlayers = 12;

/// Calls `visit` with each restricted-growth string of length n in
/// lexicographic order. a[0] = 0 and a[i] <= 1 + max(a[0..i-1]).
void for_each_restricted_growth_string(int n,
                                       const std::function<void(const std::vector<int>&)>& visit);

/// Structure whose player k+1 sits in block rgs[k].
CoalitionStructure structure_from_rgs(const std::vector<int>& rgs);

/// All set partitions of {1..n}, ordered lexicographically by restricted
/// growth string. The first entry is the grand coalition, the last is the
/// all-singleton structure. Throws std::domain_error when n == 0 and
/// std::length_error when n > kMaxEnumeratedPlayers.
std::vector<CoalitionStructure> enumerate_partitions(int n_players);

/// 1-based position of `cs` in enumerate_partitions order, computed
/// without enumerating. Valid for up to 25 players.
std::uint64_t partition_rank(const CoalitionStructure& cs);

/// Inverse of partition_rank. Throws std::out_of_range for ids outside
/// 1..B(n).
CoalitionStructure partition_unrank(int n_players, std::uint64_t id);

/// Bell number B(n), n <= 25.
std::uint64_t bell_number(int n);

/// Splits every coalition without vehicles into RSU singletons.
CoalitionStructure normalize_structure(const CoalitionStructure& cs, const GameConfig& cfg);

/// Parses "{1,2},{3},{4}" or "1,2|3|4" into a structure over {1..n_players}.
CoalitionStructure parse_structure(std::string_view text, int n_players);

/// Label of `cs` in the 2-vehicle/2-RSU table of possible structures
/// ("C1".."C15"), or nullopt when n != 4 or nothing matches.
std::optional<std::string> table_label(const CoalitionStructure& cs);

/// Inverse of table_label.
std::optional<CoalitionStructure> structure_for_label(std::string_view label);

/// The fifteen 2-vehicle/2-RSU structures in table order C1..C15.
const std::vector<CoalitionStructure>& reference_structures();

}  // namespace coopvanet

#endif  // COOPVANET_PARTITION_HPP
