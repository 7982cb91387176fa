// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/partition.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace coopvanet {

void for_each_restricted_growth_string(
    int n, const std::function<void(const std::vector<int>&)>& visit) {
    if (n <= 0) throw std::domain_error("partition enumeration over an empty domain");
    const auto len = static_cast<std::size_t>(n);
    std::vector<int> a(len, 0);
    // prefix_max[i] = max(a[0..i])
    std::vector<int> prefix_max(len, 0);
    while (true) {
        visit(a);
        // Rightmost position that can still grow.
        std::size_t i = len - 1;
        while (i > 0 && a[i] > prefix_max[i - 1]) --i;
        if (i == 0) return;
        ++a[i];
        prefix_max[i] = std::max(prefix_max[i - 1], a[i]);
        for (std::size_t k = i + 1; k < len; ++k) {
            a[k] = 0;
            prefix_max[k] = prefix_max[i];
        }
    }
}

CoalitionStructure structure_from_rgs(const std::vector<int>& rgs) {
    const int blocks = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
    std::vector<std::vector<PlayerId>> members(static_cast<std::size_t>(blocks));
    for (std::size_t k = 0; k < rgs.size(); ++k) {
        members[static_cast<std::size_t>(rgs[k])].emplace_back(static_cast<int>(k) + 1);
    }
    std::vector<Coalition> coalitions;
    coalitions.reserve(members.size());
    for (auto& m : members) coalitions.emplace_back(std::move(m));
    return CoalitionStructure(std::move(coalitions), static_cast<int>(rgs.size()));
}

std::vector<CoalitionStructure> enumerate_partitions(int n_players) {
    if (n_players <= 0) throw std::domain_error("partition enumeration over an empty domain");
    if (n_players > kMaxEnumeratedPlayers) {
        throw std::length_error("enumerate_partitions: n=" + std::to_string(n_players) +
                                " exceeds " + std::to_string(kMaxEnumeratedPlayers));
    }
    std::vector<CoalitionStructure> out;
    for_each_restricted_growth_string(
        n_players, [&](const std::vector<int>& rgs) { out.push_back(structure_from_rgs(rgs)); });
    return out;
}

namespace {

constexpr int kMaxRankedPlayers = 25;

// completions[pos][m]: restricted growth strings finishing positions pos..n-1
// when the largest block label used so far is m.
std::vector<std::vector<std::uint64_t>> completion_table(int n) {
    const auto len = static_cast<std::size_t>(n);
    std::vector<std::vector<std::uint64_t>> t(len + 1, std::vector<std::uint64_t>(len + 1, 0));
    for (std::size_t m = 0; m <= len; ++m) t[len][m] = 1;
    for (std::size_t pos = len; pos-- > 1;) {
        for (std::size_t m = 0; m < len; ++m) {
            t[pos][m] = (m + 1) * t[pos + 1][m] + t[pos + 1][m + 1];
        }
    }
    return t;
}

void require_rankable(int n) {
    if (n <= 0) throw std::domain_error("partition enumeration over an empty domain");
    if (n > kMaxRankedPlayers) {
        throw std::length_error("partition ranking supports at most 25 players");
    }
}

}  // namespace

std::uint64_t bell_number(int n) {
    if (n == 0) return 1;
    require_rankable(n);
    return completion_table(n)[1][0];
}

std::uint64_t partition_rank(const CoalitionStructure& cs) {
    const int n = cs.num_players();
    require_rankable(n);
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    int label = 0;
    for (const auto& c : cs.coalitions()) {  // ordered by smallest member
        for (auto id : c.members()) rgs[id.slot()] = label;
        ++label;
    }
    const auto t = completion_table(n);
    std::uint64_t rank = 0;
    int m = 0;
    for (std::size_t pos = 1; pos < rgs.size(); ++pos) {
        for (int v = 0; v < rgs[pos]; ++v) {
            rank += t[pos + 1][static_cast<std::size_t>(std::max(m, v))];
        }
        m = std::max(m, rgs[pos]);
    }
    return rank + 1;
}

CoalitionStructure partition_unrank(int n_players, std::uint64_t id) {
    require_rankable(n_players);
    const auto t = completion_table(n_players);
    if (id < 1 || id > t[1][0]) {
        throw std::out_of_range("structure id " + std::to_string(id) + " outside 1.." +
                                std::to_string(t[1][0]));
    }
    std::uint64_t remaining = id - 1;
    std::vector<int> rgs(static_cast<std::size_t>(n_players), 0);
    int m = 0;
    for (std::size_t pos = 1; pos < rgs.size(); ++pos) {
        for (int v = 0; v <= m + 1; ++v) {
            const auto block = t[pos + 1][static_cast<std::size_t>(std::max(m, v))];
            if (remaining < block) {
                rgs[pos] = v;
                break;
            }
            remaining -= block;
        }
        m = std::max(m, rgs[pos]);
    }
    return structure_from_rgs(rgs);
}

CoalitionStructure normalize_structure(const CoalitionStructure& cs, const GameConfig& cfg) {
    std::vector<Coalition> out;
    for (const auto& c : cs.coalitions()) {
        if (!c.vehicles(cfg).empty() || c.size() == 1) {
            out.push_back(c);
            continue;
        }
        for (auto id : c.members()) out.push_back(Coalition(std::vector<PlayerId>{id}));
    }
    return CoalitionStructure(std::move(out), cs.num_players());
}

CoalitionStructure parse_structure(std::string_view text, int n_players) {
    std::vector<Coalition> coalitions;
    std::vector<PlayerId> current;
    std::string number;
    const bool braced = text.find('{') != std::string_view::npos;
    bool open = false;

    auto flush_number = [&] {
        if (number.empty()) return;
        current.emplace_back(std::stoi(number));
        number.clear();
    };
    auto flush_block = [&] {
        flush_number();
        if (current.empty()) throw std::invalid_argument("empty coalition in structure spec");
        coalitions.emplace_back(std::move(current));
        current.clear();
    };

    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            if (braced && !open) throw std::invalid_argument("player outside braces in structure spec");
            number += ch;
        } else if (std::isspace(static_cast<unsigned char>(ch))) {
            flush_number();
        } else if (ch == ',') {
            flush_number();
        } else if (braced && ch == '{') {
            if (open) throw std::invalid_argument("nested braces in structure spec");
            open = true;
        } else if (braced && ch == '}') {
            if (!open) throw std::invalid_argument("unbalanced braces in structure spec");
            flush_block();
            open = false;
        } else if (!braced && ch == '|') {
            flush_block();
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + ch +
                                        "' in structure spec");
        }
    }
    if (open) throw std::invalid_argument("unbalanced braces in structure spec");
    if (!braced) flush_block();
    return CoalitionStructure(std::move(coalitions), n_players);
}

const std::vector<CoalitionStructure>& reference_structures() {
    static const std::vector<CoalitionStructure> table = {
        CoalitionStructure({{1, 2, 3, 4}}, 4),           // C1
        CoalitionStructure({{1, 3, 4}, {2}}, 4),         // C2
        CoalitionStructure({{1, 2}, {3}, {4}}, 4),       // C3
        CoalitionStructure({{1}, {2}, {3}, {4}}, 4),     // C4
        CoalitionStructure({{1}, {3}, {2, 4}}, 4),       // C5
        CoalitionStructure({{1, 3}, {2, 4}}, 4),         // C6
        CoalitionStructure({{1, 2, 3}, {4}}, 4),         // C7
        CoalitionStructure({{1}, {2, 3, 4}}, 4),         // C8
        CoalitionStructure({{1, 4}, {2, 3}}, 4),         // C9
        CoalitionStructure({{1}, {4}, {2, 3}}, 4),       // C10
        CoalitionStructure({{1, 2}, {3, 4}}, 4),         // C11
        CoalitionStructure({{1}, {2}, {3, 4}}, 4),       // C12
        CoalitionStructure({{1, 2, 4}, {3}}, 4),         // C13
        CoalitionStructure({{1, 4}, {2}, {3}}, 4),       // C14
        CoalitionStructure({{2}, {4}, {1, 3}}, 4),       // C15
    };
    return table;
}

std::optional<std::string> table_label(const CoalitionStructure& cs) {
    if (cs.num_players() != 4) return std::nullopt;
    const auto& table = reference_structures();
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] == cs) return "C" + std::to_string(i + 1);
    }
    return std::nullopt;
}

std::optional<CoalitionStructure> structure_for_label(std::string_view label) {
    if (label.size() < 2 || (label[0] != 'C' && label[0] != 'c')) return std::nullopt;
    int n = 0;
    for (char ch : label.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) return std::nullopt;
        n = n * 10 + (ch - '0');
    }
    const auto& table = reference_structures();
    if (n < 1 || n > static_cast<int>(table.size())) return std::nullopt;
    return table[static_cast<std::size_t>(n - 1)];
}

}  // namespace coopvanet
