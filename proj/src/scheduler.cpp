// SPDX-License-Identifier: Apache-2.0

#include "coopvanet/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace coopvanet {

Scheduler::Scheduler(std::vector<PlayerId> priority) : priority_(std::move(priority)) {
    auto sorted = priority_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("scheduler priority lists a player twice");
    }
}

bool Scheduler::before(PlayerId a, PlayerId b) const {
    const auto ra = std::find(priority_.begin(), priority_.end(), a);
    const auto rb = std::find(priority_.begin(), priority_.end(), b);
    if (ra != rb) return ra < rb;  // unlisted players compare equal to end()
    return a < b;
}

std::optional<PlayerId> Scheduler::pick(std::span<const PlayerId> active) const {
    if (active.empty()) return std::nullopt;
    if (is_min_index()) return *std::min_element(active.begin(), active.end());
    return *std::min_element(active.begin(), active.end(),
                             [this](PlayerId a, PlayerId b) { return before(a, b); });
}

std::vector<PlayerId> Scheduler::order(std::span<const PlayerId> members) const {
    std::vector<PlayerId> out(members.begin(), members.end());
    std::sort(out.begin(), out.end(), [this](PlayerId a, PlayerId b) { return before(a, b); });
    return out;
}

}  // namespace coopvanet
