// SPDX-License-Identifier: Apache-2.0

#ifndef COOPVANET_SCHEDULER_HPP
#define COOPVANET_SCHEDULER_HPP

#include <optional>
#include <span>
#include <vector>

#include "coopvanet/types.hpp"

namespace coopvanet {

/// Deterministic map from the set of active vehicles of a coalition to the
/// one vehicle allowed to transmit. The rule is a strict priority order:
/// players listed in `priority` come first (in that order), every other
/// player follows by ascending index.
class Scheduler {
public:
    /// Smallest active index transmits.
    Scheduler() = default;
    explicit Scheduler(std::vector<PlayerId> priority);

    static Scheduler min_index() { return Scheduler{}; }

    /// Highest-priority member of `active`, nullopt when nobody is active.
    [[nodiscard]] std::optional<PlayerId> pick(std::span<const PlayerId> active) const;

    /// `members` reordered from highest to lowest priority.
    [[nodiscard]] std::vector<PlayerId> order(std::span<const PlayerId> members) const;

    [[nodiscard]] bool is_min_index() const noexcept { return priority_.empty(); }

private:
    [[nodiscard]] bool before(PlayerId a, PlayerId b) const;

    std::vector<PlayerId> priority_;
};

}  // namespace coopvanet

#endif  // COOPVANET_SCHEDULER_HPP
