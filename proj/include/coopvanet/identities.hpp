// SPDX-License-Identifier: Apache-2.0
//
// Self-check of the analytic model on a concrete configuration.

#ifndef COOPVANET_IDENTITIES_HPP
#define COOPVANET_IDENTITIES_HPP

#include <string>
#include <vector>

#include "coopvanet/types.hpp"

namespace coopvanet {

enum class CheckStatus { pass, fail, skip };

struct InvariantResult {
    std::string name;
    CheckStatus status{CheckStatus::pass};
    double max_residual{0.0};
    std::string detail;  // first offending coalition, or why it was skipped
};

/// Evaluates every identity over all coalitions of `cfg` (K+M <= 16):
///   share_sum, eta_sum, chi_identity, zeta_identity, payment_balance,
///   oracle_agreement, pricing_cancellation, rsu_only_zero,
///   normalize_invariance (K+M <= 10), bounds.
std::vector<InvariantResult> run_identity_suite(const GameConfig& cfg, double tolerance = 1e-12);

const char* to_string(CheckStatus status);

}  // namespace coopvanet

#endif  // COOPVANET_IDENTITIES_HPP
