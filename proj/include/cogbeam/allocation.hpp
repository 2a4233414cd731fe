// SPDX-License-Identifier: Apache-2.0
//
// cogbeam: robust transceiver beamforming for MIMO cognitive radio links
// Copyright (C) 2026 the cogbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Interference-budget allocation for the orthogonal sub-band multiuser
// design. Each user's worst-case SINR is linear in its interference
// budget, SINR_k = I_k * y_k, so splitting the total PU budget across
// users is a scalar problem with closed forms: a water-filling style
// sum-rate optimum (with iterative dropping of users whose budget would
// go nonpositive) and an equal-rate fair split.

#ifndef COGBEAM_ALLOCATION_HPP
#define COGBEAM_ALLOCATION_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cogbeam/beamformer.hpp"
#include "cogbeam/channel.hpp"

namespace cogbeam {

enum class AllocationMode { optimal, fair };

struct AllocationResult {
    std::vector<double> budgets; // per-user interference budget; 0 for dropped users
    std::vector<double> gains;   // the y_k inputs
    std::vector<double> rates;   // log2(1 + I_k y_k); 0 for dropped users
    double sum_rate = 0;         // (1/N_original) * sum of active rates
    std::vector<std::size_t> dropped;
    AllocationMode mode = AllocationMode::optimal;
};

/// Worst-case SINR per unit of interference budget: the top whitened
/// eigenvalue divided by p_su, so that SINR = I_k * y_k as long as the
/// transmit norm cap stays slack.
inline double per_user_gain(const RobustMatrices& rm, const SystemConfig& cfg) {
    cfg.validate();
    const HermitianMatrix<double> b_inv_sqrt = hermitian_inverse_sqrt(rm.B);
    CMat whitened = b_inv_sqrt.matrix() * rm.A.matrix() * b_inv_sqrt.matrix();
    whitened = (whitened + whitened.adjoint()) * cx<double>(0.5, 0);
    return hermitian_eig_max(HermitianMatrix<double>(whitened)).value / cfg.p_su;
}

namespace detail {

inline void validate_gains(const std::vector<double>& gains, double i_limit) {
    if (gains.empty())
        throw std::invalid_argument("allocation: at least one gain required");
    for (double y : gains)
        if (!(y > 0))
            throw std::invalid_argument("allocation: gains must be > 0");
    if (!(i_limit > 0))
        throw std::invalid_argument("allocation: interference limit must be > 0");
}

} // namespace detail

/// (1/n_users_original) * sum of active per-user rates. The prefactor
/// divides by the original sub-band count even after drops: dropped users'
/// sub-bands stay unused.
inline double subband_sum_rate(const AllocationResult& alloc, std::size_t n_users_original) {
    if (n_users_original == 0)
        throw std::invalid_argument("subband_sum_rate: user count must be positive");
    const double total = std::accumulate(alloc.rates.begin(), alloc.rates.end(), 0.0);
    return total / static_cast<double>(n_users_original);
}

/// Sum-rate-optimal split of the interference budget,
/// I_j = (I + sum_k 1/y_k)/N - 1/y_j over the active set. Users whose
/// budget comes out nonpositive are dropped one at a time (most negative
/// first) and the split is recomputed on the remainder.
inline AllocationResult optimal_split(const std::vector<double>& gains, double i_limit) {
    detail::validate_gains(gains, i_limit);
    const std::size_t n = gains.size();

    AllocationResult result;
    result.mode = AllocationMode::optimal;
    result.gains = gains;
    result.budgets.assign(n, 0.0);
    result.rates.assign(n, 0.0);

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), 0);

    while (true) {
        const double n_active = static_cast<double>(active.size());
        double inv_sum = 0;
        for (std::size_t k : active)
            inv_sum += 1.0 / gains[k];
        const double level = (i_limit + inv_sum) / n_active;

        std::size_t worst_pos = active.size();
        double worst_budget = 0;
        for (std::size_t pos = 0; pos < active.size(); ++pos) {
            const double budget = level - 1.0 / gains[active[pos]];
            if (budget <= 0 && (worst_pos == active.size() || budget < worst_budget)) {
                worst_pos = pos;
                worst_budget = budget;
            }
        }
        if (worst_pos == active.size()) {
            for (std::size_t k : active) {
                result.budgets[k] = level - 1.0 / gains[k];
                result.rates[k] = std::log2(1.0 + result.budgets[k] * gains[k]);
            }
            break;
        }
        result.dropped.push_back(active[worst_pos]);
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst_pos));
        // a lone remaining user always receives the full budget I > 0
    }

    std::sort(result.dropped.begin(), result.dropped.end());
    result.sum_rate = subband_sum_rate(result, n);
    return result;
}

/// Equal-rate split: I_j proportional to 1/y_j, so every product I_j y_j
/// equals the common value I / sum_k(1/y_k). Nobody is dropped.
inline AllocationResult fair_split(const std::vector<double>& gains, double i_limit) {
    detail::validate_gains(gains, i_limit);
    const std::size_t n = gains.size();

    double inv_sum = 0;
    for (double y : gains)
        inv_sum += 1.0 / y;

    AllocationResult result;
    result.mode = AllocationMode::fair;
    result.gains = gains;
    result.budgets.resize(n);
    result.rates.resize(n);
    const double common_sinr = i_limit / inv_sum;
    for (std::size_t k = 0; k < n; ++k) {
        result.budgets[k] = (i_limit / gains[k]) / inv_sum;
        result.rates[k] = std::log2(1.0 + common_sinr);
    }
    result.sum_rate = subband_sum_rate(result, n);
    return result;
}

} // namespace cogbeam

#endif // COGBEAM_ALLOCATION_HPP
