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
// Full-band multiuser design: every stream occupies the whole PU spectrum,
// so streams interfere with each other as well as with the PU receiver.
// Each user gets an equal share i_limit/n of the PU interference budget
// plus a cap i_prime on the interference it may cause at every other SU
// receiver. The design alternates per-user transmit SDPs (receive vectors
// fixed) with closed-form receive updates that fold the current cross
// interference into each user's noise covariance. A candidate transmit
// update is only kept when it improves the network sum rate, which makes
// the sweep a monotone coordinate ascent.

#ifndef COGBEAM_UNDERLAY_HPP
#define COGBEAM_UNDERLAY_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cogbeam/beamformer.hpp"
#include "cogbeam/channel.hpp"
#include "cogbeam/sdp.hpp"

namespace cogbeam {

namespace detail {

/// Noise-plus-interference covariance at receiver k for the current
/// transmit set: worst-case PU term plus the realized cross terms.
inline HermitianMatrix<double> folded_covariance(const std::vector<RobustMatrices>& rm,
                                                 const std::vector<CVec>& w1, std::size_t k,
                                                 double p_su) {
    CMat cov = rm[k].D.matrix();
    for (std::size_t j = 0; j < w1.size(); ++j) {
        if (j == k)
            continue;
        const CVec leak = rm[k].H_s * w1[j];
        cov += CMat::outer(leak) * cx<double>(p_su, 0);
    }
    return HermitianMatrix<double>((cov + cov.adjoint()) * cx<double>(0.5, 0));
}

/// Per-user SINR with optimal receive vectors, plus those vectors.
struct FoldedEvaluation {
    std::vector<double> sinr;
    std::vector<CVec> w2;
    double sum_rate = 0; // full-band objective, no 1/N prefactor
};

inline FoldedEvaluation evaluate_folded(const std::vector<RobustMatrices>& rm,
                                        const std::vector<CVec>& w1, double p_su) {
    const std::size_t n = rm.size();
    FoldedEvaluation eval;
    eval.sinr.resize(n, 0.0);
    eval.w2.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const HermitianMatrix<double> cov = folded_covariance(rm, w1, k, p_su);
        const CVec signal = rm[k].H_s * w1[k];
        const CVec whitened = hermitian_solve(cov, signal);
        eval.sinr[k] = p_su * vdot(signal, whitened).real();
        const double nrm = vnorm(whitened);
        eval.w2[k] = nrm > 0 ? vscale(whitened, cx<double>(1.0 / nrm, 0))
                             : unit_vector<double>(signal.size(), 0);
        eval.sum_rate += std::log2(1.0 + eval.sinr[k]);
    }
    return eval;
}

} // namespace detail

/// Alternating full-band design. Initializes every user from its solo
/// closed-form design at budget i_limit/n, then sweeps: per user, solve the
/// fixed-receiver transmit SDP under (i) the per-user PU budget, (ii) the
/// norm cap and (iii) the cross-interference caps, accept the candidate if
/// the sum rate improves, and refresh all receive vectors. Stops when a
/// full round improves the sum rate by less than 1e-6. When round_trace is
/// given it receives the sum rate after initialization and after each
/// round (a nondecreasing sequence).
inline std::vector<DesignReport> underlay_design(const std::vector<ChannelSet>& channels,
                                                 const SystemConfig& cfg, double i_prime,
                                                 int max_rounds,
                                                 std::vector<double>* round_trace = nullptr) {
    cfg.validate();
    if (channels.empty())
        throw std::invalid_argument("underlay_design: at least one user required");
    if (!(i_prime > 0))
        throw std::invalid_argument("underlay_design: i_prime must be > 0");
    if (max_rounds < 0)
        throw std::invalid_argument("underlay_design: max_rounds must be >= 0");

    const std::size_t n = channels.size();
    const double pu_budget = cfg.i_limit / static_cast<double>(n);

    SystemConfig per_user_cfg = cfg;
    per_user_cfg.i_limit = pu_budget;

    std::vector<RobustMatrices> rm;
    std::vector<CVec> w1(n);
    std::vector<DesignMethod> method(n, DesignMethod::closed_form);
    rm.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        rm.push_back(build_robust_matrices(channels[k], per_user_cfg));
        w1[k] = closed_form_transmit(rm[k], per_user_cfg).pair.w1;
        method[k] = DesignMethod::closed_form;
    }

    detail::FoldedEvaluation eval = detail::evaluate_folded(rm, w1, cfg.p_su);
    if (round_trace) {
        round_trace->clear();
        round_trace->push_back(eval.sum_rate);
    }

    for (int round = 0; round < max_rounds; ++round) {
        const double round_start = eval.sum_rate;
        for (std::size_t k = 0; k < n; ++k) {
            CMat objective =
                CMat::outer(channels[k].H_s.adjoint() * eval.w2[k]) * cx<double>(cfg.p_su, 0);
            SdpProblem problem{
                HermitianMatrix<double>((objective + objective.adjoint()) * cx<double>(0.5, 0)),
                {{rm[k].B, pu_budget / cfg.p_su},
                 {HermitianMatrix<double>::identity(rm[k].B.dim()), 1.0}}};
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k)
                    continue;
                CMat cross = CMat::outer(channels[j].H_s.adjoint() * eval.w2[j]);
                problem.constraints.push_back(
                    {HermitianMatrix<double>((cross + cross.adjoint()) * cx<double>(0.5, 0)),
                     i_prime / cfg.p_su});
            }

            const SdpSolution sol = solve(problem);
            if (sol.status != SdpStatus::optimal)
                continue;
            const RankOneExtraction extraction = extract_rank_one(sol, 1.0);
            if (extraction.degenerate)
                continue;

            std::vector<CVec> candidate = w1;
            candidate[k] = extraction.vector;
            const detail::FoldedEvaluation cand_eval =
                detail::evaluate_folded(rm, candidate, cfg.p_su);
            // strict improvement beyond rounding noise, so the ascent is
            // monotone and a solo optimum is left untouched
            if (cand_eval.sum_rate > eval.sum_rate + 1e-12 * (1.0 + std::abs(eval.sum_rate))) {
                w1 = std::move(candidate);
                eval = cand_eval;
                method[k] = DesignMethod::sdp_fallback;
            }
        }
        if (round_trace)
            round_trace->push_back(eval.sum_rate);
        if (eval.sum_rate - round_start < 1e-6)
            break;
    }

    std::vector<DesignReport> reports(n);
    for (std::size_t k = 0; k < n; ++k) {
        reports[k].pair = BeamformerPair{w1[k], eval.w2[k]};
        reports[k].worst_case_sinr = eval.sinr[k];
        reports[k].robust_interference_bound = cfg.p_su * quadratic_form(rm[k].B.matrix(), w1[k]);
        reports[k].method = method[k];
    }
    return reports;
}

} // namespace cogbeam

#endif // COGBEAM_UNDERLAY_HPP
