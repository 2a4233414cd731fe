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
// Robust single-user transceiver design. The worst-case SINR
//
//     p_su |w2^H H_s w1|^2 / (w2^H D w2)
//
// is maximized subject to the worst-case interference bound
// p_su w1^H B w1 <= i_limit and the transmit norm cap ||w1|| <= 1. The
// receive side is a generalized Rayleigh quotient with closed form
// w2 ~ D^{-1} H_s w1; the transmit side has a closed form through the
// whitened eigenproblem of (B^{-1/2}) A (B^{-1/2}), falling back to the
// SDP relaxation when the norm cap binds.

#ifndef COGBEAM_BEAMFORMER_HPP
#define COGBEAM_BEAMFORMER_HPP

#include <cmath>
#include <stdexcept>

#include "cogbeam/channel.hpp"
#include "cogbeam/hermitian.hpp"
#include "cogbeam/linalg.hpp"
#include "cogbeam/sdp.hpp"

namespace cogbeam {

struct BeamformerPair {
    CVec w1; // transmit, ||w1|| <= 1
    CVec w2; // receive, unit norm (the SINR is scale-invariant in w2)
};

enum class DesignMethod { closed_form, sdp_fallback };

struct DesignReport {
    BeamformerPair pair;
    double worst_case_sinr = 0;
    double robust_interference_bound = 0; // p_su w1^H B w1, <= i_limit
    DesignMethod method = DesignMethod::closed_form;
};

struct RealizedPerformance {
    double sinr = 0;
    double rate = 0; // log2(1 + sinr)
    double pu_interference = 0;
};

/// Receive beamformer maximizing the worst-case SINR for a fixed transmit
/// vector: the unit-normalized D^{-1} H_s w1. Independent of every other
/// design quantity.
inline CVec receive_beamformer(const RobustMatrices& rm, const CVec& w1) {
    if (vnorm(w1) == 0)
        throw std::invalid_argument("receive_beamformer: w1 must be nonzero");
    CVec w2 = hermitian_solve(rm.D, rm.H_s * w1);
    const double nrm = vnorm(w2);
    if (nrm == 0)
        throw std::invalid_argument("receive_beamformer: H_s w1 vanished");
    return vscale(w2, cx<double>(1.0 / nrm, 0));
}

/// Worst-case SINR of a transmit/receive pair. A guaranteed lower bound on
/// the realized SINR for every cross channel inside the uncertainty ball.
inline double robust_sinr(const RobustMatrices& rm, const BeamformerPair& pair,
                          const SystemConfig& cfg) {
    const cx<double> coupling = vdot(pair.w2, rm.H_s * pair.w1);
    const double numerator = cfg.p_su * std::norm(coupling);
    if (numerator == 0)
        return 0;
    return numerator / quadratic_form(rm.D.matrix(), pair.w2);
}

/// Closed-form transmit design. Computes the whitened objective
/// M = (B^{1/2})^{-1} A (B^{1/2})^{-1} and scales its top eigenvector so
/// the interference bound is met with equality. When that point violates
/// the transmit norm cap, the design reroutes through the SDP relaxation
/// with both trace constraints active.
inline DesignReport closed_form_transmit(const RobustMatrices& rm, const SystemConfig& cfg) {
    cfg.validate();
    const double budget = cfg.i_limit / cfg.p_su;

    const HermitianMatrix<double> b_inv_sqrt = hermitian_inverse_sqrt(rm.B);
    CMat whitened = b_inv_sqrt.matrix() * rm.A.matrix() * b_inv_sqrt.matrix();
    whitened = (whitened + whitened.adjoint()) * cx<double>(0.5, 0);
    const EigenPair<double> top = hermitian_eig_max(HermitianMatrix<double>(whitened));

    DesignReport report;
    CVec w1 = vscale(b_inv_sqrt.matrix() * top.vector, cx<double>(std::sqrt(budget), 0));

    if (vnorm(w1) <= 1.0 + 1e-10) {
        report.method = DesignMethod::closed_form;
        report.worst_case_sinr = budget * top.value;
    } else {
        SdpProblem problem{rm.A,
                           {{rm.B, budget},
                            {HermitianMatrix<double>::identity(rm.B.dim()), 1.0}}};
        const SdpSolution sol = solve(problem);
        if (sol.status != SdpStatus::optimal)
            throw std::runtime_error("closed_form_transmit: SDP fallback did not reach optimality");
        const RankOneExtraction extraction = extract_rank_one(sol, 1.0);
        if (extraction.degenerate)
            throw std::runtime_error("closed_form_transmit: SDP fallback returned zero matrix");
        w1 = extraction.vector;
        report.method = DesignMethod::sdp_fallback;
        report.worst_case_sinr = quadratic_form(rm.A.matrix(), w1);
    }

    report.pair.w1 = w1;
    report.pair.w2 = receive_beamformer(rm, w1);
    report.robust_interference_bound = cfg.p_su * quadratic_form(rm.B.matrix(), w1);
    return report;
}

/// Realized (not worst-case) link metrics for a given true channel draw.
inline RealizedPerformance realized_performance(const ChannelSet& cs,
                                                const BeamformerPair& pair,
                                                const SystemConfig& cfg) {
    RealizedPerformance out;
    const double w2_nsq = vnorm(pair.w2) * vnorm(pair.w2);
    const double signal = cfg.p_su * std::norm(vdot(pair.w2, cs.H_s * pair.w1));
    const double pu_term = cfg.p_pu * std::norm(vdot(pair.w2, cs.h_prime_true));
    if (signal > 0)
        out.sinr = signal / (pu_term + cfg.noise_power * w2_nsq);
    out.rate = std::log2(1.0 + out.sinr);
    out.pu_interference = cfg.p_su * std::norm(vdot(pair.w1, cs.h_true));
    return out;
}

} // namespace cogbeam

#endif // COGBEAM_BEAMFORMER_HPP
