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
// Channel and uncertainty model. The secondary link channel is perfectly
// known; the cross channels to/from the primary user are only known as a
// nominal vector plus a norm-bounded error ball of radius sigma*sqrt(e).
// From the nominal channels this module builds the worst-case design
// matrices consumed by the beamformer and allocator modules.

#ifndef COGBEAM_CHANNEL_HPP
#define COGBEAM_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "cogbeam/hermitian.hpp"
#include "cogbeam/linalg.hpp"
#include "cogbeam/rng.hpp"

namespace cogbeam {

/// Norm-bounded error model: the true cross channel lies within
/// sigma*sqrt(e) of the nominal one (sigma_prime for the receive side).
struct UncertaintyModel {
    double e = 1.0;
    double sigma = 1.0;
    double sigma_prime = 1.0;

    void validate() const {
        if (e < 0)
            throw std::invalid_argument("UncertaintyModel: e must be >= 0");
        if (sigma <= 0 || sigma_prime <= 0)
            throw std::invalid_argument("UncertaintyModel: sigma values must be > 0");
    }

    double tx_radius() const { return sigma * std::sqrt(e); }
    double rx_radius() const { return sigma_prime * std::sqrt(e); }
};

/// Link and power configuration. All powers are linear; dB only exists at
/// the CLI/preset boundary.
struct SystemConfig {
    std::size_t nt = 5;       // SU transmit antennas
    std::size_t nr = 5;       // SU receive antennas
    double p_su = 100.0;      // SU symbol power
    double p_pu = 100.0;      // PU symbol power
    double noise_power = 1.0; // receiver noise power
    double i_limit = 3.1623;  // max interference at the PU receiver
    std::size_t n_sec = 3;    // number of secondary users (multiuser designs)

    void validate() const {
        if (nt < 1 || nr < 1)
            throw std::invalid_argument("SystemConfig: antenna counts must be >= 1");
        if (p_su <= 0 || p_pu <= 0 || noise_power <= 0)
            throw std::invalid_argument("SystemConfig: powers must be > 0");
        if (i_limit <= 0)
            throw std::invalid_argument("SystemConfig: interference limit must be > 0");
        if (n_sec < 1)
            throw std::invalid_argument("SystemConfig: n_sec must be >= 1");
    }
};

/// One channel realization: the known SU link matrix, the nominal cross
/// channels, and the (simulation-only) true cross channels drawn inside
/// the uncertainty balls.
struct ChannelSet {
    CMat H_s;          // SU TX -> SU RX, perfectly known, nr x nt
    CVec h0;           // nominal SU TX -> PU RX
    CVec h0_prime;     // nominal PU TX -> SU RX
    CVec h_true;       // realized SU TX -> PU RX
    CVec h_prime_true; // realized PU TX -> SU RX
    UncertaintyModel uncertainty;
};

/// Worst-case design matrices. B bounds the transmit-side interference
/// quadratic form over the error ball; D is the worst-case receive
/// covariance (PU interference plus noise); A is the resulting transmit
/// objective matrix. H_s rides along because the receive beamformer and
/// SINR evaluations need it next to D.
struct RobustMatrices {
    HermitianMatrix<double> A; // nt x nt, PSD
    HermitianMatrix<double> B; // nt x nt, PD when margin_tx > 0
    HermitianMatrix<double> D; // nr x nr, PD
    double margin_tx = 0;      // 2 sqrt(e) sigma ||h0|| + e sigma^2
    double margin_rx = 0;
    CMat H_s;
};

/// Worst-case inflation of the interference quadratic form over the error
/// ball: 2 sqrt(e) sigma ||h0|| + e sigma^2.
inline double worst_case_margin(double h0_norm, double e, double sigma) {
    if (h0_norm < 0 || e < 0 || sigma < 0)
        throw std::invalid_argument("worst_case_margin: arguments must be >= 0");
    return 2.0 * std::sqrt(e) * sigma * h0_norm + e * sigma * sigma;
}

/// Draw one channel realization. Entries of H_s and the nominal cross
/// channels are i.i.d. CN(0,1); the true cross channels sit at the nominal
/// point plus a uniform draw from the error ball. Deterministic per seed.
inline ChannelSet sample_channels(const SystemConfig& cfg, const UncertaintyModel& u,
                                  std::uint64_t seed) {
    cfg.validate();
    u.validate();
    Rng rng = make_rng(seed);

    ChannelSet cs;
    cs.uncertainty = u;
    cs.H_s = sample_cngaussian_matrix(cfg.nr, cfg.nt, rng);
    cs.h0 = sample_cngaussian_vector(cfg.nt, rng);
    cs.h0_prime = sample_cngaussian_vector(cfg.nr, rng);

    const CVec delta = sample_unit_ball(cfg.nt, rng);
    const CVec delta_prime = sample_unit_ball(cfg.nr, rng);
    cs.h_true = vadd(cs.h0, vscale(delta, cx<double>(u.tx_radius(), 0)));
    cs.h_prime_true = vadd(cs.h0_prime, vscale(delta_prime, cx<double>(u.rx_radius(), 0)));
    return cs;
}

/// Redraw only the error realizations, keeping the nominal channels. This
/// is the inner Monte Carlo step: one design, many error draws.
inline ChannelSet redraw_errors(const ChannelSet& cs, Rng& rng) {
    ChannelSet out = cs;
    const CVec delta = sample_unit_ball(cs.h0.size(), rng);
    const CVec delta_prime = sample_unit_ball(cs.h0_prime.size(), rng);
    out.h_true = vadd(cs.h0, vscale(delta, cx<double>(cs.uncertainty.tx_radius(), 0)));
    out.h_prime_true =
        vadd(cs.h0_prime, vscale(delta_prime, cx<double>(cs.uncertainty.rx_radius(), 0)));
    return out;
}

/// Default Tikhonov term for the degenerate e = 0 case, where B would be
/// rank one.
inline double default_regularization(const CVec& h0) {
    const double n = vnorm(h0);
    return 1e-9 * n * n;
}

/// Build A, B, D from the nominal channels.
///
/// B = h0 h0^H + (margin_tx + reg) I
/// D = p_pu h0' h0'^H + (p_pu margin_rx + noise) I
/// A = p_su H_s^H D^{-1} H_s
///
/// Throws std::domain_error when margin_tx + reg is not positive (e = 0
/// without regularization): pass an explicit reg, e.g.
/// default_regularization(cs.h0).
inline RobustMatrices build_robust_matrices(const ChannelSet& cs, const SystemConfig& cfg,
                                            double reg = 0.0) {
    cfg.validate();
    cs.uncertainty.validate();
    if (reg < 0)
        throw std::invalid_argument("build_robust_matrices: reg must be >= 0");
    if (cs.H_s.rows() != cfg.nr || cs.H_s.cols() != cfg.nt)
        throw std::invalid_argument("build_robust_matrices: H_s shape does not match config");
    if (cs.h0.size() != cfg.nt || cs.h0_prime.size() != cfg.nr)
        throw std::invalid_argument("build_robust_matrices: channel lengths do not match config");

    const double margin_tx =
        worst_case_margin(vnorm(cs.h0), cs.uncertainty.e, cs.uncertainty.sigma);
    const double margin_rx =
        worst_case_margin(vnorm(cs.h0_prime), cs.uncertainty.e, cs.uncertainty.sigma_prime);

    const double tx_shift = margin_tx + reg;
    if (tx_shift <= 0)
        throw std::domain_error(
            "build_robust_matrices: B is singular for e = 0; pass a regularization term "
            "(e.g. default_regularization(cs.h0))");

    CMat b_raw = CMat::outer(cs.h0);
    for (std::size_t i = 0; i < cfg.nt; ++i)
        b_raw(i, i) += tx_shift;

    CMat d_raw = CMat::outer(cs.h0_prime) * cx<double>(cfg.p_pu, 0);
    const double rx_shift = cfg.p_pu * margin_rx + cfg.noise_power;
    for (std::size_t i = 0; i < cfg.nr; ++i)
        d_raw(i, i) += rx_shift;

    HermitianMatrix<double> d(d_raw);
    const CMat d_inv_hs = hermitian_solve(d, cs.H_s);
    CMat a_raw = cs.H_s.adjoint() * d_inv_hs * cx<double>(cfg.p_su, 0);
    // symmetrize away the solve's floating-point asymmetry
    a_raw = (a_raw + a_raw.adjoint()) * cx<double>(0.5, 0);

    return RobustMatrices{HermitianMatrix<double>(a_raw), HermitianMatrix<double>(b_raw),
                          std::move(d), margin_tx, margin_rx, cs.H_s};
}

} // namespace cogbeam

#endif // COGBEAM_CHANNEL_HPP
