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

#include <catch2/catch_amalgamated.hpp>

#include "cogbeam/beamformer.hpp"
#include "oracle_helpers.hpp"

using namespace cogbeam;

namespace {

/// Synthetic RobustMatrices with prescribed A, B, D and H_s.
RobustMatrices make_rm(const CMat& a, const CMat& b, const CMat& d, const CMat& h_s,
                       double margin_tx = 1.0, double margin_rx = 1.0) {
    return RobustMatrices{HermitianMatrix<double>(a), HermitianMatrix<double>(b),
                          HermitianMatrix<double>(d), margin_tx, margin_rx, h_s};
}

} // namespace

TEST_CASE("receive beamformer on the identity channel") {
    const CMat id = CMat::identity(2);
    const RobustMatrices rm = make_rm(id, id, id, id);
    const CVec w2 = receive_beamformer(rm, unit_vector<double>(2, 0));
    CHECK(std::abs(w2[0] - cx<double>(1, 0)) < 1e-12);
    CHECK(std::abs(w2[1]) < 1e-12);
    CHECK_THROWS_AS(receive_beamformer(rm, CVec(2, cx<double>(0, 0))), std::invalid_argument);
}

TEST_CASE("receive beamformer whitens a diagonal covariance") {
    CMat d(2, 2);
    d(0, 0) = 1;
    d(1, 1) = 4;
    const CMat id = CMat::identity(2);
    const RobustMatrices rm = make_rm(id, id, d, id);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const CVec w1{cx<double>(inv_sqrt2, 0), cx<double>(inv_sqrt2, 0)};
    const CVec w2 = receive_beamformer(rm, w1);
    // proportional to (1, 1/4) scaled by 1/sqrt(2), then normalized
    const double expected_ratio = 0.25;
    CHECK(std::abs(w2[1] / w2[0] - cx<double>(expected_ratio, 0)) < 1e-12);
    CHECK(vnorm(w2) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("receive beamformer beats random receive vectors") {
    SystemConfig cfg;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    Rng rng = make_rng(212);
    for (int inst = 0; inst < 5; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 210 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const CVec w1 = sample_unit_sphere(cfg.nt, rng);
        const BeamformerPair best{w1, receive_beamformer(rm, w1)};
        const double best_value = robust_sinr(rm, best, cfg);

        // the achieved objective equals w1^H A w1
        CHECK(best_value ==
              Catch::Approx(quadratic_form(rm.A.matrix(), w1)).epsilon(1e-8));

        for (int draw = 0; draw < 100000; ++draw) {
            const BeamformerPair cand{w1, sample_unit_sphere(cfg.nr, rng)};
            REQUIRE(robust_sinr(rm, cand, cfg) <= best_value * (1 + 1e-12));
        }
    }
}

TEST_CASE("robust sinr basics") {
    const CMat id = CMat::identity(2);
    const RobustMatrices rm = make_rm(id, id, id, id);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    cfg.p_su = 1.0;

    const BeamformerPair zero{CVec(2, cx<double>(0, 0)), unit_vector<double>(2, 0)};
    CHECK(robust_sinr(rm, zero, cfg) == 0.0);

    const BeamformerPair identity_pair{unit_vector<double>(2, 0), unit_vector<double>(2, 0)};
    CHECK(robust_sinr(rm, identity_pair, cfg) == Catch::Approx(1.0));
}

TEST_CASE("closed form on a diagonal instance") {
    CMat a(2, 2);
    a(0, 0) = 2;
    a(1, 1) = 1;
    const CMat id = CMat::identity(2);
    const RobustMatrices rm = make_rm(a, id, id, id);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    cfg.p_su = 4.0;
    cfg.i_limit = 1.0; // budget I/P = 0.25

    const DesignReport report = closed_form_transmit(rm, cfg);
    CHECK(report.method == DesignMethod::closed_form);
    CHECK(report.worst_case_sinr == Catch::Approx(0.5));
    CHECK(std::abs(report.pair.w1[0] - cx<double>(0.5, 0)) < 1e-10);
    CHECK(std::abs(report.pair.w1[1]) < 1e-10);
    CHECK(report.robust_interference_bound == Catch::Approx(cfg.i_limit));
}

TEST_CASE("closed form on an isotropic instance") {
    const CMat id = CMat::identity(2);
    const RobustMatrices rm = make_rm(id, id * cx<double>(4.0, 0), id, id);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    cfg.p_su = 1.0;
    cfg.i_limit = 1.0;

    const DesignReport report = closed_form_transmit(rm, cfg);
    CHECK(report.worst_case_sinr == Catch::Approx(0.25));
    CHECK(vnorm(report.pair.w1) == Catch::Approx(0.5));
    // isotropic: convention picks the first basis direction
    CHECK(std::abs(report.pair.w1[0] - cx<double>(0.5, 0)) < 1e-10);
}

TEST_CASE("norm cap engages the SDP fallback") {
    // huge interference allowance + weak B: the interference-only point has
    // ||w1|| > 1, so the norm constraint must take over
    const CMat id = CMat::identity(2);
    CMat a(2, 2);
    a(0, 0) = 3;
    a(1, 1) = 1;
    const RobustMatrices rm = make_rm(a, id * cx<double>(0.01, 0), id, id);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    cfg.p_su = 1.0;
    cfg.i_limit = 100.0;

    const DesignReport report = closed_form_transmit(rm, cfg);
    CHECK(report.method == DesignMethod::sdp_fallback);
    CHECK(vnorm(report.pair.w1) <= 1.0 + 1e-7);
    CHECK(report.robust_interference_bound <= cfg.i_limit + 1e-8);
    // with the cap active the optimum is the unit top eigenvector of A
    CHECK(report.worst_case_sinr == Catch::Approx(3.0).margin(1e-4));
}

TEST_CASE("closed form beats a random feasible search") {
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    Rng rng = make_rng(222);
    for (int inst = 0; inst < 10; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 230 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const DesignReport report = closed_form_transmit(rm, cfg);
        const double oracle = test::random_feasible_transmit_search(rm, cfg, 100000, rng);
        CHECK(report.worst_case_sinr >= oracle * (1 - 1e-6));
    }
}

TEST_CASE("worst-case sinr is linear in the interference limit while the cap is slack") {
    SystemConfig cfg;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    const ChannelSet cs = sample_channels(cfg, u, 240);
    const RobustMatrices rm = build_robust_matrices(cs, cfg);

    SystemConfig c1 = cfg;
    c1.i_limit = 1.0;
    SystemConfig c2 = cfg;
    c2.i_limit = 2.5;
    const DesignReport r1 = closed_form_transmit(rm, c1);
    const DesignReport r2 = closed_form_transmit(rm, c2);
    REQUIRE(r1.method == DesignMethod::closed_form);
    REQUIRE(r2.method == DesignMethod::closed_form);
    CHECK(r2.worst_case_sinr / r1.worst_case_sinr == Catch::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("worst-case sinr does not increase with channel error") {
    SystemConfig cfg;
    double prev = std::numeric_limits<double>::infinity();
    for (double e : {0.25, 0.5, 1.0, 2.0, 3.0}) {
        const UncertaintyModel u{e, 1.0, 1.0};
        const ChannelSet cs = sample_channels(cfg, u, 250); // same seed: same nominals
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const double wcs = closed_form_transmit(rm, cfg).worst_case_sinr;
        CHECK(wcs <= prev * (1 + 1e-12));
        prev = wcs;
    }
}

TEST_CASE("realized performance basics") {
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    const ChannelSet cs = sample_channels(cfg, u, 260);

    const BeamformerPair zero{CVec(2, cx<double>(0, 0)), unit_vector<double>(2, 0)};
    const RealizedPerformance p0 = realized_performance(cs, zero, cfg);
    CHECK(p0.sinr == 0.0);
    CHECK(p0.rate == 0.0);
    CHECK(p0.pu_interference == 0.0);

    // transmit orthogonal to the true cross channel: no PU interference
    ChannelSet ortho = cs;
    ortho.h_true = CVec{cx<double>(1, 0), cx<double>(0, 0)};
    const BeamformerPair pair{CVec{cx<double>(0, 0), cx<double>(1, 0)},
                              unit_vector<double>(2, 0)};
    CHECK(realized_performance(ortho, pair, cfg).pu_interference == 0.0);
}

TEST_CASE("worst-case guarantees dominate realized draws") {
    SystemConfig cfg;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    Rng rng = make_rng(270);
    for (int inst = 0; inst < 5; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 270 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const DesignReport design = closed_form_transmit(rm, cfg);
        const double guarantee = robust_sinr(rm, design.pair, cfg);

        for (int draw = 0; draw < 10000; ++draw) {
            const ChannelSet truth = redraw_errors(cs, rng);
            const RealizedPerformance perf = realized_performance(truth, design.pair, cfg);
            REQUIRE(perf.pu_interference <= cfg.i_limit * (1 + 1e-10));
            REQUIRE(perf.sinr >= guarantee * (1 - 1e-10));
        }
    }
}
