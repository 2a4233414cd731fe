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

#include "cogbeam/allocation.hpp"
#include "oracle_helpers.hpp"

using namespace cogbeam;

TEST_CASE("per-user gain on synthetic matrices") {
    CMat a = CMat::identity(2) * cx<double>(2.0, 0);
    const CMat id = CMat::identity(2);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    cfg.p_su = 1.0;
    RobustMatrices rm{HermitianMatrix<double>(a), HermitianMatrix<double>(id),
                      HermitianMatrix<double>(id), 1.0, 1.0, id};
    CHECK(per_user_gain(rm, cfg) == Catch::Approx(2.0));

    // scaling A scales the gain linearly
    RobustMatrices rm4{HermitianMatrix<double>(a * cx<double>(4.0, 0)),
                       HermitianMatrix<double>(id), HermitianMatrix<double>(id), 1.0, 1.0, id};
    CHECK(per_user_gain(rm4, cfg) == Catch::Approx(8.0));
}

TEST_CASE("gain times budget reproduces the closed-form worst-case sinr") {
    SystemConfig cfg;
    const UncertaintyModel u{1.0, 1.0, 1.0};
    for (int inst = 0; inst < 10; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 600 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const double gain = per_user_gain(rm, cfg);

        SystemConfig small = cfg;
        small.i_limit = 0.05; // small enough that the norm cap stays slack
        const DesignReport report = closed_form_transmit(rm, small);
        REQUIRE(report.method == DesignMethod::closed_form);
        CHECK(small.i_limit * gain ==
              Catch::Approx(report.worst_case_sinr).epsilon(1e-8));
    }
}

TEST_CASE("optimal split closed form on the worked examples") {
    const AllocationResult sym = optimal_split({1.0, 1.0}, 2.0);
    CHECK(sym.budgets[0] == Catch::Approx(1.0));
    CHECK(sym.budgets[1] == Catch::Approx(1.0));
    CHECK(sym.dropped.empty());

    const AllocationResult skew = optimal_split({2.0, 1.0}, 3.0);
    CHECK(skew.budgets[0] == Catch::Approx(1.75));
    CHECK(skew.budgets[1] == Catch::Approx(1.25));
    CHECK(skew.rates[0] == Catch::Approx(std::log2(1 + 1.75 * 2.0)));
    CHECK(skew.rates[1] == Catch::Approx(std::log2(1 + 1.25)));

    // grid oracle over (t, 3 - t)
    double best = 0;
    for (int i = 0; i <= 30000; ++i) {
        const double t = 3.0 * i / 30000;
        best = std::max(best, std::log2(1 + 2.0 * t) + std::log2(1 + (3.0 - t)));
    }
    CHECK(skew.rates[0] + skew.rates[1] >= best - 1e-6);
}

TEST_CASE("negative budgets drop the weakest user") {
    const AllocationResult r = optimal_split({10.0, 0.01}, 0.1);
    REQUIRE(r.dropped.size() == 1);
    CHECK(r.dropped[0] == 1);
    CHECK(r.budgets[1] == 0.0);
    CHECK(r.rates[1] == 0.0);
    CHECK(r.budgets[0] == Catch::Approx(0.1));
    // prefactor still divides by the original user count
    CHECK(r.sum_rate == Catch::Approx(std::log2(1 + 0.1 * 10.0) / 2.0));
}

TEST_CASE("dropping matches re-solving on the reduced set") {
    Rng rng = make_rng(611);
    std::uniform_real_distribution<double> gain_dist(0.005, 5.0);
    int drops_seen = 0;
    for (int inst = 0; inst < 200; ++inst) {
        const std::vector<double> gains{gain_dist(rng), gain_dist(rng), gain_dist(rng)};
        const AllocationResult full = optimal_split(gains, 0.4);
        if (full.dropped.empty())
            continue;
        ++drops_seen;
        std::vector<double> reduced;
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            if (std::find(full.dropped.begin(), full.dropped.end(), k) == full.dropped.end()) {
                reduced.push_back(gains[k]);
                keep.push_back(k);
            }
        }
        const AllocationResult again = optimal_split(reduced, 0.4);
        REQUIRE(again.dropped.empty());
        for (std::size_t i = 0; i < keep.size(); ++i)
            CHECK(full.budgets[keep[i]] == again.budgets[i]);
    }
    CHECK(drops_seen > 0);
}

TEST_CASE("optimal split properties on random instances") {
    Rng rng = make_rng(622);
    std::uniform_real_distribution<double> gain_dist(0.05, 4.0);
    std::uniform_real_distribution<double> limit_dist(0.5, 4.0);
    for (int inst = 0; inst < 50; ++inst) {
        const std::vector<double> gains{gain_dist(rng), gain_dist(rng), gain_dist(rng)};
        const double i_limit = limit_dist(rng);
        const AllocationResult opt = optimal_split(gains, i_limit);

        double total = 0;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            total += opt.budgets[k];
            if (opt.budgets[k] > 0)
                CHECK(opt.budgets[k] > 0.0);
        }
        CHECK(total == Catch::Approx(i_limit).margin(1e-9));

        // stationarity: y/(1 + I y) constant across active users
        double ref = -1;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            if (opt.budgets[k] <= 0)
                continue;
            const double val = gains[k] / (1 + opt.budgets[k] * gains[k]);
            if (ref < 0)
                ref = val;
            CHECK(val == Catch::Approx(ref).margin(1e-9 * std::max(1.0, ref)));
        }

        // grid-search dominance
        CHECK(opt.sum_rate >= test::simplex_grid_best_rate(gains, i_limit, 10000) - 1e-6);

        // fair is feasible for the optimal problem, so optimal dominates
        const AllocationResult fair = fair_split(gains, i_limit);
        CHECK(opt.sum_rate >= fair.sum_rate - 1e-12);
    }
}

TEST_CASE("fair split closed form on the worked examples") {
    const AllocationResult sym = fair_split({1.0, 1.0}, 2.0);
    CHECK(sym.budgets[0] == Catch::Approx(1.0));
    CHECK(sym.budgets[1] == Catch::Approx(1.0));

    const AllocationResult skew = fair_split({2.0, 1.0}, 3.0);
    CHECK(skew.budgets[0] == Catch::Approx(1.0));
    CHECK(skew.budgets[1] == Catch::Approx(2.0));
    CHECK(skew.rates[0] == Catch::Approx(std::log2(3.0)));
    CHECK(skew.rates[1] == Catch::Approx(std::log2(3.0)));

    const AllocationResult triple = fair_split({4.0, 2.0, 1.0}, 7.0);
    CHECK(triple.budgets[0] == Catch::Approx(1.0));
    CHECK(triple.budgets[1] == Catch::Approx(2.0));
    CHECK(triple.budgets[2] == Catch::Approx(4.0));
    CHECK(triple.budgets[0] * triple.gains[0] == Catch::Approx(4.0)); // common SINR
    CHECK(triple.budgets[0] + triple.budgets[1] + triple.budgets[2] == Catch::Approx(7.0));
}

TEST_CASE("fair split equalizes rates and spends the whole budget") {
    Rng rng = make_rng(633);
    std::uniform_real_distribution<double> gain_dist(0.02, 6.0);
    for (int inst = 0; inst < 50; ++inst) {
        std::vector<double> gains;
        const std::size_t n = 2 + inst % 4;
        for (std::size_t k = 0; k < n; ++k)
            gains.push_back(gain_dist(rng));
        const AllocationResult fair = fair_split(gains, 1.7);
        CHECK(fair.dropped.empty());
        double total = 0;
        for (std::size_t k = 0; k < n; ++k) {
            total += fair.budgets[k];
            CHECK(std::abs(fair.rates[k] - fair.rates[0]) <= 1e-9);
        }
        CHECK(total == Catch::Approx(1.7).margin(1e-9));
    }
}

TEST_CASE("sum rate uses the original user count") {
    AllocationResult alloc;
    alloc.rates = {1.0};
    alloc.budgets = {1.0};
    alloc.gains = {1.0};
    CHECK(subband_sum_rate(alloc, 1) == Catch::Approx(1.0)); // one user at I y = 1: one bit

    const AllocationResult fair = fair_split({2.0, 1.0}, 3.0);
    CHECK(subband_sum_rate(fair, 2) == Catch::Approx(std::log2(3.0)));

    const AllocationResult opt = optimal_split({2.0, 1.0}, 3.0);
    CHECK(subband_sum_rate(opt, 2) >= subband_sum_rate(fair, 2));
}

TEST_CASE("allocation input validation") {
    CHECK_THROWS_AS(optimal_split({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_split({1.0, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_split({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fair_split({-1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(subband_sum_rate(AllocationResult{}, 0), std::invalid_argument);
}
