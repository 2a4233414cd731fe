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
// Command line front end.
//
//   cogbeam run --scenario single_user_vs_I --sweep -5:10:2.5 --trials 100x100
//               --seed 7 --config my.cfg --out results.csv
//   cogbeam presets
//   cogbeam verify
//
// Power-like sweeps (interference limit, cross-interference cap) are given
// in dB and converted here; the error sweep and the slot axis are plain
// numbers. Everything behind this file works in linear units.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cogbeam/cogbeam.hpp"

namespace {

using namespace cogbeam;

std::vector<double> parse_sweep(const std::string& text) {
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw CLI::ValidationError("--sweep", "expected start:stop:step");
    const double start = std::stod(text.substr(0, c1));
    const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (!(step > 0) || stop < start)
        throw CLI::ValidationError("--sweep", "need stop >= start and step > 0");
    std::vector<double> values;
    for (double v = start; v <= stop + 1e-9 * std::max(1.0, std::abs(stop)); v += step)
        values.push_back(v);
    return values;
}

std::pair<std::size_t, std::size_t> parse_trials(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--trials", "expected <outer>x<inner>, e.g. 100x100");
    const long outer = std::stol(text.substr(0, x));
    const long inner = std::stol(text.substr(x + 1));
    if (outer < 1 || inner < 1)
        throw CLI::ValidationError("--trials", "trial counts must be >= 1");
    return {static_cast<std::size_t>(outer), static_cast<std::size_t>(inner)};
}

bool sweep_is_db(Scenario s) {
    switch (s) {
        case Scenario::single_user_vs_i_limit:
        case Scenario::multiuser_fair:
        case Scenario::multiuser_optimal:
        case Scenario::underlay_sweep:
            return true;
        default:
            return false;
    }
}

std::vector<double> default_sweep(Scenario s) {
    std::vector<double> out;
    switch (s) {
        case Scenario::single_user_vs_i_limit:
        case Scenario::multiuser_fair:
        case Scenario::multiuser_optimal:
            for (double db = -5.0; db <= 10.0 + 1e-9; db += 2.5)
                out.push_back(db_to_linear(db));
            break;
        case Scenario::single_user_vs_error:
            for (double e = 0.25; e <= 3.0 + 1e-9; e += 0.25)
                out.push_back(e);
            break;
        case Scenario::fairness_trace:
            for (double slot = 1; slot <= 20 + 1e-9; slot += 1)
                out.push_back(slot);
            break;
        case Scenario::underlay_sweep:
            for (double db = -10.0; db <= 10.0 + 1e-9; db += 5.0)
                out.push_back(db_to_linear(db));
            break;
    }
    return out;
}

int cmd_run(const std::string& scenario_str, const std::string& sweep_str,
            const std::string& trials_str, std::uint64_t seed, const std::string& config_path,
            const std::string& out_path) {
    Campaign campaign = default_presets();
    campaign.scenario = scenario_from_name(scenario_str);
    campaign.seed = seed;

    const auto [outer, inner] = parse_trials(trials_str);
    campaign.trials_outer = outer;
    campaign.trials_inner = inner;

    if (!config_path.empty()) {
        const ConfigOverrides cfg = parse_config_file(config_path, campaign.cfg, campaign.uncertainty);
        campaign.cfg = cfg.cfg;
        campaign.uncertainty = cfg.uncertainty;
    }

    campaign.sweep.clear();
    if (sweep_str.empty()) {
        campaign.sweep = default_sweep(campaign.scenario);
    } else {
        for (double v : parse_sweep(sweep_str))
            campaign.sweep.push_back(sweep_is_db(campaign.scenario) ? db_to_linear(v) : v);
    }

    RunStats stats;
    const std::vector<ResultRow> rows = run_campaign(campaign, &stats);
    write_csv(rows, out_path, per_user_labels(campaign));

    std::cout << "scenario " << scenario_name(campaign.scenario) << ": " << rows.size()
              << " sweep points, " << stats.trials_total << " trials";
    if (stats.solver_failures > 0)
        std::cout << " (" << stats.solver_failures << " solver failures tolerated)";
    std::cout << " -> " << out_path << "\n";
    return 0;
}

int cmd_presets() {
    const Campaign c = default_presets();
    std::cout << "antennas           nt = " << c.cfg.nt << ", nr = " << c.cfg.nr << "\n"
              << "SU transmit power  " << linear_to_db(c.cfg.p_su) << " dB (" << c.cfg.p_su
              << " linear)\n"
              << "PU transmit power  " << linear_to_db(c.cfg.p_pu) << " dB (" << c.cfg.p_pu
              << " linear)\n"
              << "noise power        " << linear_to_db(c.cfg.noise_power) << " dB ("
              << c.cfg.noise_power << " linear)\n"
              << "interference limit " << linear_to_db(c.cfg.i_limit) << " dB (" << c.cfg.i_limit
              << " linear)\n"
              << "secondary users    " << c.cfg.n_sec << "\n"
              << "channel error      e = " << c.uncertainty.e << ", sigma = " << c.uncertainty.sigma
              << ", sigma' = " << c.uncertainty.sigma_prime << "\n"
              << "trials             " << c.trials_outer << "x" << c.trials_inner
              << " (CLI default 100x100; use --trials " << c.trials_outer << "x"
              << c.trials_inner << " for the full campaign)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify: quick self-contained oracle suites
// ---------------------------------------------------------------------------

struct VerifyReport {
    int failures = 0;

    void check(bool ok, const std::string& name, const std::string& detail = "") {
        if (ok) {
            std::cout << "ok   " << name << "\n";
        } else {
            std::cout << "FAIL " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
            ++failures;
        }
    }
};

CMat random_hermitian(std::size_t n, Rng& rng) {
    const CMat g = sample_cngaussian_matrix(n, n, rng);
    return (g + g.adjoint()) * cx<double>(0.5, 0);
}

void verify_hermitian_kernel(VerifyReport& report) {
    Rng rng = make_rng(11);
    bool trace_ok = true, rank1_ok = true, sqrt_ok = true;
    for (int rep = 0; rep < 50; ++rep) {
        const HermitianMatrix<double> m(random_hermitian(5, rng));
        const auto eig = hermitian_eig(m);
        double sum = 0;
        for (double v : eig.values)
            sum += v;
        trace_ok = trace_ok && std::abs(sum - m.trace()) <= 1e-8 * std::max(1.0, std::abs(m.trace()));

        const CVec v = sample_cngaussian_vector(5, rng);
        const HermitianMatrix<double> r1(CMat::outer(v));
        rank1_ok = rank1_ok &&
                   std::abs(hermitian_eig_max(r1).value - r1.trace()) <= 1e-10 * std::max(1.0, r1.trace());

        const CMat g = sample_cngaussian_matrix(5, 5, rng);
        const HermitianMatrix<double> psd(g * g.adjoint());
        const HermitianMatrix<double> s = hermitian_sqrt(psd);
        const CMat back = s.matrix() * s.matrix();
        sqrt_ok = sqrt_ok && (back - psd.matrix()).frobenius_norm() <= 1e-8 * psd.frobenius_norm();
    }
    report.check(trace_ok, "eigenvalue sum equals trace");
    report.check(rank1_ok, "rank-one max eigenvalue equals trace");
    report.check(sqrt_ok, "sqrt squared recovers the matrix");
}

void verify_worst_case_bound(VerifyReport& report) {
    Rng rng = make_rng(22);
    SystemConfig cfg;
    cfg.nt = 4;
    cfg.nr = 4;
    UncertaintyModel u{1.5, 1.0, 1.0};
    int violations = 0;
    for (int design = 0; design < 5; ++design) {
        const ChannelSet cs = sample_channels(cfg, u, 600 + design);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        for (int draw = 0; draw < 2000; ++draw) {
            const CVec w = sample_unit_sphere(cfg.nt, rng);
            const CVec h = draw % 2 == 0
                               ? vadd(cs.h0, vscale(sample_unit_ball(cfg.nt, rng),
                                                    cx<double>(u.tx_radius(), 0)))
                               : vadd(cs.h0, vscale(sample_unit_sphere(cfg.nt, rng),
                                                    cx<double>(u.tx_radius(), 0)));
            const double lhs = std::norm(vdot(w, h));
            const double rhs = quadratic_form(rm.B.matrix(), w);
            if (lhs > rhs + 1e-10)
                ++violations;
        }
    }
    report.check(violations == 0, "worst-case interference bound holds on sampled channels",
                 std::to_string(violations) + " violations");
}

void verify_receive_beamformer(VerifyReport& report) {
    Rng rng = make_rng(33);
    SystemConfig cfg;
    cfg.nt = 4;
    cfg.nr = 4;
    UncertaintyModel u{1.0, 1.0, 1.0};
    bool ok = true;
    for (int inst = 0; inst < 10 && ok; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 700 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const CVec w1 = sample_unit_sphere(cfg.nt, rng);
        const BeamformerPair best{w1, receive_beamformer(rm, w1)};
        const double best_sinr = robust_sinr(rm, best, cfg);
        for (int draw = 0; draw < 20000; ++draw) {
            const BeamformerPair cand{w1, sample_unit_sphere(cfg.nr, rng)};
            if (robust_sinr(rm, cand, cfg) > best_sinr * (1 + 1e-12)) {
                ok = false;
                break;
            }
        }
    }
    report.check(ok, "receive beamformer beats random receive vectors");
}

void verify_closed_form(VerifyReport& report) {
    Rng rng = make_rng(44);
    SystemConfig cfg;
    cfg.nt = 2;
    cfg.nr = 2;
    UncertaintyModel u{1.0, 1.0, 1.0};
    bool ok = true;
    for (int inst = 0; inst < 10 && ok; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 800 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const DesignReport design = closed_form_transmit(rm, cfg);
        const double budget = cfg.i_limit / cfg.p_su;
        double best_found = 0;
        for (int draw = 0; draw < 100000; ++draw) {
            const CVec dir = sample_unit_sphere(cfg.nt, rng);
            const double b_form = quadratic_form(rm.B.matrix(), dir);
            const double scale = std::min(1.0, std::sqrt(budget / b_form));
            best_found = std::max(best_found, scale * scale * quadratic_form(rm.A.matrix(), dir));
        }
        ok = design.worst_case_sinr >= best_found * (1 - 1e-6);
    }
    report.check(ok, "closed-form transmit design beats random feasible search");
}

void verify_sdp(VerifyReport& report) {
    SystemConfig cfg;
    UncertaintyModel u{1.0, 1.0, 1.0};
    bool agree_ok = true, rank1_ok = true, gap_ok = true, dual_ok = true;
    for (int inst = 0; inst < 10; ++inst) {
        const ChannelSet cs = sample_channels(cfg, u, 900 + inst);
        const RobustMatrices rm = build_robust_matrices(cs, cfg);
        const DesignReport design = closed_form_transmit(rm, cfg);
        SdpProblem problem{rm.A,
                           {{rm.B, cfg.i_limit / cfg.p_su},
                            {HermitianMatrix<double>::identity(cfg.nt), 1.0}}};
        const SdpSolution sol = solve(problem);
        agree_ok = agree_ok && std::abs(sol.objective_value - design.worst_case_sinr) <=
                                   1e-5 * design.worst_case_sinr;
        rank1_ok = rank1_ok && extract_rank_one(sol).defect <= 1e-6;
        gap_ok = gap_ok && sol.duality_gap <= 1e-6 * (1.0 + std::abs(sol.objective_value));

        CMat dual_slack = rm.A.matrix() * cx<double>(-1.0, 0);
        for (std::size_t i = 0; i < problem.constraints.size(); ++i)
            dual_slack += problem.constraints[i].matrix.matrix() * cx<double>(sol.dual[i], 0);
        dual_slack = (dual_slack + dual_slack.adjoint()) * cx<double>(0.5, 0);
        const double smin = hermitian_eig(HermitianMatrix<double>(dual_slack)).values.front();
        dual_ok = dual_ok && smin >= -1e-7 * std::max(1.0, rm.A.frobenius_norm());
    }
    report.check(agree_ok, "SDP objective matches the closed form");
    report.check(rank1_ok, "SDP solutions are rank one");
    report.check(gap_ok, "SDP duality gaps are certified small");
    report.check(dual_ok, "SDP dual certificates are feasible");
}

void verify_allocator(VerifyReport& report) {
    Rng rng = make_rng(55);
    std::uniform_real_distribution<double> gain_dist(0.05, 4.0);
    bool opt_ok = true, kkt_ok = true, fair_ok = true, dom_ok = true;
    for (int inst = 0; inst < 25; ++inst) {
        const std::vector<double> gains{gain_dist(rng), gain_dist(rng), gain_dist(rng)};
        const double i_limit = 2.0;
        const AllocationResult opt = optimal_split(gains, i_limit);
        const AllocationResult fair = fair_split(gains, i_limit);

        double best_grid = 0;
        const int steps = 100;
        for (int a = 0; a <= steps; ++a)
            for (int b = 0; a + b <= steps; ++b) {
                const double i1 = i_limit * a / steps;
                const double i2 = i_limit * b / steps;
                const double i3 = i_limit - i1 - i2;
                const double rate = std::log2(1 + i1 * gains[0]) + std::log2(1 + i2 * gains[1]) +
                                    std::log2(1 + i3 * gains[2]);
                best_grid = std::max(best_grid, rate / 3.0);
            }
        opt_ok = opt_ok && opt.sum_rate >= best_grid - 1e-6;

        double kkt_ref = -1;
        for (std::size_t k = 0; k < gains.size(); ++k) {
            if (opt.budgets[k] <= 0)
                continue;
            const double val = gains[k] / (1 + opt.budgets[k] * gains[k]);
            if (kkt_ref < 0)
                kkt_ref = val;
            kkt_ok = kkt_ok && std::abs(val - kkt_ref) <= 1e-9 * std::max(1.0, kkt_ref);
        }

        for (std::size_t k = 1; k < fair.rates.size(); ++k)
            fair_ok = fair_ok && std::abs(fair.rates[k] - fair.rates[0]) <= 1e-9;
        dom_ok = dom_ok && opt.sum_rate >= fair.sum_rate - 1e-12;
    }
    report.check(opt_ok, "optimal split beats the simplex grid");
    report.check(kkt_ok, "optimal split satisfies the stationarity condition");
    report.check(fair_ok, "fair split equalizes rates");
    report.check(dom_ok, "optimal split dominates fair split");
}

void verify_margins(VerifyReport& report) {
    bool ok = true;
    double prev = -1;
    for (double e = 0; e <= 4.0; e += 0.25) {
        const double m = worst_case_margin(1.7, e, 0.8);
        ok = ok && m >= prev;
        prev = m;
    }
    prev = -1;
    for (double sigma = 0.1; sigma <= 3.0; sigma += 0.1) {
        const double m = worst_case_margin(1.7, 1.3, sigma);
        ok = ok && m >= prev;
        prev = m;
    }
    report.check(ok, "worst-case margins are monotone in e and sigma");
}

int cmd_verify() {
    VerifyReport report;
    verify_hermitian_kernel(report);
    verify_margins(report);
    verify_worst_case_bound(report);
    verify_receive_beamformer(report);
    verify_closed_form(report);
    verify_sdp(report);
    verify_allocator(report);
    if (report.failures == 0) {
        std::cout << "all checks passed\n";
        return 0;
    }
    std::cout << report.failures << " check(s) failed\n";
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust cognitive-radio beamforming simulator"};
    app.require_subcommand(1);

    std::string scenario = "single_user_vs_I";
    std::string sweep;
    std::string trials = "100x100";
    std::uint64_t seed = 1;
    std::string config_path;
    std::string out_path = "results.csv";

    CLI::App* run = app.add_subcommand("run", "run a Monte Carlo campaign and write CSV");
    run->add_option("--scenario", scenario,
                    "single_user_vs_I | single_user_vs_e | multiuser_fair | multiuser_optimal | "
                    "fairness_trace | case2_sweep");
    run->add_option("--sweep", sweep,
                    "start:stop:step; dB for power sweeps, plain for error/slots");
    run->add_option("--trials", trials, "<outer>x<inner> channel x error realizations");
    run->add_option("--seed", seed, "campaign seed");
    run->add_option("--config", config_path, "key = value config file");
    run->add_option("--out", out_path, "output CSV path");

    CLI::App* presets = app.add_subcommand("presets", "print the default simulation setup");
    CLI::App* verify = app.add_subcommand("verify", "run the oracle self-check suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario, sweep, trials, seed, config_path, out_path);
        if (presets->parsed())
            return cmd_presets();
        if (verify->parsed())
            return cmd_verify();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
