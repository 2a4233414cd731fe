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
// Monte Carlo campaign driver. A campaign sweeps one free parameter
// (interference limit, channel error, time slot or cross-interference cap),
// runs trials_outer channel realizations x trials_inner error realizations
// per sweep value, and reduces each sweep value to one CSV row. Designs
// only ever see nominal channels; realized metrics use the true draws.
//
// Trial seeds are derived from the campaign seed by counter mixing, and the
// parameter sweeps reuse the same trial streams (common random numbers), so
// sweep trends are not drowned in resampling noise. The time-slot trace is
// the exception: there the sweep axis is time, so each slot gets fresh
// draws.

#ifndef COGBEAM_SIMULATE_HPP
#define COGBEAM_SIMULATE_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogbeam/allocation.hpp"
#include "cogbeam/beamformer.hpp"
#include "cogbeam/channel.hpp"
#include "cogbeam/rng.hpp"
#include "cogbeam/underlay.hpp"

namespace cogbeam {

enum class Scenario {
    single_user_vs_i_limit, // mean link metrics over an interference-limit sweep
    single_user_vs_error,   // ... over a channel-error sweep
    multiuser_fair,         // sub-band design, equal-rate budget split
    multiuser_optimal,      // sub-band design, sum-rate-optimal split
    fairness_trace,         // per-slot designed rates, fair vs optimal split
    underlay_sweep          // full-band design over a cross-interference sweep
};

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::single_user_vs_i_limit: return "single_user_vs_I";
        case Scenario::single_user_vs_error: return "single_user_vs_e";
        case Scenario::multiuser_fair: return "multiuser_fair";
        case Scenario::multiuser_optimal: return "multiuser_optimal";
        case Scenario::fairness_trace: return "fairness_trace";
        case Scenario::underlay_sweep: return "case2_sweep";
    }
    throw std::invalid_argument("scenario_name: unknown scenario");
}

inline Scenario scenario_from_name(const std::string& name) {
    for (Scenario s : {Scenario::single_user_vs_i_limit, Scenario::single_user_vs_error,
                       Scenario::multiuser_fair, Scenario::multiuser_optimal,
                       Scenario::fairness_trace, Scenario::underlay_sweep})
        if (name == scenario_name(s))
            return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

struct Campaign {
    Scenario scenario = Scenario::single_user_vs_i_limit;
    std::vector<double> sweep; // linear units (dB conversion is a CLI concern)
    std::size_t trials_outer = 100; // channel realizations
    std::size_t trials_inner = 100; // error realizations per channel
    std::uint64_t seed = 1;
    SystemConfig cfg;
    UncertaintyModel uncertainty;
    int underlay_max_rounds = 20;

    void validate() const {
        cfg.validate();
        uncertainty.validate();
        if (trials_outer < 1 || trials_inner < 1)
            throw std::invalid_argument("Campaign: trial counts must be >= 1");
        if (sweep.empty())
            throw std::invalid_argument("Campaign: sweep must be nonempty");
        for (std::size_t i = 1; i < sweep.size(); ++i)
            if (!(sweep[i] > sweep[i - 1]))
                throw std::invalid_argument("Campaign: sweep must be strictly increasing");
    }
};

struct ResultRow {
    double sweep_value = 0;
    double mean_rate = 0;
    double mean_realized_sinr = 0;
    double mean_pu_interference = 0;
    long violation_count = 0;
    std::vector<double> per_user_rates; // scenario-dependent, may be empty
};

struct RunStats {
    std::size_t trials_total = 0;
    std::size_t solver_failures = 0;
};

/// Published simulation setup: 5+5 antennas, 20 dB transmit powers over
/// unit noise, 5 dB interference limit, 3 secondary users, unit channel
/// error deviation, 1000 x 1000 trials.
inline Campaign default_presets() {
    Campaign c;
    c.scenario = Scenario::single_user_vs_i_limit;
    c.cfg.nt = 5;
    c.cfg.nr = 5;
    c.cfg.p_su = 100.0;               // 20 dB
    c.cfg.p_pu = 100.0;               // 20 dB
    c.cfg.noise_power = 1.0;          // 0 dB reference
    c.cfg.i_limit = std::pow(10.0, 0.5); // 5 dB
    c.cfg.n_sec = 3;
    c.uncertainty = UncertaintyModel{1.0, 1.0, 1.0};
    c.trials_outer = 1000;
    c.trials_inner = 1000;
    c.seed = 1;
    for (double db = -5.0; db <= 10.0 + 1e-9; db += 2.5)
        c.sweep.push_back(std::pow(10.0, db / 10.0));
    return c;
}

/// Column labels for the per-user block of a scenario's rows.
inline std::vector<std::string> per_user_labels(const Campaign& c) {
    std::vector<std::string> labels;
    switch (c.scenario) {
        case Scenario::multiuser_fair:
        case Scenario::multiuser_optimal:
        case Scenario::underlay_sweep:
            for (std::size_t k = 1; k <= c.cfg.n_sec; ++k)
                labels.push_back("rate_" + std::to_string(k));
            break;
        case Scenario::fairness_trace:
            for (std::size_t k = 1; k <= c.cfg.n_sec; ++k)
                labels.push_back("fair_rate_" + std::to_string(k));
            for (std::size_t k = 1; k <= c.cfg.n_sec; ++k)
                labels.push_back("opt_rate_" + std::to_string(k));
            break;
        default:
            break;
    }
    return labels;
}

namespace detail {

constexpr std::uint64_t stream_channel = 1;
constexpr std::uint64_t stream_error = 2;

inline std::uint64_t pack32(std::uint64_t hi, std::uint64_t lo) {
    return (hi << 32) | (lo & 0xffffffffULL);
}

struct Accumulator {
    double rate = 0, sinr = 0, pu = 0;
    long violations = 0;
    std::size_t samples = 0;
    std::vector<double> per_user;

    void init_users(std::size_t n) { per_user.assign(n, 0.0); }
};

class FailureBudget {
  public:
    FailureBudget(std::size_t total, RunStats* stats) : total_(total), stats_(stats) {
        if (stats_)
            stats_->trials_total = total_;
    }

    /// Tolerated while under the 1% budget; throws once it is exceeded.
    void record(std::size_t failed_trials, const std::string& what) {
        failures_ += failed_trials;
        last_error_ = what;
        if (stats_)
            stats_->solver_failures = failures_;
        if (100 * failures_ > total_)
            throw std::runtime_error("campaign aborted: solver failure budget exceeded (" +
                                     std::to_string(failures_) + "/" + std::to_string(total_) +
                                     " trials), last error: " + last_error_);
    }

  private:
    std::size_t total_;
    std::size_t failures_ = 0;
    RunStats* stats_;
    std::string last_error_;
};

inline bool violates(double pu_interference, double i_limit) {
    return pu_interference > i_limit * (1.0 + 1e-10);
}

inline std::vector<ResultRow> run_single_user(const Campaign& c, RunStats* stats) {
    const bool sweep_is_i_limit = c.scenario == Scenario::single_user_vs_i_limit;
    FailureBudget budget(c.sweep.size() * c.trials_outer * c.trials_inner, stats);
    std::vector<ResultRow> rows;

    for (std::size_t si = 0; si < c.sweep.size(); ++si) {
        SystemConfig cfg = c.cfg;
        UncertaintyModel u = c.uncertainty;
        if (sweep_is_i_limit)
            cfg.i_limit = c.sweep[si];
        else
            u.e = c.sweep[si];

        Accumulator acc;
        for (std::size_t outer = 0; outer < c.trials_outer; ++outer) {
            ChannelSet cs;
            DesignReport design;
            try {
                cs = sample_channels(cfg, u, derive_seed(c.seed, stream_channel, outer, 0));
                design = closed_form_transmit(build_robust_matrices(cs, cfg), cfg);
            } catch (const std::exception& ex) {
                budget.record(c.trials_inner, ex.what());
                continue;
            }
            for (std::size_t inner = 0; inner < c.trials_inner; ++inner) {
                Rng rng = make_rng(derive_seed(c.seed, stream_error, pack32(outer, inner), 0));
                const ChannelSet truth = redraw_errors(cs, rng);
                const RealizedPerformance perf = realized_performance(truth, design.pair, cfg);
                acc.rate += perf.rate;
                acc.sinr += perf.sinr;
                acc.pu += perf.pu_interference;
                acc.violations += violates(perf.pu_interference, cfg.i_limit) ? 1 : 0;
                ++acc.samples;
            }
        }

        ResultRow row;
        row.sweep_value = c.sweep[si];
        if (acc.samples > 0) {
            row.mean_rate = acc.rate / acc.samples;
            row.mean_realized_sinr = acc.sinr / acc.samples;
            row.mean_pu_interference = acc.pu / acc.samples;
        }
        row.violation_count = acc.violations;
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Shared body of the sub-band scenarios. For the time-slot trace the
/// sweep index is folded into the channel seeds (fresh draws per slot) and
/// the per-user columns carry designed rates for both split modes.
inline std::vector<ResultRow> run_subband(const Campaign& c, RunStats* stats) {
    const bool trace = c.scenario == Scenario::fairness_trace;
    const AllocationMode mode = c.scenario == Scenario::multiuser_optimal
                                    ? AllocationMode::optimal
                                    : AllocationMode::fair;
    const std::size_t n_users = c.cfg.n_sec;
    FailureBudget budget(c.sweep.size() * c.trials_outer * c.trials_inner, stats);
    std::vector<ResultRow> rows;

    for (std::size_t si = 0; si < c.sweep.size(); ++si) {
        SystemConfig cfg = c.cfg;
        if (!trace)
            cfg.i_limit = c.sweep[si];

        Accumulator acc;
        acc.init_users(trace ? 2 * n_users : n_users);

        for (std::size_t outer = 0; outer < c.trials_outer; ++outer) {
            std::vector<ChannelSet> channels;
            std::vector<RobustMatrices> rm;
            std::vector<double> gains;
            AllocationResult alloc;
            AllocationResult alloc_other; // trace only: the optimal split
            std::vector<DesignReport> designs;
            try {
                const std::uint64_t block = trace ? pack32(si, outer) : outer;
                for (std::size_t k = 0; k < n_users; ++k) {
                    channels.push_back(sample_channels(
                        cfg, c.uncertainty, derive_seed(c.seed, stream_channel, block, k)));
                    rm.push_back(build_robust_matrices(channels[k], cfg));
                    gains.push_back(per_user_gain(rm[k], cfg));
                }
                alloc = mode == AllocationMode::optimal ? optimal_split(gains, cfg.i_limit)
                                                        : fair_split(gains, cfg.i_limit);
                if (trace)
                    alloc_other = optimal_split(gains, cfg.i_limit);
                designs.resize(n_users);
                for (std::size_t k = 0; k < n_users; ++k) {
                    if (alloc.budgets[k] <= 0)
                        continue; // dropped user: no transmission
                    SystemConfig user_cfg = cfg;
                    user_cfg.i_limit = alloc.budgets[k];
                    designs[k] = closed_form_transmit(rm[k], user_cfg);
                }
            } catch (const std::exception& ex) {
                budget.record(c.trials_inner, ex.what());
                continue;
            }

            if (trace) {
                for (std::size_t k = 0; k < n_users; ++k) {
                    acc.per_user[k] += alloc.rates[k] * static_cast<double>(c.trials_inner);
                    acc.per_user[n_users + k] +=
                        alloc_other.rates[k] * static_cast<double>(c.trials_inner);
                }
            }

            for (std::size_t inner = 0; inner < c.trials_inner; ++inner) {
                double slot_rate = 0, slot_pu = 0, slot_sinr = 0;
                for (std::size_t k = 0; k < n_users; ++k) {
                    if (alloc.budgets[k] <= 0)
                        continue;
                    Rng rng = make_rng(
                        derive_seed(c.seed, stream_error,
                                    trace ? pack32(si, outer * c.trials_inner + inner)
                                          : pack32(outer, inner),
                                    k));
                    const ChannelSet truth = redraw_errors(channels[k], rng);
                    const RealizedPerformance perf =
                        realized_performance(truth, designs[k].pair, cfg);
                    slot_rate += perf.rate;
                    slot_pu += perf.pu_interference;
                    slot_sinr += perf.sinr;
                    if (!trace)
                        acc.per_user[k] += perf.rate;
                }
                acc.rate += slot_rate / static_cast<double>(n_users);
                acc.sinr += slot_sinr / static_cast<double>(n_users);
                acc.pu += slot_pu;
                acc.violations += violates(slot_pu, cfg.i_limit) ? 1 : 0;
                ++acc.samples;
            }
        }

        ResultRow row;
        row.sweep_value = c.sweep[si];
        if (acc.samples > 0) {
            row.mean_rate = acc.rate / acc.samples;
            row.mean_realized_sinr = acc.sinr / acc.samples;
            row.mean_pu_interference = acc.pu / acc.samples;
            row.per_user_rates.resize(acc.per_user.size());
            for (std::size_t k = 0; k < acc.per_user.size(); ++k)
                row.per_user_rates[k] = acc.per_user[k] / acc.samples;
        } else {
            row.per_user_rates.assign(acc.per_user.size(), 0.0);
        }
        row.violation_count = acc.violations;
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::vector<ResultRow> run_underlay(const Campaign& c, RunStats* stats) {
    const std::size_t n_users = c.cfg.n_sec;
    FailureBudget budget(c.sweep.size() * c.trials_outer * c.trials_inner, stats);
    std::vector<ResultRow> rows;

    for (std::size_t si = 0; si < c.sweep.size(); ++si) {
        const double i_prime = c.sweep[si];
        Accumulator acc;
        acc.init_users(n_users);

        for (std::size_t outer = 0; outer < c.trials_outer; ++outer) {
            std::vector<ChannelSet> channels;
            std::vector<DesignReport> reports;
            try {
                for (std::size_t k = 0; k < n_users; ++k)
                    channels.push_back(sample_channels(
                        c.cfg, c.uncertainty, derive_seed(c.seed, stream_channel, outer, k)));
                reports = underlay_design(channels, c.cfg, i_prime, c.underlay_max_rounds);
            } catch (const std::exception& ex) {
                budget.record(c.trials_inner, ex.what());
                continue;
            }

            for (std::size_t inner = 0; inner < c.trials_inner; ++inner) {
                std::vector<ChannelSet> truths;
                truths.reserve(n_users);
                for (std::size_t k = 0; k < n_users; ++k) {
                    Rng rng = make_rng(
                        derive_seed(c.seed, stream_error, pack32(outer, inner), k));
                    truths.push_back(redraw_errors(channels[k], rng));
                }
                double sum_rate = 0, total_pu = 0, mean_sinr = 0;
                for (std::size_t k = 0; k < n_users; ++k) {
                    const CVec& w2 = reports[k].pair.w2;
                    const double signal =
                        c.cfg.p_su * std::norm(vdot(w2, truths[k].H_s * reports[k].pair.w1));
                    double denom =
                        c.cfg.noise_power * vnorm(w2) * vnorm(w2) +
                        c.cfg.p_pu * std::norm(vdot(w2, truths[k].h_prime_true));
                    for (std::size_t j = 0; j < n_users; ++j)
                        if (j != k)
                            denom += c.cfg.p_su *
                                     std::norm(vdot(w2, truths[k].H_s * reports[j].pair.w1));
                    const double sinr = signal > 0 ? signal / denom : 0.0;
                    const double rate = std::log2(1.0 + sinr);
                    sum_rate += rate;
                    mean_sinr += sinr / static_cast<double>(n_users);
                    total_pu +=
                        c.cfg.p_su * std::norm(vdot(reports[k].pair.w1, truths[k].h_true));
                    acc.per_user[k] += rate;
                }
                acc.rate += sum_rate; // full-band objective: no 1/N prefactor
                acc.sinr += mean_sinr;
                acc.pu += total_pu;
                acc.violations += violates(total_pu, c.cfg.i_limit) ? 1 : 0;
                ++acc.samples;
            }
        }

        ResultRow row;
        row.sweep_value = i_prime;
        if (acc.samples > 0) {
            row.mean_rate = acc.rate / acc.samples;
            row.mean_realized_sinr = acc.sinr / acc.samples;
            row.mean_pu_interference = acc.pu / acc.samples;
            row.per_user_rates.resize(n_users);
            for (std::size_t k = 0; k < n_users; ++k)
                row.per_user_rates[k] = acc.per_user[k] / acc.samples;
        } else {
            row.per_user_rates.assign(n_users, 0.0);
        }
        row.violation_count = acc.violations;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace detail

/// Run a campaign. Rows come back in sweep order; solver failures are
/// counted per trial and tolerated up to 1% of the campaign, after which
/// the run aborts with a std::runtime_error.
inline std::vector<ResultRow> run_campaign(const Campaign& c, RunStats* stats = nullptr) {
    c.validate();
    switch (c.scenario) {
        case Scenario::single_user_vs_i_limit:
        case Scenario::single_user_vs_error:
            return detail::run_single_user(c, stats);
        case Scenario::multiuser_fair:
        case Scenario::multiuser_optimal:
        case Scenario::fairness_trace:
            return detail::run_subband(c, stats);
        case Scenario::underlay_sweep:
            return detail::run_underlay(c, stats);
    }
    throw std::invalid_argument("run_campaign: unknown scenario");
}

/// Write rows as CSV: fixed header, one row per sweep value, 12 significant
/// digits, LF line endings. Every row must carry the same number of
/// per-user columns (possibly zero).
inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path,
                      const std::vector<std::string>& user_labels = {}) {
    std::size_t n_user_cols = rows.empty() ? user_labels.size() : rows.front().per_user_rates.size();
    for (const auto& row : rows)
        if (row.per_user_rates.size() != n_user_cols)
            throw std::invalid_argument("write_csv: rows disagree on per-user column count");
    if (!user_labels.empty() && user_labels.size() != n_user_cols)
        throw std::invalid_argument("write_csv: label count does not match per-user columns");

    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_csv: cannot open " + path);

    out << "sweep_value,mean_rate,mean_realized_sinr,mean_pu_interference,violation_count";
    for (std::size_t k = 0; k < n_user_cols; ++k)
        out << ',' << (user_labels.empty() ? "rate_" + std::to_string(k + 1) : user_labels[k]);
    out << '\n';

    out << std::setprecision(12);
    for (const auto& row : rows) {
        out << row.sweep_value << ',' << row.mean_rate << ',' << row.mean_realized_sinr << ','
            << row.mean_pu_interference << ',' << row.violation_count;
        for (double r : row.per_user_rates)
            out << ',' << r;
        out << '\n';
    }
    out.flush();
    if (!out)
        throw std::runtime_error("write_csv: write failed for " + path);
}

} // namespace cogbeam

#endif // COGBEAM_SIMULATE_HPP
