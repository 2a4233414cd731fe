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
// Test-only oracles, deliberately independent of the implementation paths
// they check: a characteristic-polynomial eigenvalue route (trace
// recursion + Durand-Kerner roots) against the Jacobi sweep, brute-force
// feasible searches against the closed forms, a simplex grid against the
// allocator, and a tiny CSV reader for round trips.

#ifndef COGBEAM_TESTS_ORACLE_HELPERS_HPP
#define COGBEAM_TESTS_ORACLE_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogbeam/cogbeam.hpp"

namespace cogbeam::test {

/// Characteristic polynomial coefficients by the Faddeev-LeVerrier trace
/// recursion: p(x) = x^n + c[n-1] x^{n-1} + ... + c[0].
inline std::vector<cx<double>> characteristic_polynomial(const CMat& m) {
    const std::size_t n = m.rows();
    std::vector<cx<double>> coeffs(n);
    CMat mk = m;
    cx<double> ck(1, 0);
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            CMat shifted = mk;
            for (std::size_t i = 0; i < n; ++i)
                shifted(i, i) += ck;
            mk = m * shifted;
        }
        ck = -mk.trace() / cx<double>(static_cast<double>(k), 0);
        coeffs[n - k] = ck;
    }
    return coeffs;
}

/// All roots of a monic polynomial by Durand-Kerner iteration.
inline std::vector<cx<double>> polynomial_roots(const std::vector<cx<double>>& coeffs) {
    const std::size_t n = coeffs.size();
    const auto eval = [&](cx<double> x) {
        cx<double> acc(1, 0);
        for (std::size_t k = n; k-- > 0;)
            acc = acc * x + coeffs[k];
        return acc;
    };

    double radius = 1;
    for (const auto& c : coeffs)
        radius = std::max(radius, std::abs(c));
    radius = 1 + radius;

    std::vector<cx<double>> roots(n);
    const cx<double> seed(0.4, 0.9);
    cx<double> power(1, 0);
    for (auto& r : roots) {
        power *= seed;
        r = power * cx<double>(radius / std::abs(power), 0) * cx<double>(0.7, 0);
    }

    for (int iter = 0; iter < 1000; ++iter) {
        double shift = 0;
        for (std::size_t i = 0; i < n; ++i) {
            cx<double> denom(1, 0);
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    denom *= roots[i] - roots[j];
            const cx<double> delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            shift = std::max(shift, std::abs(delta));
        }
        if (shift < 1e-14 * radius)
            break;
    }
    return roots;
}

/// Largest eigenvalue via the characteristic polynomial route; Hermitian
/// matrices have real spectra, so imaginary parts are iteration noise.
inline double char_poly_max_eigenvalue(const HermitianMatrix<double>& m) {
    const auto roots = polynomial_roots(characteristic_polynomial(m.matrix()));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& r : roots)
        best = std::max(best, r.real());
    return best;
}

/// Best worst-case SINR found by sampling feasible transmit directions,
/// each scaled to the tighter of the interference budget and the norm cap.
inline double random_feasible_transmit_search(const RobustMatrices& rm, const SystemConfig& cfg,
                                              int samples, Rng& rng) {
    const double budget = cfg.i_limit / cfg.p_su;
    double best = 0;
    for (int s = 0; s < samples; ++s) {
        const CVec dir = sample_unit_sphere(rm.B.dim(), rng);
        const double b_form = quadratic_form(rm.B.matrix(), dir);
        const double scale_sq = std::min(1.0, budget / b_form);
        best = std::max(best, scale_sq * quadratic_form(rm.A.matrix(), dir));
    }
    return best;
}

/// Exhaustive simplex grid for the budget-split problem, at least `points`
/// grid nodes, returning the best (1/n)-scaled sum rate.
inline double simplex_grid_best_rate(const std::vector<double>& gains, double i_limit,
                                     std::size_t points) {
    const std::size_t n = gains.size();
    if (n == 2) {
        const std::size_t steps = points;
        double best = 0;
        for (std::size_t a = 0; a <= steps; ++a) {
            const double i1 = i_limit * static_cast<double>(a) / static_cast<double>(steps);
            const double rate =
                std::log2(1 + i1 * gains[0]) + std::log2(1 + (i_limit - i1) * gains[1]);
            best = std::max(best, rate);
        }
        return best / static_cast<double>(n);
    }
    if (n == 3) {
        std::size_t steps = 1;
        while ((steps + 1) * (steps + 2) / 2 < points)
            ++steps;
        double best = 0;
        for (std::size_t a = 0; a <= steps; ++a)
            for (std::size_t b = 0; a + b <= steps; ++b) {
                const double i1 = i_limit * static_cast<double>(a) / static_cast<double>(steps);
                const double i2 = i_limit * static_cast<double>(b) / static_cast<double>(steps);
                const double i3 = i_limit - i1 - i2;
                const double rate = std::log2(1 + i1 * gains[0]) + std::log2(1 + i2 * gains[1]) +
                                    std::log2(1 + i3 * gains[2]);
                best = std::max(best, rate);
            }
        return best / static_cast<double>(n);
    }
    throw std::invalid_argument("simplex_grid_best_rate: only 2 or 3 users supported");
}

/// Parsed CSV: header fields plus numeric rows.
struct CsvContent {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvContent read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_csv: cannot open " + path);
    CsvContent out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string field;
        if (first) {
            while (std::getline(ss, field, ','))
                out.header.push_back(field);
            first = false;
            continue;
        }
        std::vector<double> row;
        while (std::getline(ss, field, ','))
            row.push_back(std::stod(field));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace cogbeam::test

#endif // COGBEAM_TESTS_ORACLE_HELPERS_HPP
