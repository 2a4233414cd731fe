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

#ifndef COGBEAM_RNG_HPP
#define COGBEAM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "cogbeam/linalg.hpp"

namespace cogbeam {

/// SplitMix64 finalizer. Used to derive independent per-trial seeds from a
/// campaign seed by mixing counters, so trials stay reproducible no matter
/// how they are scheduled.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive a child seed from a root seed and up to three stream counters.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(root ^ 0x5851f42d4c957f2dULL);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    s = splitmix64(s ^ c);
    return s;
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// One CN(0,1) draw: real and imaginary parts N(0, 1/2), unit total variance.
template <std::floating_point T = double>
cx<T> sample_cngaussian(Rng& rng) {
    std::normal_distribution<T> normal(0, std::sqrt(T(0.5)));
    const T re = normal(rng);
    const T im = normal(rng);
    return cx<T>(re, im);
}

template <std::floating_point T = double>
CxVector<T> sample_cngaussian_vector(std::size_t n, Rng& rng) {
    CxVector<T> v(n);
    for (auto& z : v)
        z = sample_cngaussian<T>(rng);
    return v;
}

template <std::floating_point T = double>
CxMatrix<T> sample_cngaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    CxMatrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = sample_cngaussian<T>(rng);
    return m;
}

/// Uniform draw from the closed complex unit ball of dimension n, i.e. the
/// real Euclidean ball of dimension 2n: Gaussian direction, radius u^{1/(2n)}.
template <std::floating_point T = double>
CxVector<T> sample_unit_ball(std::size_t n, Rng& rng) {
    CxVector<T> v = sample_cngaussian_vector<T>(n, rng);
    const T nrm = vnorm(v);
    if (nrm == 0)
        return CxVector<T>(n, cx<T>(0));
    std::uniform_real_distribution<T> uniform(0, 1);
    const T radius = std::pow(uniform(rng), T(1) / T(2 * n));
    const cx<T> s(radius / nrm, 0);
    return vscale(v, s);
}

/// Uniform draw from the complex unit sphere (where norm bounds are tight).
template <std::floating_point T = double>
CxVector<T> sample_unit_sphere(std::size_t n, Rng& rng) {
    CxVector<T> v = sample_cngaussian_vector<T>(n, rng);
    T nrm = vnorm(v);
    while (nrm == 0) {
        v = sample_cngaussian_vector<T>(n, rng);
        nrm = vnorm(v);
    }
    return vscale(v, cx<T>(1 / nrm, 0));
}

} // namespace cogbeam

#endif // COGBEAM_RNG_HPP
