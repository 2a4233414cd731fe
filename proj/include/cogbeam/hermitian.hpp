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

#ifndef COGBEAM_HERMITIAN_HPP
#define COGBEAM_HERMITIAN_HPP

#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cogbeam/linalg.hpp"

namespace cogbeam {

/// Validated Hermitian matrix. Construction checks that the input is
/// conjugate-symmetric within tolerance and then stores the exact
/// Hermitian projection (M + M^H)/2 with real diagonal, so downstream
/// code can rely on exact symmetry.
template <std::floating_point T>
class HermitianMatrix {
  public:
    static constexpr T hermiticity_tol = T(1e-12);

    explicit HermitianMatrix(const CxMatrix<T>& m) : mat_(m.rows(), m.cols()) {
        if (m.rows() != m.cols())
            throw std::invalid_argument("HermitianMatrix: matrix is not square");
        if (m.rows() == 0)
            throw std::invalid_argument("HermitianMatrix: dimension must be positive");

        T max_abs = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                max_abs = std::max(max_abs, std::abs(m(i, j)));
        const T tol = hermiticity_tol * std::max(max_abs, T(1));

        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (std::abs(m(i, i).imag()) > tol)
                throw std::invalid_argument("HermitianMatrix: diagonal entry has nonreal part");
            mat_(i, i) = cx<T>(m(i, i).real(), 0);
            for (std::size_t j = i + 1; j < m.cols(); ++j) {
                if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
                    throw std::invalid_argument("HermitianMatrix: matrix is not Hermitian");
                const cx<T> avg = (m(i, j) + std::conj(m(j, i))) * cx<T>(T(0.5), 0);
                mat_(i, j) = avg;
                mat_(j, i) = std::conj(avg);
            }
        }
    }

    std::size_t dim() const { return mat_.rows(); }
    const CxMatrix<T>& matrix() const { return mat_; }
    const cx<T>& operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    T frobenius_norm() const { return mat_.frobenius_norm(); }
    T trace() const { return mat_.trace().real(); }

    static HermitianMatrix identity(std::size_t n) {
        return HermitianMatrix(CxMatrix<T>::identity(n));
    }

  private:
    CxMatrix<T> mat_;
};

template <std::floating_point T>
struct EigenPair {
    T value;
    CxVector<T> vector; // unit norm, first nonzero component real positive
};

template <std::floating_point T>
struct HermitianEig {
    std::vector<T> values; // ascending
    CxMatrix<T> vectors;   // column k pairs with values[k]
    int sweeps = 0;
};

namespace detail {

/// Fix the eigenvector phase so the first component of non-negligible
/// magnitude is real positive. Keeps test comparisons deterministic;
/// beamformers themselves are phase-invariant.
template <std::floating_point T>
void fix_phase(CxVector<T>& v) {
    const T threshold = T(1e-9) * vnorm(v);
    for (const auto& z : v) {
        const T mag = std::abs(z);
        if (mag > threshold) {
            const cx<T> rot = std::conj(z) / mag;
            for (auto& w : v)
                w *= rot;
            return;
        }
    }
}

template <std::floating_point T>
T off_diagonal_norm(const CxMatrix<T>& m) {
    T s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            s += std::norm(m(i, j));
    return std::sqrt(2 * s);
}

} // namespace detail

/// Full eigendecomposition by cyclic complex Jacobi rotations.
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-10 * ||M||_F; capped at 100 sweeps. Eigenvalues are returned in
/// ascending order; among equal eigenvalues the one originating from the
/// lower matrix index sorts last, so the maximizing pair of a degenerate
/// spectrum is the canonical basis direction with the smallest index.
template <std::floating_point T>
HermitianEig<T> hermitian_eig(const HermitianMatrix<T>& hm) {
    constexpr int max_sweeps = 100;
    const std::size_t n = hm.dim();
    CxMatrix<T> a = hm.matrix();
    CxMatrix<T> v = CxMatrix<T>::identity(n);

    const T scale = a.frobenius_norm();
    const T tol = T(1e-10) * std::max(scale, T(1e-300));

    int sweep = 0;
    T off = detail::off_diagonal_norm(a);
    while (off > tol) {
        if (sweep >= max_sweeps) {
            std::ostringstream msg;
            msg << "hermitian_eig: no convergence after " << max_sweeps
                << " sweeps, off-diagonal norm " << off;
            throw std::runtime_error(msg.str());
        }
        ++sweep;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cx<T> apq = a(p, q);
                const T mag = std::abs(apq);
                if (mag <= tol / T(n * n))
                    continue;

                // Unitary plane rotation J with J(p,p)=c, J(p,q)=s*phase,
                // J(q,p)=-s*conj(phase), J(q,q)=c zeroing a(p,q) in J^H A J.
                const cx<T> phase = apq / mag;
                const T app = a(p, p).real();
                const T aqq = a(q, q).real();
                const T theta = (aqq - app) / (2 * mag);
                const T t = (theta >= 0 ? T(1) : T(-1)) /
                            (std::abs(theta) + std::sqrt(1 + theta * theta));
                const T c = 1 / std::sqrt(1 + t * t);
                const T s = t * c;

                const cx<T> jpq = s * phase;         // J(p,q)
                const cx<T> jqp = -s * std::conj(phase); // J(q,p)

                for (std::size_t k = 0; k < n; ++k) {
                    // right-multiply rows of A by J
                    const cx<T> akp = a(k, p);
                    const cx<T> akq = a(k, q);
                    a(k, p) = akp * c + akq * jqp;
                    a(k, q) = akp * jpq + akq * c;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    // left-multiply columns of A by J^H
                    const cx<T> apk = a(p, k);
                    const cx<T> aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cx<T> vkp = v(k, p);
                    const cx<T> vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * c;
                }
                a(p, q) = cx<T>(0);
                a(q, p) = cx<T>(0);
                a(p, p) = cx<T>(a(p, p).real(), 0);
                a(q, q) = cx<T>(a(q, q).real(), 0);
            }
        }
        off = detail::off_diagonal_norm(a);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const T di = a(i, i).real();
        const T dj = a(j, j).real();
        if (di != dj)
            return di < dj;
        return i > j; // ties: lower original index sorts last
    });

    HermitianEig<T> result;
    result.values.resize(n);
    result.vectors = CxMatrix<T>(n, n);
    result.sweeps = sweep;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        result.values[k] = a(src, src).real();
        CxVector<T> col(n);
        for (std::size_t i = 0; i < n; ++i)
            col[i] = v(i, src);
        const T nrm = vnorm(col);
        for (auto& z : col)
            z /= nrm;
        detail::fix_phase(col);
        for (std::size_t i = 0; i < n; ++i)
            result.vectors(i, k) = col[i];
    }
    return result;
}

/// Largest eigenvalue and its unit eigenvector.
template <std::floating_point T>
EigenPair<T> hermitian_eig_max(const HermitianMatrix<T>& m) {
    const HermitianEig<T> eig = hermitian_eig(m);
    const std::size_t n = m.dim();
    EigenPair<T> pair;
    pair.value = eig.values.back();
    pair.vector.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        pair.vector[i] = eig.vectors(i, n - 1);
    return pair;
}

namespace detail {

/// V f(Lambda) V^H for an existing decomposition.
template <std::floating_point T, typename F>
CxMatrix<T> rebuild_from_eig(const HermitianEig<T>& eig, F&& f) {
    const std::size_t n = eig.values.size();
    CxMatrix<T> m(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const T fk = f(eig.values[k]);
        if (fk == T(0))
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cx<T> scaled = fk * eig.vectors(i, k);
            for (std::size_t j = i; j < n; ++j)
                m(i, j) += scaled * std::conj(eig.vectors(j, k));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cx<T>(m(i, i).real(), 0);
        for (std::size_t j = i + 1; j < n; ++j)
            m(j, i) = std::conj(m(i, j));
    }
    return m;
}

} // namespace detail

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// treated as floating-point drift and clamped to zero; anything more
/// negative is rejected.
template <std::floating_point T>
HermitianMatrix<T> hermitian_sqrt(const HermitianMatrix<T>& m) {
    HermitianEig<T> eig = hermitian_eig(m);
    for (auto& lambda : eig.values) {
        if (lambda < T(-1e-10)) {
            std::ostringstream msg;
            msg << "hermitian_sqrt: matrix is indefinite (min eigenvalue " << lambda << ")";
            throw std::domain_error(msg.str());
        }
        if (lambda < 0)
            lambda = 0;
    }
    return HermitianMatrix<T>(
        detail::rebuild_from_eig(eig, [](T x) { return std::sqrt(x); }));
}

/// (M^{1/2})^{-1} for positive definite M, used by the closed-form
/// transmit design. Same conditioning requirement as hermitian_solve.
template <std::floating_point T>
HermitianMatrix<T> hermitian_inverse_sqrt(const HermitianMatrix<T>& m) {
    HermitianEig<T> eig = hermitian_eig(m);
    const T min_allowed = T(1e-12) * m.frobenius_norm();
    if (eig.values.front() <= min_allowed) {
        std::ostringstream msg;
        msg << "hermitian_inverse_sqrt: matrix is numerically singular (min eigenvalue "
            << eig.values.front() << ")";
        throw std::domain_error(msg.str());
    }
    return HermitianMatrix<T>(
        detail::rebuild_from_eig(eig, [](T x) { return 1 / std::sqrt(x); }));
}

/// Solve M x = rhs for positive definite M via the eigendecomposition.
template <std::floating_point T>
CxVector<T> hermitian_solve(const HermitianMatrix<T>& m, const CxVector<T>& rhs) {
    if (rhs.size() != m.dim())
        throw std::invalid_argument("hermitian_solve: rhs length does not match");
    const HermitianEig<T> eig = hermitian_eig(m);
    const T min_allowed = T(1e-12) * m.frobenius_norm();
    if (eig.values.front() <= min_allowed) {
        std::ostringstream msg;
        msg << "hermitian_solve: matrix is near singular (min eigenvalue "
            << eig.values.front() << ", threshold " << min_allowed << ")";
        throw std::domain_error(msg.str());
    }
    const std::size_t n = m.dim();
    CxVector<T> x(n, cx<T>(0));
    for (std::size_t k = 0; k < n; ++k) {
        cx<T> coeff(0);
        for (std::size_t i = 0; i < n; ++i)
            coeff += std::conj(eig.vectors(i, k)) * rhs[i];
        coeff /= eig.values[k];
        for (std::size_t i = 0; i < n; ++i)
            x[i] += coeff * eig.vectors(i, k);
    }
    return x;
}

/// Solve M X = RHS column by column (shared decomposition).
template <std::floating_point T>
CxMatrix<T> hermitian_solve(const HermitianMatrix<T>& m, const CxMatrix<T>& rhs) {
    if (rhs.rows() != m.dim())
        throw std::invalid_argument("hermitian_solve: rhs rows do not match");
    const HermitianEig<T> eig = hermitian_eig(m);
    const T min_allowed = T(1e-12) * m.frobenius_norm();
    if (eig.values.front() <= min_allowed) {
        std::ostringstream msg;
        msg << "hermitian_solve: matrix is near singular (min eigenvalue "
            << eig.values.front() << ", threshold " << min_allowed << ")";
        throw std::domain_error(msg.str());
    }
    const std::size_t n = m.dim();
    CxMatrix<T> x(n, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        for (std::size_t k = 0; k < n; ++k) {
            cx<T> coeff(0);
            for (std::size_t i = 0; i < n; ++i)
                coeff += std::conj(eig.vectors(i, k)) * rhs(i, c);
            coeff /= eig.values[k];
            for (std::size_t i = 0; i < n; ++i)
                x(i, c) += coeff * eig.vectors(i, k);
        }
    }
    return x;
}

} // namespace cogbeam

#endif // COGBEAM_HERMITIAN_HPP
