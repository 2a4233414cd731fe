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

#ifndef COGBEAM_LINALG_HPP
#define COGBEAM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace cogbeam {

template <std::floating_point T>
using cx = std::complex<T>;

template <std::floating_point T>
using CxVector = std::vector<std::complex<T>>;

/// Dense row-major complex matrix. Everything in this library is tiny
/// (dimensions <= 9 in practice), so the storage is a flat std::vector
/// and all operations are straightforward loops.
template <std::floating_point T>
class CxMatrix {
  public:
    CxMatrix() = default;

    CxMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cx<T>(0)) {}

    CxMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cx<T>> entries)
        : rows_(rows), cols_(cols), data_(entries) {
        if (data_.size() != rows * cols)
            throw std::invalid_argument("CxMatrix: initializer size does not match dimensions");
    }

    static CxMatrix identity(std::size_t n) {
        CxMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = cx<T>(1);
        return m;
    }

    /// Rank-1 matrix v * v^H.
    static CxMatrix outer(const CxVector<T>& v) {
        CxMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    /// Rank-1 cross product a * b^H.
    static CxMatrix outer(const CxVector<T>& a, const CxVector<T>& b) {
        CxMatrix m(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                m(i, j) = a[i] * std::conj(b[j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cx<T>& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cx<T>& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cx<T>>& data() const { return data_; }

    CxMatrix adjoint() const {
        CxMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(j, i) = std::conj((*this)(i, j));
        return m;
    }

    cx<T> trace() const {
        cx<T> t(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            t += (*this)(i, i);
        return t;
    }

    T frobenius_norm() const {
        T s = 0;
        for (const auto& z : data_)
            s += std::norm(z);
        return std::sqrt(s);
    }

    CxMatrix& operator+=(const CxMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += o.data_[k];
        return *this;
    }

    CxMatrix& operator-=(const CxMatrix& o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= o.data_[k];
        return *this;
    }

    CxMatrix& operator*=(cx<T> s) {
        for (auto& z : data_)
            z *= s;
        return *this;
    }

    friend CxMatrix operator+(CxMatrix a, const CxMatrix& b) { return a += b; }
    friend CxMatrix operator-(CxMatrix a, const CxMatrix& b) { return a -= b; }
    friend CxMatrix operator*(CxMatrix a, cx<T> s) { return a *= s; }
    friend CxMatrix operator*(cx<T> s, CxMatrix a) { return a *= s; }

    friend CxMatrix operator*(const CxMatrix& a, const CxMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("CxMatrix: inner dimensions do not match");
        CxMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cx<T> aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    m(i, j) += aik * b(k, j);
            }
        return m;
    }

    friend CxVector<T> operator*(const CxMatrix& a, const CxVector<T>& v) {
        if (a.cols_ != v.size())
            throw std::invalid_argument("CxMatrix: vector length does not match");
        CxVector<T> r(a.rows_, cx<T>(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                r[i] += a(i, j) * v[j];
        return r;
    }

  private:
    void check_same_shape(const CxMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("CxMatrix: shapes do not match");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cx<T>> data_;
};

// --- vector helpers ---

/// Conjugate-linear inner product <a, b> = a^H b.
template <std::floating_point T>
cx<T> vdot(const CxVector<T>& a, const CxVector<T>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vdot: lengths do not match");
    cx<T> s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

template <std::floating_point T>
T vnorm(const CxVector<T>& v) {
    T s = 0;
    for (const auto& z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

template <std::floating_point T>
CxVector<T> vscale(CxVector<T> v, cx<T> s) {
    for (auto& z : v)
        z *= s;
    return v;
}

template <std::floating_point T>
CxVector<T> vadd(CxVector<T> a, const CxVector<T>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vadd: lengths do not match");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

template <std::floating_point T>
CxVector<T> vsub(CxVector<T> a, const CxVector<T>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vsub: lengths do not match");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

/// Quadratic form w^H M w. The result of a Hermitian form is real; the
/// caller is responsible for M actually being Hermitian.
template <std::floating_point T>
T quadratic_form(const CxMatrix<T>& m, const CxVector<T>& w) {
    return vdot(w, m * w).real();
}

/// Unit basis vector e_k of length n.
template <std::floating_point T>
CxVector<T> unit_vector(std::size_t n, std::size_t k) {
    CxVector<T> v(n, cx<T>(0));
    v.at(k) = cx<T>(1);
    return v;
}

using CMat = CxMatrix<double>;
using CVec = CxVector<double>;

} // namespace cogbeam

#endif // COGBEAM_LINALG_HPP
