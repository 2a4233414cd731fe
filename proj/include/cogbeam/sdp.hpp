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
// Small dense complex SDP solver:
//
//     maximize    tr(A W)
//     subject to  tr(B_i W) <= b_i,   W Hermitian PSD
//
// solved by a log-barrier path-following method with damped Newton
// centering. Problems here are tiny (dim <= 9, a handful of constraints),
// so every step works on full dense matrices and the Newton system is
// reduced to an m x m solve via the low-rank structure of the slack terms.

#ifndef COGBEAM_SDP_HPP
#define COGBEAM_SDP_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cogbeam/hermitian.hpp"
#include "cogbeam/linalg.hpp"

namespace cogbeam {

struct SdpConstraint {
    HermitianMatrix<double> matrix;
    double bound;
};

struct SdpProblem {
    HermitianMatrix<double> objective;
    std::vector<SdpConstraint> constraints;

    std::size_t dim() const { return objective.dim(); }

    void validate() const {
        if (constraints.empty())
            throw std::invalid_argument("SdpProblem: at least one constraint required");
        for (const auto& c : constraints) {
            if (c.matrix.dim() != dim())
                throw std::invalid_argument("SdpProblem: constraint dimension mismatch");
            if (!std::isfinite(c.bound))
                throw std::invalid_argument("SdpProblem: constraint bound must be finite");
        }
    }
};

enum class SdpStatus { optimal, infeasible, unbounded, max_iterations };

struct SdpSolution {
    HermitianMatrix<double> W;
    double objective_value = 0;
    double duality_gap = 0;
    int iterations = 0;
    SdpStatus status = SdpStatus::optimal;
    std::vector<double> dual; // multiplier per constraint, >= 0
};

struct SdpOptions {
    double gap_tol_abs = 1e-9;
    double gap_tol_rel = 5e-8;
    // solutions are still accepted at this (documented) gap when floating
    // point stops further centering progress
    double gap_limit_rel = 1e-6;
    double newton_tol = 1e-10; // threshold on (decrement^2)/2
    int max_newton_iterations = 500;
    double t_growth = 2.0; // barrier parameter mu halves per outer step
};

namespace detail {

/// Gaussian elimination with partial pivoting for the m x m Newton system.
inline std::vector<double> solve_real_system(std::vector<std::vector<double>> a,
                                             std::vector<double> rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col]))
                pivot = r;
        if (std::abs(a[pivot][col]) < 1e-300)
            throw std::runtime_error("solve_real_system: singular Newton system");
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0)
                continue;
            for (std::size_t k = col; k < n; ++k)
                a[r][k] -= f * a[col][k];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

// Accumulated in long double: slacks and Newton data suffer heavy
// cancellation near the boundary, and the extra mantissa bits push the
// attainable duality gap a few orders of magnitude lower.
inline double real_inner(const CMat& x, const CMat& y) {
    long double s = 0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            const auto& a = x(i, j);
            const auto& b = y(i, j);
            s += static_cast<long double>(a.real()) * b.real() +
                 static_cast<long double>(a.imag()) * b.imag();
        }
    return static_cast<double>(s);
}

/// Barrier value -log det W - sum log s_i, or +inf outside the domain.
inline double barrier_value(double t_times_obj, const std::vector<double>& eigvals,
                            const std::vector<double>& slacks) {
    double v = -t_times_obj;
    for (double lambda : eigvals) {
        if (lambda <= 0)
            return std::numeric_limits<double>::infinity();
        v -= std::log(lambda);
    }
    for (double s : slacks) {
        if (s <= 0)
            return std::numeric_limits<double>::infinity();
        v -= std::log(s);
    }
    return v;
}

/// Refine the dual multipliers by least squares on the complementary
/// slackness condition (sum_i y_i B_i - A) v = 0 at the top eigenvector of
/// W. The path-following estimate 1/(t s_i) inherits the centering error;
/// this recovery does not. Negative components are clamped and any small
/// dual infeasibility is repaired through an identity-proportional
/// constraint when one exists. Returns false when no feasible refinement
/// was found.
inline bool refine_dual(const CMat& a_mat, const std::vector<CMat>& b_mats, const CMat& w,
                        std::vector<double>& y) {
    const std::size_t n = w.rows();
    const std::size_t m = b_mats.size();

    // Complementary slackness twice over: multipliers of slack constraints
    // are zero, and the dual slack matrix annihilates the range of the
    // optimal W, spanned by the significant eigenvectors. The least squares
    // runs over the active set only (an inactive multiplier inflates the
    // dual objective even when complementarity tolerates it); rows are
    // weighted by the eigenvalue so noisy near-null directions fade out,
    // and a tiny ridge settles degenerate active sets.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < m; ++i)
        if (1.0 - real_inner(b_mats[i], w) <= 1e-2)
            active.push_back(i);
    const std::size_t ma = active.size();

    const auto w_eig = hermitian_eig(HermitianMatrix<double>(w));
    const double lambda_max = w_eig.values.back();
    if (lambda_max <= 0)
        return false;

    std::vector<double> candidate(m, 0.0);
    if (ma > 0) {
        std::vector<std::vector<double>> gram(ma, std::vector<double>(ma, 0.0));
        std::vector<double> rhs(ma, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double lambda = w_eig.values[k];
            if (lambda < 1e-6 * lambda_max)
                continue;
            CVec v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = w_eig.vectors(i, k);
            std::vector<CVec> cols(ma);
            for (std::size_t i = 0; i < ma; ++i)
                cols[i] = b_mats[active[i]] * v;
            const CVec target = a_mat * v;
            const double weight = lambda * lambda;
            for (std::size_t i = 0; i < ma; ++i) {
                rhs[i] += weight * vdot(cols[i], target).real();
                for (std::size_t j = 0; j < ma; ++j)
                    gram[i][j] += weight * vdot(cols[i], cols[j]).real();
            }
        }
        double ridge = 0;
        for (std::size_t i = 0; i < ma; ++i)
            ridge += gram[i][i];
        ridge = std::max(ridge, 1e-300) * 1e-13 / static_cast<double>(ma);
        for (std::size_t i = 0; i < ma; ++i)
            gram[i][i] += ridge;

        std::vector<double> reduced;
        try {
            reduced = solve_real_system(gram, rhs);
        } catch (const std::runtime_error&) {
            return false;
        }
        for (std::size_t i = 0; i < ma; ++i)
            candidate[active[i]] = std::max(reduced[i], 0.0);
    }

    // dual slack matrix and feasibility repair
    CMat s_mat = a_mat * cx<double>(-1.0, 0);
    for (std::size_t i = 0; i < m; ++i)
        s_mat += b_mats[i] * cx<double>(candidate[i], 0);
    s_mat = (s_mat + s_mat.adjoint()) * cx<double>(0.5, 0);
    const double s_min = hermitian_eig(HermitianMatrix<double>(s_mat)).values.front();
    if (s_min < 0) {
        std::size_t repair = m;
        double repair_scale = 0;
        for (std::size_t i = 0; i < m && repair == m; ++i) {
            const double diag = b_mats[i](0, 0).real();
            if (diag <= 0)
                continue;
            bool is_identity = true;
            for (std::size_t r = 0; r < n && is_identity; ++r)
                for (std::size_t c = 0; c < n && is_identity; ++c) {
                    const cx<double> want = r == c ? cx<double>(diag, 0) : cx<double>(0, 0);
                    if (std::abs(b_mats[i](r, c) - want) > 1e-14 * std::max(1.0, diag))
                        is_identity = false;
                }
            if (is_identity) {
                repair = i;
                repair_scale = diag;
            }
        }
        if (repair == m)
            return false;
        candidate[repair] += -s_min / repair_scale;
    }
    y = std::move(candidate);
    return true;
}

} // namespace detail

/// Solve the trace-constrained SDP. Infeasibility (a bound that even W = 0
/// cannot satisfy strictly) and unboundedness (a PSD direction that no
/// constraint sees but the objective rewards) are reported through the
/// status field; failure to converge within the Newton iteration cap
/// throws with the last duality gap.
inline SdpSolution solve(const SdpProblem& problem, const SdpOptions& opts = {}) {
    problem.validate();
    const std::size_t n = problem.dim();
    const std::size_t m = problem.constraints.size();

    SdpSolution sol{HermitianMatrix<double>::identity(n), 0.0, 0.0, 0, SdpStatus::optimal, {}};

    // W = 0 must be strictly feasible, otherwise the interior is empty
    // (bound < 0) or has no strictly feasible point (bound = 0).
    for (const auto& c : problem.constraints) {
        if (c.bound <= 0) {
            sol.status = SdpStatus::infeasible;
            sol.W = HermitianMatrix<double>(CMat(n, n));
            return sol;
        }
    }

    // Unbounded if some direction v v^H escapes every constraint while the
    // objective still grows along it.
    {
        CMat total(n, n);
        for (const auto& c : problem.constraints)
            total += c.matrix.matrix();
        const auto eig = hermitian_eig(HermitianMatrix<double>((total + total.adjoint()) *
                                                               cx<double>(0.5, 0)));
        CVec v(n);
        for (std::size_t i = 0; i < n; ++i)
            v[i] = eig.vectors(i, 0);
        bool escapes = eig.values.front() <= 1e-10 * std::max(1.0, total.frobenius_norm());
        for (const auto& c : problem.constraints)
            escapes = escapes && quadratic_form(c.matrix.matrix(), v) <=
                                     1e-10 * std::max(1.0, c.matrix.frobenius_norm());
        if (escapes && quadratic_form(problem.objective.matrix(), v) >
                           1e-10 * std::max(1.0, problem.objective.frobenius_norm())) {
            sol.status = SdpStatus::unbounded;
            return sol;
        }
    }

    // Scale the objective to O(1) and every constraint to unit bound so the
    // barrier schedule and the Newton system conditioning are insensitive to
    // the caller's units.
    const double a_scale = std::max(problem.objective.frobenius_norm(), 1e-300);
    const CMat a_mat = problem.objective.matrix() * cx<double>(1.0 / a_scale, 0);

    std::vector<CMat> b_mats;   // normalized: tr(b_mats[i] W) <= 1
    std::vector<double> b_scale; // original bounds
    b_mats.reserve(m);
    for (const auto& c : problem.constraints) {
        b_scale.push_back(c.bound);
        b_mats.push_back(c.matrix.matrix() * cx<double>(1.0 / c.bound, 0));
    }
    const std::vector<double> bounds(m, 1.0);

    // Strictly feasible start: a small multiple of the identity.
    double eps = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double tr = b_mats[i].trace().real();
        if (tr > 0)
            eps = std::min(eps, 1.0 / tr);
    }
    if (!std::isfinite(eps))
        eps = 1.0;
    CMat w = CMat::identity(n) * cx<double>(0.5 * eps, 0);

    double t = 1.0;
    int newton_total = 0;
    double gap = std::numeric_limits<double>::infinity();

    const auto slacks_of = [&](const CMat& candidate) {
        std::vector<double> s(m);
        for (std::size_t i = 0; i < m; ++i)
            s[i] = bounds[i] - detail::real_inner(b_mats[i], candidate);
        return s;
    };

    // Track the best certificate along the path: when floating point stops
    // further centering progress the best point is still a good solution.
    double best_gap = std::numeric_limits<double>::infinity();
    double best_obj = 0;
    CMat best_w = w;
    std::vector<double> best_dual(m, 0.0);
    int best_iterations = 0;
    int outers_without_progress = 0;

    bool newton_cap_hit = false;
    for (int outer = 0; outer < 256 && !newton_cap_hit; ++outer) {
        // centering for the current t
        double prev_lambda = std::numeric_limits<double>::infinity();
        while (true) {
            if (newton_total >= opts.max_newton_iterations) {
                newton_cap_hit = true;
                break;
            }

            // Work in the whitened basis W = L L^H, where the log-det
            // Hessian is the identity: much better conditioned near the
            // boundary than sandwiching with W^{-1}.
            const auto w_eig = hermitian_eig(HermitianMatrix<double>(w));
            const std::size_t nn = w_eig.values.size();
            CMat l_factor(nn, nn);
            for (std::size_t i = 0; i < nn; ++i)
                for (std::size_t k = 0; k < nn; ++k)
                    l_factor(i, k) = w_eig.vectors(i, k) * std::sqrt(w_eig.values[k]);
            const CMat l_adj = l_factor.adjoint();

            const std::vector<double> slacks = slacks_of(w);
            const CMat a_w = l_adj * a_mat * l_factor;
            std::vector<CMat> b_w(m);
            for (std::size_t i = 0; i < m; ++i)
                b_w[i] = l_adj * b_mats[i] * l_factor;

            CMat grad_w = a_w * cx<double>(-t, 0) - CMat::identity(n);
            for (std::size_t i = 0; i < m; ++i)
                grad_w += b_w[i] * cx<double>(1.0 / slacks[i], 0);

            // Newton step via the m x m reduced system
            std::vector<std::vector<double>> sys(m, std::vector<double>(m, 0.0));
            std::vector<double> rhs(m);
            for (std::size_t j = 0; j < m; ++j) {
                rhs[j] = -detail::real_inner(b_w[j], grad_w);
                for (std::size_t i = 0; i < m; ++i) {
                    sys[j][i] = detail::real_inner(b_w[j], b_w[i]) /
                                (slacks[i] * slacks[i]);
                    if (i == j)
                        sys[j][i] += 1.0;
                }
            }
            const std::vector<double> u = detail::solve_real_system(sys, rhs);

            CMat delta_w = grad_w * cx<double>(-1.0, 0);
            for (std::size_t i = 0; i < m; ++i)
                delta_w -= b_w[i] * cx<double>(u[i] / (slacks[i] * slacks[i]), 0);

            const double decrement_sq = std::max(0.0, -detail::real_inner(grad_w, delta_w));
            ++newton_total;
            if (0.5 * decrement_sq <= opts.newton_tol)
                break;
            const double lambda = std::sqrt(decrement_sq);
            // decrement no longer contracting: floating-point floor reached
            if (lambda <= 0.25 && lambda >= 0.9 * prev_lambda)
                break;
            prev_lambda = lambda;

            CMat delta = l_factor * delta_w * l_adj;
            delta = (delta + delta.adjoint()) * cx<double>(0.5, 0);

            // In the damped phase the barrier value is measurably large, so
            // backtrack on actual descent. In the quadratic phase descent is
            // guaranteed analytically and the barrier difference drops below
            // floating-point resolution, so only backtrack to stay interior.
            const bool check_descent = lambda > 0.25;
            double step = check_descent ? 1.0 / (1.0 + lambda) : 1.0;
            const double phi_now = detail::barrier_value(
                t * detail::real_inner(a_mat, w), w_eig.values, slacks);
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                CMat cand = w + delta * cx<double>(step, 0);
                cand = (cand + cand.adjoint()) * cx<double>(0.5, 0);
                std::vector<double> cand_eigvals;
                try {
                    cand_eigvals = hermitian_eig(HermitianMatrix<double>(cand)).values;
                } catch (const std::runtime_error&) {
                    step *= 0.5;
                    continue;
                }
                const double phi_cand = detail::barrier_value(
                    t * detail::real_inner(a_mat, cand), cand_eigvals, slacks_of(cand));
                const bool interior = std::isfinite(phi_cand);
                if (interior && (!check_descent || phi_cand < phi_now)) {
                    w = cand;
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted)
                break; // stalled at numerical precision; certificate check decides
        }

        // Two duality certificates. The path-following estimate 1/(t s_i)
        // tracks t but inherits the centering error; the least-squares
        // refinement is feasible by construction and snaps to the exact
        // dual once W is near the optimum. The refined one is returned; the
        // path one measures whether growing t still helps.
        const double primal = detail::real_inner(problem.objective.matrix(), w);
        const std::vector<double> slacks = slacks_of(w);
        double gap_path = -primal;
        for (std::size_t i = 0; i < m; ++i)
            gap_path += a_scale / (t * slacks[i]);

        std::vector<double> y_norm;
        if (!detail::refine_dual(a_mat, b_mats, w, y_norm)) {
            y_norm.resize(m);
            for (std::size_t i = 0; i < m; ++i)
                y_norm[i] = 1.0 / (t * slacks[i]);
        }
        std::vector<double> dual(m, 0.0);
        double dual_obj = 0;
        for (std::size_t i = 0; i < m; ++i) {
            dual_obj += a_scale * y_norm[i]; // normalized bounds are all 1
            dual[i] = a_scale * y_norm[i] / b_scale[i];
        }
        gap = dual_obj - primal;

        if (gap > -opts.gap_tol_abs && gap < best_gap) {
            best_gap = gap;
            best_obj = primal;
            best_w = w;
            best_dual = dual;
            best_iterations = newton_total;
        }

        if (best_gap <= opts.gap_tol_abs + opts.gap_tol_rel * std::abs(best_obj))
            break; // converged to target
        // Once t is far beyond what either certificate shows, the barrier
        // bound (n+m)/t no longer explains the measured gap: a floating
        // point floor. A few extra doublings for margin, then stop.
        const double theoretical = static_cast<double>(n + m) * a_scale / t;
        const double tracking = std::min(best_gap, std::max(gap_path, 0.0));
        if (theoretical <= 0.1 * tracking)
            ++outers_without_progress;
        else
            outers_without_progress = 0;
        if (outers_without_progress >= 3)
            break;
        t *= opts.t_growth;
    }

    if (best_gap <= opts.gap_limit_rel * (1.0 + std::abs(best_obj))) {
        sol.W = HermitianMatrix<double>(best_w);
        sol.objective_value = best_obj;
        sol.duality_gap = best_gap;
        sol.dual = best_dual;
        sol.iterations = best_iterations;
        sol.status = SdpStatus::optimal;
        return sol;
    }

    std::ostringstream msg;
    msg << "sdp solve: no convergence (" << newton_total
        << " Newton iterations), best duality gap " << best_gap;
    throw std::runtime_error(msg.str());
}

struct RankOneExtraction {
    CVec vector;
    double defect = 0;      // second eigenvalue over first; 0 for exact rank one
    bool degenerate = false; // true when W was (numerically) zero
};

/// Principal rank-one component sqrt(lambda_1) v_1 of a PSD solution
/// matrix. When target_norm_sq > 0 the result is scaled down if needed so
/// its squared norm does not exceed that budget (the trace constraint of
/// the original problem); trace-form constraints with PSD matrices are
/// automatically satisfied by the principal component.
inline RankOneExtraction extract_rank_one(const SdpSolution& sol, double target_norm_sq = 0) {
    const std::size_t n = sol.W.dim();
    const auto eig = hermitian_eig(sol.W);
    const double lambda1 = eig.values.back();
    RankOneExtraction out;
    out.vector.assign(n, cx<double>(0));
    if (lambda1 <= 0) {
        out.degenerate = true;
        return out;
    }
    const double lambda2 = n >= 2 ? std::max(0.0, eig.values[n - 2]) : 0.0;
    out.defect = lambda2 / lambda1;
    for (std::size_t i = 0; i < n; ++i)
        out.vector[i] = std::sqrt(lambda1) * eig.vectors(i, n - 1);
    if (target_norm_sq > 0) {
        const double nsq = vnorm(out.vector) * vnorm(out.vector);
        if (nsq > target_norm_sq)
            out.vector = vscale(out.vector, cx<double>(std::sqrt(target_norm_sq / nsq), 0));
    }
    return out;
}

} // namespace cogbeam

#endif // COGBEAM_SDP_HPP
