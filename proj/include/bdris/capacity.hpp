// SPDX-License-Identifier: Apache-2.0
//
// bdris: capacity-optimal beyond-diagonal RIS configuration for MIMO links
// Copyright (C) 2026 The bdris authors
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

#ifndef BDRIS_CAPACITY_HPP
#define BDRIS_CAPACITY_HPP

#include "errors.hpp"
#include "linalg.hpp"
#include "link.hpp"
#include "reflection.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace bdris
{

/// Per-stream transmit powers in the order of the gains they were computed for.
struct power_allocation
{
    std::vector<double> powers;
    double q_max = 0.0;
    double water_level = 0.0;

    std::size_t active_streams() const
    {
        return static_cast<std::size_t>(std::count_if(powers.begin(), powers.end(), [](double q) { return q > 0.0; }));
    }
};

struct capacity_report
{
    double capacity_bits = 0.0;
    std::vector<double> stream_gains;
    power_allocation allocation;
    Eigen::Index k = 0;
};

/// H = F * Theta * G^H
inline cmat effective_channel(const cmat &f, const reflection_matrix &theta, const cmat &g)
{
    if (f.cols() != theta.size() || g.cols() != theta.size())
        throw invalid_argument("effective_channel: F, Theta and G dimensions disagree");
    return f * theta.matrix() * g.adjoint();
}

/// Waterfilling over `gains` with the exact active-set method: with gains sorted in
/// decreasing order, take the largest k whose level mu_k = (q_max + sum_{i<=k} N0/g_i)/k
/// still covers N0/g_k. Zero gains receive no power.
inline power_allocation waterfill(std::span<const double> gains, double q_max, double n0)
{
    if (!(q_max > 0.0) || !std::isfinite(q_max))
        throw invalid_argument("waterfill: q_max must be positive and finite");
    if (!(n0 > 0.0) || !std::isfinite(n0))
        throw invalid_argument("waterfill: noise power must be positive and finite");
    for (double g : gains)
        if (!(g >= 0.0) || !std::isfinite(g))
            throw invalid_argument("waterfill: gains must be finite and non-negative");

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < gains.size(); ++i)
        if (gains[i] > 0.0)
            order.push_back(i);
    if (order.empty())
        throw no_usable_stream("waterfill: no stream with positive gain");
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

    std::vector<double> inverse(order.size());
    for (std::size_t j = 0; j < order.size(); ++j)
        inverse[j] = n0 / gains[order[j]];

    // Work in offsets from the strongest stream's floor so that powers keep
    // precision relative to q_max even when mu itself is many orders larger.
    std::vector<double> offset(order.size());
    for (std::size_t j = 0; j < order.size(); ++j)
        offset[j] = inverse[j] - inverse[0];
    std::vector<double> prefix(order.size());
    std::partial_sum(offset.begin(), offset.end(), prefix.begin());
    double level = 0.0;
    for (std::size_t k = order.size(); k >= 1; --k)
    {
        level = (q_max + prefix[k - 1]) / static_cast<double>(k);
        if (level >= offset[k - 1])
            break;
    }

    power_allocation out;
    out.q_max = q_max;
    out.water_level = inverse[0] + level;
    out.powers.assign(gains.size(), 0.0);
    for (std::size_t j = 0; j < order.size(); ++j)
        out.powers[order[j]] = std::max(0.0, level - offset[j]);
    return out;
}

inline power_allocation waterfill(const rvec &gains, double q_max, double n0)
{
    return waterfill(std::span<const double>(gains.data(), static_cast<std::size_t>(gains.size())), q_max, n0);
}

/// Sum of log2(1 + q_i g_i / N0).
inline double rate_bits(std::span<const double> gains, std::span<const double> powers, double n0)
{
    if (gains.size() != powers.size())
        throw invalid_argument("rate_bits: gains and powers differ in length");
    double c = 0.0;
    for (std::size_t i = 0; i < gains.size(); ++i)
        c += std::log1p(powers[i] * gains[i] / n0);
    return c / std::numbers::ln2;
}

/// log2 det(I + H Q H^H / N0), evaluated through a Cholesky factor of the smaller
/// Gram form. Q is symmetrized first; eigenvalues slightly below zero (above
/// -1e-8 trace) are clipped to zero, more negative ones are rejected.
inline double capacity_logdet(const cmat &h, const cmat &q, double n0)
{
    if (q.rows() != q.cols() || h.cols() != q.rows())
        throw invalid_argument("capacity_logdet: covariance must be N_t x N_t");
    if (!(n0 > 0.0) || !std::isfinite(n0))
        throw invalid_argument("capacity_logdet: noise power must be positive and finite");
    if (h.rows() == 0 || h.cols() == 0)
        return 0.0;

    const cmat sym = 0.5 * (q + q.adjoint());
    const double trace = sym.trace().real();
    Eigen::SelfAdjointEigenSolver<cmat> eig(sym);
    if (eig.info() != Eigen::Success)
        throw numerical_error("capacity_logdet: eigensolver failed");
    const rvec &lambda = eig.eigenvalues();
    if (lambda.size() > 0 && lambda.minCoeff() < -1e-8 * std::abs(trace))
        throw invalid_covariance("capacity_logdet: covariance is not positive semi-definite");

    const rvec root = lambda.cwiseMax(0.0).cwiseSqrt();
    const cmat b = h * eig.eigenvectors() * root.asDiagonal() / std::sqrt(n0);
    const cmat gram = b.rows() <= b.cols() ? cmat(b * b.adjoint()) : cmat(b.adjoint() * b);
    const cmat a = cmat::Identity(gram.rows(), gram.cols()) + gram;

    Eigen::LLT<cmat> llt(a);
    if (llt.info() != Eigen::Success)
        throw numerical_error("capacity_logdet: Cholesky factorization failed");
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        logdet += 2.0 * std::log(llt.matrixLLT()(i, i).real());
    return std::max(0.0, logdet / std::numbers::ln2);
}

namespace detail
{

inline capacity_report report_from_gains(const rvec &gains, double q_max, double n0, Eigen::Index k)
{
    capacity_report r;
    r.k = k;
    r.stream_gains.assign(gains.data(), gains.data() + gains.size());
    r.allocation = waterfill(r.stream_gains, q_max, n0);
    r.capacity_bits = rate_bits(r.stream_gains, r.allocation.powers, n0);
    return r;
}

} // namespace detail

/// Maximum capacity over all unitary reflection matrices and covariances:
/// waterfilling over sigma_i(F)^2 sigma_i(G)^2, i = 1..min(N_t, N_r, M).
inline capacity_report capacity_closed_form(const link_decomposition &link, double q_max, double n0)
{
    return detail::report_from_gains(link.stream_gains(), q_max, n0, link.k());
}

inline capacity_report capacity_closed_form(const cmat &f, const cmat &g, double q_max, double n0)
{
    return capacity_closed_form(link_decomposition::of(f, g), q_max, n0);
}

// Relative level below which a Gram eigenvalue is indistinguishable from zero.
inline constexpr double gram_floor = 1e-14;

/// Capacity of a fixed MIMO channel with its own waterfilled covariance.
inline capacity_report capacity_for_channel(const cmat &h, double q_max, double n0)
{
    const Eigen::Index k = std::min(h.rows(), h.cols());
    rvec gains = squared_singular_values(h);
    if (gains.size() > 0 && gains(0) > 0.0)
    {
        // Gram eigenvalues carry absolute error of order eps * lambda_max
        const double cut = gram_floor * gains(0);
        for (Eigen::Index i = 0; i < gains.size(); ++i)
            if (gains(i) <= cut)
                gains(i) = 0.0;
    }
    return detail::report_from_gains(gains, q_max, n0, k);
}

inline capacity_report capacity_with_theta(const cmat &f, const reflection_matrix &theta, const cmat &g, double q_max,
                                           double n0)
{
    return capacity_for_channel(effective_channel(f, theta, g), q_max, n0);
}

/// Residuals of the waterfilling optimality conditions, each relative to the
/// quantity it is compared against.
struct kkt_certificate
{
    double sum_residual = 0.0;      // |sum q - q_max| / q_max
    double level_residual = 0.0;    // max over active |q_i + N0/g_i - mu| / mu
    double inactive_violation = 0.0; // max over inactive of (mu - N0/g_i) / mu, <= 0 when satisfied

    bool holds(double tol = 1e-10) const
    {
        return sum_residual <= tol && level_residual <= tol && inactive_violation <= tol;
    }
};

inline kkt_certificate check_kkt(std::span<const double> gains, const power_allocation &alloc, double n0)
{
    if (gains.size() != alloc.powers.size())
        throw invalid_argument("check_kkt: gains and powers differ in length");
    kkt_certificate c;
    const double total = std::accumulate(alloc.powers.begin(), alloc.powers.end(), 0.0);
    c.sum_residual = std::abs(total - alloc.q_max) / alloc.q_max;
    c.inactive_violation = -1.0;
    const double mu = alloc.water_level;
    for (std::size_t i = 0; i < gains.size(); ++i)
    {
        const double q = alloc.powers[i];
        if (q < 0.0)
            c.inactive_violation = std::max(c.inactive_violation, -q / mu);
        if (gains[i] <= 0.0)
        {
            if (q != 0.0)
                c.level_residual = std::max(c.level_residual, std::abs(q) / mu);
            continue;
        }
        const double floor_level = n0 / gains[i];
        if (q > 0.0)
            c.level_residual = std::max(c.level_residual, std::abs(q + floor_level - mu) / mu);
        else
            c.inactive_violation = std::max(c.inactive_violation, (mu - floor_level) / mu);
    }
    return c;
}

} // namespace bdris

#endif // BDRIS_CAPACITY_HPP
