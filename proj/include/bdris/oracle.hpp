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

#ifndef BDRIS_ORACLE_HPP
#define BDRIS_ORACLE_HPP

#include "capacity.hpp"
#include "channel.hpp"
#include "configurator.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "seeding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>

namespace bdris
{

/// Both sides of the log-majorization inequality
///   sum_{i<=m} log2(1 + s_i(A_1...A_p)) <= sum_{i<=m} log2(1 + prod_k s_i(A_k))
/// plus the relative residual of the full singular-value product identity
///   prod_i s_i(A_1...A_p) = prod_i prod_k s_i(A_k).
/// At m = M the two log sums generally differ for non-commuting factors; only the
/// product identity is exact.
struct lemma_check
{
    int m = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    double product_equality_residual = 0.0;
};

inline lemma_check check_lemma1(std::span<const cmat> matrices, int m)
{
    if (matrices.empty())
        throw invalid_argument("check_lemma1: need at least one matrix");
    const Eigen::Index size = matrices.front().rows();
    for (const cmat &a : matrices)
        if (a.rows() != size || a.cols() != size)
            throw invalid_argument("check_lemma1: all matrices must be M x M");
    if (m < 1 || m > size)
        throw invalid_argument("check_lemma1: index m out of range");

    cmat product = cmat::Identity(size, size);
    rvec factor_product = rvec::Ones(size);
    for (const cmat &a : matrices)
    {
        product = product * a;
        factor_product = factor_product.cwiseProduct(singular_values(a));
    }
    const rvec product_sv = singular_values(product);

    lemma_check out;
    out.m = m;
    for (int i = 0; i < m; ++i)
    {
        out.lhs += std::log1p(product_sv(i));
        out.rhs += std::log1p(factor_product(i));
    }
    out.lhs /= std::numbers::ln2;
    out.rhs /= std::numbers::ln2;
    out.slack = out.rhs - out.lhs;

    // compared in the log domain to avoid under/overflow of long products
    double log_ratio = 0.0;
    bool zero_product = false;
    for (Eigen::Index i = 0; i < size; ++i)
    {
        if (!(product_sv(i) > 0.0) || !(factor_product(i) > 0.0))
            zero_product = true;
        else
            log_ratio += std::log(product_sv(i)) - std::log(factor_product(i));
    }
    out.product_equality_residual = zero_product ? (factor_product.prod() == 0.0 && product_sv.prod() == 0.0 ? 0.0 : 1.0)
                                                 : std::abs(std::expm1(log_ratio));
    return out;
}

struct dominance_report
{
    int n_samples = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::uint64_t worst_seed = 0;
    double optimal_bits = 0.0;
};

/// Capacity at the closed-form optimum minus the best capacity over `n_samples`
/// Haar-random reflection matrices, each evaluated with its own waterfilled
/// covariance. Sample i uses seed derive_seed({seed, i}).
inline dominance_report dominance_check(const cmat &f, const cmat &g, double q_max, double n0, int n_samples,
                                        std::uint64_t seed)
{
    if (n_samples < 1)
        throw invalid_argument("dominance_check: n_samples must be >= 1");
    const link_decomposition link = link_decomposition::of(f, g);
    dominance_report r;
    r.n_samples = n_samples;
    r.optimal_bits = capacity_closed_form(link, q_max, n0).capacity_bits;
    for (int i = 0; i < n_samples; ++i)
    {
        const std::uint64_t s = derive_seed({seed, static_cast<std::uint64_t>(i)});
        const reflection_matrix theta = haar_unitary(link.m, s);
        const double margin = r.optimal_bits - capacity_with_theta(f, theta, g, q_max, n0).capacity_bits;
        if (margin < r.min_margin)
        {
            r.min_margin = margin;
            r.worst_seed = s;
        }
    }
    return r;
}

/// Draws a standard channel pair, flattens both to semi-unitary, and returns the
/// spread (max - min) of waterfilled capacity over `n_thetas` Haar reflection
/// matrices plus the closed-form optimum. Only meaningful for M <= max(N_r, N_t).
inline double semi_unitary_equivalence_check(int n_r, int n_t, int m, double q_max, double n0, int n_thetas,
                                             std::uint64_t seed)
{
    if (m > std::max(n_r, n_t))
        throw out_of_regime("semi_unitary_equivalence_check: requires M <= max(N_r, N_t)");
    if (n_thetas < 0)
        throw invalid_argument("semi_unitary_equivalence_check: n_thetas must be >= 0");

    const channel_realization ch = generate_channel_pair(channel_config::standard(n_r, n_t, m), seed);
    const cmat f = to_semi_unitary(ch.f);
    const cmat g = to_semi_unitary(ch.g);
    const link_decomposition link = link_decomposition::of(f, g);

    double lo = capacity_with_theta(f, optimal_theta(link), g, q_max, n0).capacity_bits;
    double hi = lo;
    for (int i = 0; i < n_thetas; ++i)
    {
        const reflection_matrix theta = haar_unitary(m, derive_seed({seed, 0x5e11u, static_cast<std::uint64_t>(i)}));
        const double c = capacity_with_theta(f, theta, g, q_max, n0).capacity_bits;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return hi - lo;
}

} // namespace bdris

#endif // BDRIS_ORACLE_HPP
