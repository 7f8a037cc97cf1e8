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

#ifndef BDRIS_CONFIGURATOR_HPP
#define BDRIS_CONFIGURATOR_HPP

#include "capacity.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "link.hpp"
#include "reflection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

namespace bdris
{

/// Capacity-optimal reflection matrix V_F V_G^H: pairs the i-th strongest right
/// singular direction of F with the i-th strongest of G.
inline reflection_matrix optimal_theta(const link_decomposition &link)
{
    return reflection_matrix::certify(link.f.v * link.g.v.adjoint());
}

inline reflection_matrix optimal_theta(const cmat &f, const cmat &g)
{
    return optimal_theta(link_decomposition::of(f, g));
}

/// Q = U_G diag(q) U_G^H with q zero-padded to N_t.
inline cmat optimal_covariance(const cmat &u_g, const power_allocation &allocation)
{
    const Eigen::Index n_t = u_g.rows();
    if (u_g.cols() != n_t)
        throw invalid_argument("optimal_covariance: U_G must be square");
    if (static_cast<Eigen::Index>(allocation.powers.size()) > n_t)
        throw invalid_argument("optimal_covariance: more powers than transmit antennas");
    rvec q = rvec::Zero(n_t);
    for (std::size_t i = 0; i < allocation.powers.size(); ++i)
        q(static_cast<Eigen::Index>(i)) = allocation.powers[i];
    return u_g * q.asDiagonal() * u_g.adjoint();
}

inline cmat optimal_covariance(const link_decomposition &link, const power_allocation &allocation)
{
    return optimal_covariance(link.g.u, allocation);
}

/// Pairing for the high-SNR family V_F blockdiag(P, tail) V_G^H. perm[i] = j routes
/// the i-th direction of F to the j-th direction of G (0-based). An empty tail
/// means identity.
struct permutation_spec
{
    std::vector<int> perm;
    std::optional<cmat> tail;

    static permutation_spec identity(int k)
    {
        permutation_spec s;
        s.perm.resize(static_cast<std::size_t>(k));
        std::iota(s.perm.begin(), s.perm.end(), 0);
        return s;
    }

    template <class Rng>
    static permutation_spec random(int k, Rng &rng)
    {
        permutation_spec s = identity(k);
        std::shuffle(s.perm.begin(), s.perm.end(), rng);
        return s;
    }

    void validate(Eigen::Index m) const
    {
        const auto k = static_cast<Eigen::Index>(perm.size());
        if (k > m)
            throw invalid_argument("permutation_spec: permutation longer than M");
        std::vector<bool> seen(perm.size(), false);
        for (int p : perm)
        {
            if (p < 0 || p >= static_cast<int>(perm.size()) || seen[static_cast<std::size_t>(p)])
                throw invalid_argument("permutation_spec: not a bijection");
            seen[static_cast<std::size_t>(p)] = true;
        }
        if (tail)
        {
            if (tail->rows() != m - k || tail->cols() != m - k)
                throw invalid_argument("permutation_spec: tail must be (M-K) x (M-K)");
            if (m - k > 0 && !(unitarity_residual(*tail) <= membership_tolerance(m - k)))
                throw invalid_argument("permutation_spec: tail is not unitary");
        }
    }
};

inline reflection_matrix permuted_theta(const link_decomposition &link, const permutation_spec &spec)
{
    spec.validate(link.m);
    const Eigen::Index k = static_cast<Eigen::Index>(spec.perm.size());
    cmat p = cmat::Zero(link.m, link.m);
    for (Eigen::Index i = 0; i < k; ++i)
        p(i, spec.perm[static_cast<std::size_t>(i)]) = 1.0;
    if (spec.tail)
        p.bottomRightCorner(link.m - k, link.m - k) = *spec.tail;
    else
        p.bottomRightCorner(link.m - k, link.m - k).setIdentity();
    return reflection_matrix::certify(link.f.v * p * link.g.v.adjoint());
}

inline reflection_matrix permuted_theta(const cmat &f, const cmat &g, const permutation_spec &spec)
{
    return permuted_theta(link_decomposition::of(f, g), spec);
}

namespace detail
{

inline Eigen::Index energy_count(const rvec &s, double fraction)
{
    const double total = s.sum();
    if (!(total > 0.0))
        throw degenerate_input("k95: channel has no nonzero singular value");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
    {
        acc += s(i);
        // relative slack absorbs the rounding in the running sum
        if (acc >= fraction * total * (1.0 - 1e-12))
            return i + 1;
    }
    return s.size();
}

} // namespace detail

/// Smallest K whose K largest singular values carry at least 95% of the singular
/// value sum, for F and G simultaneously.
inline Eigen::Index k95(const link_decomposition &link)
{
    return std::max(detail::energy_count(link.f.s, 0.95), detail::energy_count(link.g.s, 0.95));
}

inline Eigen::Index k95(const cmat &f, const cmat &g)
{
    return std::max(detail::energy_count(singular_values(f), 0.95), detail::energy_count(singular_values(g), 0.95));
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// R's diagonal moved into Q.
template <class Rng>
cmat haar_unitary_matrix(Eigen::Index m, Rng &rng)
{
    if (m < 1)
        throw invalid_argument("haar_unitary: M must be >= 1");
    std::normal_distribution<double> normal(0.0, 1.0);
    cmat z(m, m);
    for (Eigen::Index c = 0; c < m; ++c)
        for (Eigen::Index r = 0; r < m; ++r)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = cplx(re, im) * std::sqrt(0.5);
        }
    Eigen::HouseholderQR<cmat> qr(z);
    cmat q = qr.householderQ();
    const cmat &r = qr.matrixQR();
    for (Eigen::Index i = 0; i < m; ++i)
    {
        const double mag = std::abs(r(i, i));
        const cplx phase = mag > 0.0 ? r(i, i) / mag : cplx(1.0, 0.0);
        q.col(i) *= phase;
    }
    return q;
}

inline reflection_matrix haar_unitary(Eigen::Index m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return reflection_matrix::certify(haar_unitary_matrix(m, rng));
}

/// Diagonal phases that make v_F1^H diag(exp(j theta)) v_G1 add up coherently.
inline rvec aligned_phases(const link_decomposition &link)
{
    rvec phases(link.m);
    for (Eigen::Index i = 0; i < link.m; ++i)
        phases(i) = std::arg(link.f.v(i, 0)) - std::arg(link.g.v(i, 0));
    return phases;
}

struct diagonal_baseline_result
{
    reflection_matrix theta;
    double initial_bits;
    double final_bits;
};

/// Conventional (diagonal) surface configured by cyclic coordinate ascent.
///
/// Starts from aligned_phases(), theta_m = arg([v_F1]_m) - arg([v_G1]_m). Each
/// sweep visits every element and tries `grid_size` equispaced phases, keeping a
/// candidate only if it strictly increases the waterfilled capacity, so the
/// capacity never decreases.
inline diagonal_baseline_result diagonal_ris_baseline(const cmat &f, const cmat &g, double q_max, double n0,
                                                      int grid_size = 64, int sweeps = 5)
{
    if (grid_size < 2)
        throw invalid_argument("diagonal_ris_baseline: grid_size must be >= 2");
    if (sweeps < 1)
        throw invalid_argument("diagonal_ris_baseline: sweeps must be >= 1");
    const link_decomposition link = link_decomposition::of(f, g);
    const Eigen::Index m = link.m;
    rvec phases = aligned_phases(link);

    // H = sum_m exp(j theta_m) f_m g_m^H
    std::vector<cmat> terms;
    terms.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
        terms.emplace_back(f.col(i) * g.col(i).adjoint());

    cmat h = cmat::Zero(f.rows(), g.rows());
    for (Eigen::Index i = 0; i < m; ++i)
        h += std::polar(1.0, phases(i)) * terms[static_cast<std::size_t>(i)];

    const double initial = capacity_for_channel(h, q_max, n0).capacity_bits;
    double best = initial;
    for (int sweep = 0; sweep < sweeps; ++sweep)
    {
        for (Eigen::Index i = 0; i < m; ++i)
        {
            const cmat &term = terms[static_cast<std::size_t>(i)];
            const cmat rest = h - std::polar(1.0, phases(i)) * term;
            double best_phase = phases(i);
            for (int k = 0; k < grid_size; ++k)
            {
                const double phase = 2.0 * std::numbers::pi * k / grid_size;
                const double c = capacity_for_channel(rest + std::polar(1.0, phase) * term, q_max, n0).capacity_bits;
                if (c > best)
                {
                    best = c;
                    best_phase = phase;
                }
            }
            phases(i) = best_phase;
            h = rest + std::polar(1.0, best_phase) * term;
        }
    }

    reflection_matrix theta = reflection_matrix::diagonal(phases);
    const double final_bits = capacity_with_theta(f, theta, g, q_max, n0).capacity_bits;
    return {std::move(theta), initial, final_bits};
}

} // namespace bdris

#endif // BDRIS_CONFIGURATOR_HPP
