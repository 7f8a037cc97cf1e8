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

#ifndef BDRIS_VERIFY_HPP
#define BDRIS_VERIFY_HPP

#include "capacity.hpp"
#include "channel.hpp"
#include "configurator.hpp"
#include "harness.hpp"
#include "linalg.hpp"
#include "oracle.hpp"
#include "seeding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace bdris
{

struct verify_options
{
    std::uint64_t seed = 20240901;
    // Negative control: scale the optimal reflection matrix so that its unitarity
    // residual is about 1e-2 before the membership check sees it.
    bool corrupt_theta = false;
};

/// One check. `observed` is the worst value seen; it passes when it lies on the
/// right side of `threshold` (below for residuals, above for margins).
struct check_result
{
    std::string name;
    bool passed = false;
    double observed = 0.0;
    double threshold = 0.0;
    bool lower_is_better = true;
};

struct verify_summary
{
    std::vector<check_result> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const check_result &c) { return c.passed; });
    }
};

namespace detail
{

inline check_result below(std::string name, double observed, double threshold)
{
    return {std::move(name), observed <= threshold, observed, threshold, true};
}

inline check_result above(std::string name, double observed, double threshold)
{
    return {std::move(name), observed >= threshold, observed, threshold, false};
}

inline channel_realization verify_channel(int n_r, int n_t, int m, std::uint64_t seed)
{
    return generate_channel_pair(channel_config::standard(n_r, n_t, m), seed);
}

} // namespace detail

/// Desk-scale run of every property check; deterministic for a given seed.
inline verify_summary run_verify(const verify_options &opts = {})
{
    using detail::above;
    using detail::below;
    verify_summary out;
    const auto seed_for = [&](std::uint64_t tag, std::uint64_t i) { return derive_seed({opts.seed, tag, i}); };

    // membership of every constructed reflection matrix
    {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 10; ++i)
        {
            const auto ch = detail::verify_channel(4, 4, 8, seed_for(1, i));
            const link_decomposition link = link_decomposition::of(ch.f, ch.g);
            cmat opt = optimal_theta(link).matrix();
            if (opts.corrupt_theta && i == 0)
                opt *= 1.0 + 1e-2 / (2.0 * std::sqrt(static_cast<double>(opt.rows())));
            std::mt19937_64 rng(seed_for(2, i));
            const cmat perm = permuted_theta(link, permutation_spec::random(static_cast<int>(link.k()), rng)).matrix();
            const cmat haar = haar_unitary(link.m, seed_for(3, i)).matrix();
            const cmat diag = diagonal_ris_baseline(ch.f, ch.g, 1.0, 1.0, 16, 1).theta.matrix();
            for (const cmat *t : std::initializer_list<const cmat *>{&opt, &perm, &haar, &diag})
                worst = std::max(worst, unitarity_residual(*t) / std::sqrt(static_cast<double>(t->rows())));
        }
        out.checks.push_back(below("membership", worst, 1e-10));
    }

    // closed-form optimum versus Haar samples
    {
        double worst = std::numeric_limits<double>::infinity();
        for (std::uint64_t i = 0; i < 20; ++i)
        {
            const auto ch = detail::verify_channel(4, 4, 8, seed_for(4, i));
            worst = std::min(worst, dominance_check(ch.f, ch.g, 1.0, 1.0, 50, seed_for(5, i)).min_margin);
        }
        out.checks.push_back(above("dominance_min_margin", worst, -1e-9));
    }

    // closed form equals log-det at (Theta*, Q*); product singular values pair up
    {
        double consistency = 0.0;
        double pairing = 0.0;
        std::mt19937_64 rng(seed_for(6, 0));
        std::uniform_int_distribution<int> dim(2, 6);
        std::uniform_int_distribution<int> elements(1, 10);
        std::uniform_real_distribution<double> log_n0(-2.0, 2.0);
        for (std::uint64_t i = 0; i < 100; ++i)
        {
            const int n_r = dim(rng), n_t = dim(rng), m = elements(rng);
            const double n0 = std::pow(10.0, log_n0(rng));
            const auto ch = detail::verify_channel(n_r, n_t, m, seed_for(7, i));
            const link_decomposition link = link_decomposition::of(ch.f, ch.g);
            const capacity_report report = capacity_closed_form(link, 1.0, n0);
            const reflection_matrix theta = optimal_theta(link);
            const cmat q = optimal_covariance(link, report.allocation);
            const double logdet = capacity_logdet(effective_channel(ch.f, theta, ch.g), q, n0);
            consistency =
                std::max(consistency, std::abs(report.capacity_bits - logdet) / (1.0 + report.capacity_bits));

            const rvec s_h = singular_values(effective_channel(ch.f, theta, ch.g));
            for (Eigen::Index k = 0; k < link.k(); ++k)
            {
                const double expected = link.f.s(k) * link.g.s(k);
                if (expected > rank_floor * link.f.s(0) * link.g.s(0))
                    pairing = std::max(pairing, std::abs(s_h(k) - expected) / expected);
            }
        }
        out.checks.push_back(below("closed_form_vs_logdet", consistency, 1e-9));
        out.checks.push_back(below("singular_value_pairing", pairing, 1e-8));
    }

    // waterfilling optimality conditions, with ties and zeros
    {
        double worst = 0.0;
        std::mt19937_64 rng(seed_for(8, 0));
        std::uniform_int_distribution<int> len(1, 8);
        std::uniform_real_distribution<double> log_gain(-3.0, 3.0);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int i = 0; i < 200; ++i)
        {
            std::vector<double> gains(static_cast<std::size_t>(len(rng)));
            for (double &g : gains)
                g = std::pow(10.0, log_gain(rng));
            gains.back() = unit(rng) < 0.3 ? 0.0 : gains.back();
            if (gains.size() > 1 && unit(rng) < 0.3)
                gains[1] = gains[0];
            if (std::all_of(gains.begin(), gains.end(), [](double g) { return g == 0.0; }))
                gains[0] = 1.0;
            const double q_max = std::pow(10.0, 2.0 * unit(rng) - 1.0);
            const auto alloc = waterfill(gains, q_max, 1.0);
            const auto kkt = check_kkt(gains, alloc, 1.0);
            worst = std::max({worst, kkt.sum_residual, kkt.level_residual, kkt.inactive_violation});
        }
        out.checks.push_back(below("waterfill_kkt", worst, 1e-10));
    }

    // high-SNR permutation freedom
    {
        double worst = 0.0;
        const double n0 = noise_power_from_snr(40.0, 1.0);
        for (std::uint64_t i = 0; i < 20; ++i)
        {
            const auto ch = detail::verify_channel(8, 8, 16, seed_for(9, i));
            const link_decomposition link = link_decomposition::of(ch.f, ch.g);
            const double opt = capacity_closed_form(link, 1.0, n0).capacity_bits;
            std::mt19937_64 rng(seed_for(10, i));
            const auto spec = permutation_spec::random(static_cast<int>(k95(link)), rng);
            const double perm = capacity_with_theta(ch.f, permuted_theta(link, spec), ch.g, 1.0, n0).capacity_bits;
            worst = std::max(worst, (opt - perm) / opt);
        }
        out.checks.push_back(below("permuted_gap_40db", worst, 1e-3));
    }

    // any reflection matrix is optimal for semi-unitary channels when M <= max(N_r, N_t)
    {
        struct regime
        {
            const char *name;
            int n_r, n_t, m;
        };
        for (const regime r : {regime{"semi_unitary_spread_case1", 4, 4, 2}, regime{"semi_unitary_spread_case2", 6, 3, 4},
                               regime{"semi_unitary_spread_case3", 3, 6, 4}})
        {
            double worst = 0.0;
            for (std::uint64_t i = 0; i < 5; ++i)
                worst = std::max(worst, semi_unitary_equivalence_check(r.n_r, r.n_t, r.m, 1.0, 1.0, 20,
                                                                       seed_for(11, i * 16 + r.m + r.n_r)));
            out.checks.push_back(below(r.name, worst, 1e-9));
        }
    }

    // log-majorization inequality and the singular-value product identity
    {
        double slack = std::numeric_limits<double>::infinity();
        double identity = 0.0;
        std::mt19937_64 rng(seed_for(12, 0));
        std::normal_distribution<double> normal(0.0, 1.0);
        const int ps[] = {2, 3, 5};
        for (int i = 0; i < 30; ++i)
        {
            const int p = ps[i % 3];
            const int m = 2 + (i / 3) % 3;
            std::vector<cmat> mats;
            for (int k = 0; k < p; ++k)
            {
                cmat a(m, m);
                for (Eigen::Index c = 0; c < m; ++c)
                    for (Eigen::Index r = 0; r < m; ++r)
                    {
                        const double re = normal(rng);
                        const double im = normal(rng);
                        a(r, c) = cplx(re, im) * std::sqrt(0.5);
                    }
                mats.push_back(std::move(a));
            }
            for (int j = 1; j <= m; ++j)
            {
                const lemma_check lc = check_lemma1(mats, j);
                slack = std::min(slack, lc.slack);
                if (j == m)
                    identity = std::max(identity, lc.product_equality_residual);
            }
        }
        out.checks.push_back(above("lemma_slack", slack, -1e-9));
        out.checks.push_back(below("singular_value_product_identity", identity, 1e-8));
    }

    // arbitrary unitary on the unused dimensions keeps the optimum
    {
        double worst = 0.0;
        int constructed = 0;
        for (std::uint64_t i = 0; i < 10; ++i)
        {
            const auto ch = detail::verify_channel(4, 4, 8, seed_for(13, i));
            const link_decomposition link = link_decomposition::of(ch.f, ch.g);
            const rvec gains = link.stream_gains();
            // total power just short of waking the weakest stream
            const double n0 = 1.0;
            double threshold = 0.0;
            const Eigen::Index last = link.k() - 1;
            if (last < 1 || !(gains(last) > 0.0))
                continue;
            for (Eigen::Index j = 0; j < last; ++j)
                threshold += n0 / gains(last) - n0 / gains(j);
            const double q_max = 0.5 * threshold;
            const capacity_report best = capacity_closed_form(link, q_max, n0);
            const auto active = static_cast<int>(best.allocation.active_streams());
            if (active >= link.k())
                continue;
            ++constructed;
            for (std::uint64_t u = 0; u < 5; ++u)
            {
                permutation_spec spec = permutation_spec::identity(active);
                spec.tail = haar_unitary(link.m - active, seed_for(14, i * 8 + u)).matrix();
                const double c = capacity_with_theta(ch.f, permuted_theta(link, spec), ch.g, q_max, n0).capacity_bits;
                worst = std::max(worst, std::abs(c - best.capacity_bits));
            }
        }
        if (constructed == 0)
            worst = std::numeric_limits<double>::infinity();
        out.checks.push_back(below("non_uniqueness_gap", worst, 1e-10));
    }

    // capacity at Theta* does not depend on which SVD routine produced it
    {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 20; ++i)
        {
            const auto ch = detail::verify_channel(4, 6, 8, seed_for(15, i));
            const auto a = link_decomposition::of(ch.f, ch.g, svd_method::jacobi);
            const auto b = link_decomposition::of(ch.f, ch.g, svd_method::divide_and_conquer);
            const double ca = capacity_with_theta(ch.f, optimal_theta(a), ch.g, 1.0, 0.1).capacity_bits;
            const double cb = capacity_with_theta(ch.f, optimal_theta(b), ch.g, 1.0, 0.1).capacity_bits;
            worst = std::max(worst, std::abs(ca - cb));
        }
        out.checks.push_back(below("svd_route_invariance", worst, 1e-10));
    }

    return out;
}

/// One line per check, `check=<name> status=PASS|FAIL observed=<x> threshold=<t>`,
/// followed by a summary line.
inline void print_verify_report(std::ostream &os, const verify_summary &summary)
{
    int failed = 0;
    for (const check_result &c : summary.checks)
    {
        failed += c.passed ? 0 : 1;
        os << "check=" << c.name << " status=" << (c.passed ? "PASS" : "FAIL") << " observed=" << format_double(c.observed)
           << " threshold=" << (c.lower_is_better ? "<=" : ">=") << format_double(c.threshold) << '\n';
    }
    os << "summary status=" << (failed == 0 ? "PASS" : "FAIL") << " failed=" << failed
       << " total=" << summary.checks.size() << '\n';
}

} // namespace bdris

#endif // BDRIS_VERIFY_HPP
