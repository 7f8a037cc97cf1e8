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

#ifndef BDRIS_LINK_HPP
#define BDRIS_LINK_HPP

#include "errors.hpp"
#include "linalg.hpp"

#include <algorithm>

namespace bdris
{

/// Full SVDs of both hops of a surface-assisted link:
///   f = U_F D_F V_F^H  (n_r x m),   g = U_G D_G V_G^H  (n_t x m).
/// Computed once and shared by the configurator and the closed-form capacity so
/// that every derived quantity uses the same singular vectors.
struct link_decomposition
{
    full_svd f;
    full_svd g;
    Eigen::Index n_r = 0;
    Eigen::Index n_t = 0;
    Eigen::Index m = 0;

    static link_decomposition of(const cmat &f, const cmat &g, svd_method method = svd_method::jacobi)
    {
        if (f.cols() != g.cols())
            throw invalid_argument("link_decomposition: F and G must have the same number of columns");
        if (f.size() == 0 || g.size() == 0)
            throw invalid_argument("link_decomposition: empty channel");
        if (!all_finite(f) || !all_finite(g))
            throw invalid_argument("link_decomposition: non-finite channel entries");
        link_decomposition d;
        d.f = decompose(f, method);
        d.g = decompose(g, method);
        d.n_r = f.rows();
        d.n_t = g.rows();
        d.m = f.cols();
        return d;
    }

    // min(n_t, n_r, m)
    Eigen::Index k() const { return std::min({n_t, n_r, m}); }

    // sigma_i(F)^2 sigma_i(G)^2 for i < K; singular values under the rank floor count as zero.
    rvec stream_gains() const
    {
        const Eigen::Index kk = k();
        const double f_cut = rank_floor * f.s(0);
        const double g_cut = rank_floor * g.s(0);
        rvec gains(kk);
        for (Eigen::Index i = 0; i < kk; ++i)
        {
            const double sf = f.s(i) > f_cut ? f.s(i) : 0.0;
            const double sg = g.s(i) > g_cut ? g.s(i) : 0.0;
            gains(i) = sf * sf * sg * sg;
        }
        return gains;
    }
};

} // namespace bdris

#endif // BDRIS_LINK_HPP
