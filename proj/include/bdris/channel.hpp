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

#ifndef BDRIS_CHANNEL_HPP
#define BDRIS_CHANNEL_HPP

#include "errors.hpp"
#include "linalg.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

namespace bdris
{

enum class array_kind
{
    linear,
    planar
};

/// Uniform array layout. A linear array uses n_h elements along one axis; a planar
/// array has n_h horizontal by n_v vertical elements. Spacing is in wavelengths.
struct array_geometry
{
    array_kind kind = array_kind::linear;
    int n_h = 1;
    int n_v = 1;
    double spacing_wl = 0.5;

    static array_geometry linear(int n, double spacing_wl)
    {
        array_geometry g{array_kind::linear, n, 1, spacing_wl};
        g.validate();
        return g;
    }

    static array_geometry planar(int m_h, int m_v, double spacing_wl)
    {
        array_geometry g{array_kind::planar, m_h, m_v, spacing_wl};
        g.validate();
        return g;
    }

    // Factor pair of m closest to square, with m_h >= m_v.
    static array_geometry planar_for(int m, double spacing_wl)
    {
        if (m < 1)
            throw invalid_argument("planar_for: element count must be >= 1");
        int m_v = static_cast<int>(std::sqrt(static_cast<double>(m)));
        while (m_v > 1 && m % m_v != 0)
            --m_v;
        return planar(m / m_v, m_v, spacing_wl);
    }

    int size() const { return n_h * n_v; }

    void validate() const
    {
        if (n_h < 1 || n_v < 1)
            throw invalid_argument("array_geometry: element counts must be >= 1");
        if (kind == array_kind::linear && n_v != 1)
            throw invalid_argument("array_geometry: linear array must have a single row");
        if (!(spacing_wl > 0.0) || !std::isfinite(spacing_wl))
            throw invalid_argument("array_geometry: spacing must be positive");
    }
};

/// Element m is exp(j 2 pi spacing m sin(azimuth)).
inline cvec ula_steering(int n, double spacing_wl, double azimuth)
{
    if (n < 1)
        throw invalid_argument("ula_steering: element count must be >= 1");
    if (!std::isfinite(azimuth) || !std::isfinite(spacing_wl))
        throw invalid_argument("ula_steering: non-finite angle or spacing");
    const double step = 2.0 * std::numbers::pi * spacing_wl * std::sin(azimuth);
    cvec a(n);
    for (int m = 0; m < n; ++m)
        a(m) = std::polar(1.0, step * m);
    return a;
}

/// Planar response, separable as kron(vertical, horizontal): element index q * n_h + p
/// carries phase 2 pi d (p sin(az) cos(el) + q sin(el)).
inline cvec upa_steering(const array_geometry &geometry, double azimuth, double elevation)
{
    if (geometry.kind != array_kind::planar)
        throw invalid_argument("upa_steering: planar geometry required");
    geometry.validate();
    if (!std::isfinite(azimuth) || !std::isfinite(elevation))
        throw invalid_argument("upa_steering: non-finite angle");
    const double k = 2.0 * std::numbers::pi * geometry.spacing_wl;
    const double step_h = k * std::sin(azimuth) * std::cos(elevation);
    const double step_v = k * std::sin(elevation);
    cvec a(geometry.size());
    for (int q = 0; q < geometry.n_v; ++q)
        for (int p = 0; p < geometry.n_h; ++p)
            a(q * geometry.n_h + p) = std::polar(1.0, step_h * p + step_v * q);
    return a;
}

// Linear arrays only see the azimuth.
inline cvec array_response(const array_geometry &geometry, double azimuth, double elevation)
{
    if (geometry.kind == array_kind::linear)
        return ula_steering(geometry.n_h, geometry.spacing_wl, azimuth);
    return upa_steering(geometry, azimuth, elevation);
}

inline double kappa_from_db(double k_db)
{
    return std::pow(10.0, k_db / 10.0);
}

struct channel_config
{
    int n_r = 16;
    int n_t = 16;
    int m = 16;
    double kappa = kappa_from_db(3.0);
    int n_clusters = 20;
    array_geometry rx = array_geometry::linear(16, 0.5);
    array_geometry tx = array_geometry::linear(16, 0.5);
    array_geometry ris = array_geometry::planar_for(16, 0.25);

    // ULAs with half-wavelength spacing at both ends, quarter-wavelength UPA at the surface.
    static channel_config standard(int n_r, int n_t, int m, double k_factor_db = 3.0, int n_clusters = 20)
    {
        channel_config c;
        c.n_r = n_r;
        c.n_t = n_t;
        c.m = m;
        c.kappa = kappa_from_db(k_factor_db);
        c.n_clusters = n_clusters;
        c.rx = array_geometry::linear(n_r, 0.5);
        c.tx = array_geometry::linear(n_t, 0.5);
        c.ris = array_geometry::planar_for(m, 0.25);
        return c;
    }

    void validate() const
    {
        if (n_r < 1 || n_t < 1 || m < 1)
            throw invalid_argument("channel_config: dimensions must be >= 1");
        if (!(kappa >= 0.0))
            throw invalid_argument("channel_config: Rician factor must be >= 0");
        if (n_clusters < 1)
            throw invalid_argument("channel_config: need at least one cluster");
        rx.validate();
        tx.validate();
        ris.validate();
        if (rx.size() != n_r || tx.size() != n_t || ris.size() != m)
            throw invalid_argument("channel_config: array sizes disagree with dimensions");
    }
};

/// One draw of the surface-to-receiver channel f (n_r x m) and the
/// transmitter-to-surface channel g (n_t x m).
struct channel_realization
{
    cmat f;
    cmat g;
    std::uint64_t seed = 0;
    double rician_kappa = 0.0;
    int n_clusters = 0;
};

namespace detail
{

struct angle_pair
{
    double azimuth;
    double elevation;
};

inline angle_pair draw_angles(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> u(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    const double az = u(rng);
    const double el = u(rng);
    return {az, el};
}

// Rician mix of one LOS ray and n_clusters equal-power single-ray clusters.
// Both parts have unit average entry power before mixing.
inline cmat draw_link(const array_geometry &array, const array_geometry &ris, double kappa, int n_clusters,
                      std::mt19937_64 &rng)
{
    const angle_pair los_array = draw_angles(rng);
    const angle_pair los_ris = draw_angles(rng);
    const cmat los = array_response(array, los_array.azimuth, los_array.elevation) *
                     array_response(ris, los_ris.azimuth, los_ris.elevation).adjoint();

    std::normal_distribution<double> normal(0.0, 1.0);
    const double cluster_std = std::sqrt(0.5 / n_clusters);
    cmat nlos = cmat::Zero(array.size(), ris.size());
    for (int c = 0; c < n_clusters; ++c)
    {
        const angle_pair at_array = draw_angles(rng);
        const angle_pair at_ris = draw_angles(rng);
        const double re = normal(rng);
        const double im = normal(rng);
        const cplx gain(cluster_std * re, cluster_std * im);
        nlos.noalias() += gain * array_response(array, at_array.azimuth, at_array.elevation) *
                          array_response(ris, at_ris.azimuth, at_ris.elevation).adjoint();
    }

    const double w_los = std::sqrt(kappa / (1.0 + kappa));
    const double w_nlos = std::sqrt(1.0 / (1.0 + kappa));
    return w_los * los + w_nlos * nlos;
}

} // namespace detail

/// Draws (f, g) deterministically from `seed`. f is drawn first (LOS ray, then
/// clusters), then g, each with independent angles.
inline channel_realization generate_channel_pair(const channel_config &config, std::uint64_t seed)
{
    config.validate();
    std::mt19937_64 rng(seed);
    channel_realization out;
    out.f = detail::draw_link(config.rx, config.ris, config.kappa, config.n_clusters, rng);
    out.g = detail::draw_link(config.tx, config.ris, config.kappa, config.n_clusters, rng);
    out.seed = seed;
    out.rician_kappa = config.kappa;
    out.n_clusters = config.n_clusters;
    return out;
}

/// Replaces the nonzero singular values of `a` by their root-mean-square, keeping both
/// singular subspaces and the Frobenius norm.
inline cmat to_semi_unitary(const cmat &a)
{
    if (!all_finite(a))
        throw invalid_argument("to_semi_unitary: non-finite entries");
    if (a.size() == 0 || a.norm() == 0.0)
        throw degenerate_input("to_semi_unitary: input has no nonzero singular value");

    Eigen::JacobiSVD<cmat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const rvec &s = svd.singularValues();
    const Eigen::Index rank = numerical_rank(s);
    if (rank == 0)
        throw degenerate_input("to_semi_unitary: input has no nonzero singular value");

    const double level = std::sqrt(s.head(rank).squaredNorm() / static_cast<double>(rank));
    return level * svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
}

} // namespace bdris

#endif // BDRIS_CHANNEL_HPP
