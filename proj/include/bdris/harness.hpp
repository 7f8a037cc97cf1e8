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

#ifndef BDRIS_HARNESS_HPP
#define BDRIS_HARNESS_HPP

#include "capacity.hpp"
#include "channel.hpp"
#include "configurator.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "seeding.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace bdris
{

enum class method
{
    optimal,
    permuted,
    haar_random,
    diagonal_baseline
};

inline std::string_view method_name(method m)
{
    switch (m)
    {
    case method::optimal:
        return "optimal";
    case method::permuted:
        return "permuted";
    case method::haar_random:
        return "haar_random";
    case method::diagonal_baseline:
        return "diagonal_baseline";
    }
    return "unknown";
}

inline method parse_method(std::string_view name)
{
    for (method m : {method::optimal, method::permuted, method::haar_random, method::diagonal_baseline})
        if (name == method_name(m))
            return m;
    throw config_error("unknown method '" + std::string(name) +
                       "' (expected optimal, permuted, haar_random or diagonal_baseline)");
}

inline std::vector<method> parse_methods(const std::vector<std::string> &names)
{
    std::vector<method> out;
    out.reserve(names.size());
    for (const std::string &n : names)
        out.push_back(parse_method(n));
    return out;
}

/// One Monte Carlo sweep. Defaults follow the reference simulation setup:
/// 16 x 16 antennas, 3 dB Rician factor, 20 clusters, -10 dB per-element SNR.
struct experiment_config
{
    int n_t = 16;
    int n_r = 16;
    std::vector<int> m_grid{4, 8, 16, 32, 64};
    std::vector<double> snr_db_grid{-10.0};
    double rician_k_db = 3.0;
    int n_clusters = 20;
    int n_trials = 100;
    std::vector<method> methods{method::optimal, method::diagonal_baseline};
    bool semi_unitary = false;
    std::uint64_t master_seed = 1;
    double q_max = 1.0;
    int baseline_grid = 64;
    int baseline_sweeps = 5;

    static experiment_config elements_sweep() { return {}; }

    static experiment_config snr_sweep()
    {
        experiment_config c;
        c.m_grid = {64};
        c.snr_db_grid = {-10.0, 0.0, 10.0, 20.0, 30.0, 40.0};
        c.methods = {method::optimal, method::permuted};
        return c;
    }

    static experiment_config semi_unitary_sweep()
    {
        experiment_config c;
        c.semi_unitary = true;
        return c;
    }

    void validate() const
    {
        if (n_t < 1 || n_r < 1)
            throw config_error("antenna counts must be >= 1");
        if (m_grid.empty() || snr_db_grid.empty())
            throw config_error("element and SNR grids must be non-empty");
        for (int m : m_grid)
            if (m < 1)
                throw config_error("element counts must be >= 1");
        for (double s : snr_db_grid)
            if (!std::isfinite(s))
                throw config_error("SNR values must be finite");
        if (n_trials < 1)
            throw config_error("trials must be >= 1");
        if (n_clusters < 1)
            throw config_error("clusters must be >= 1");
        if (methods.empty())
            throw config_error("at least one method is required");
        if (!(q_max > 0.0) || !std::isfinite(q_max))
            throw config_error("q_max must be positive");
        if (!std::isfinite(rician_k_db))
            throw config_error("k-factor must be finite");
        if (baseline_grid < 2 || baseline_sweeps < 1)
            throw config_error("baseline grid must be >= 2 and sweeps >= 1");
    }
};

/// Noise power giving the requested per-element SNR for unit-power channel entries.
inline double noise_power_from_snr(double snr_db, double q_max)
{
    if (!(q_max > 0.0))
        throw invalid_argument("noise_power_from_snr: q_max must be positive");
    return q_max / std::pow(10.0, snr_db / 10.0);
}

struct trial_result
{
    int m = 0;
    double snr_db = 0.0;
    method meth = method::optimal;
    int trial = 0;
    std::uint64_t seed = 0;
    double capacity_bits = 0.0;
};

// Channel seed of one trial. Independent of the SNR so every SNR point sees the same
// realizations, and of grid positions so extending a grid leaves other points alone.
inline std::uint64_t trial_seed(std::uint64_t master_seed, int m, int trial)
{
    return derive_seed({master_seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial)});
}

namespace detail
{

inline double evaluate_method(method meth, const cmat &f, const cmat &g, const link_decomposition &link, double q_max,
                              double n0, std::uint64_t seed, const experiment_config &config)
{
    switch (meth)
    {
    case method::optimal:
        return capacity_closed_form(link, q_max, n0).capacity_bits;
    case method::permuted: {
        std::mt19937_64 rng(derive_seed({seed, 0x9e47u}));
        const auto spec = permutation_spec::random(static_cast<int>(k95(link)), rng);
        return capacity_with_theta(f, permuted_theta(link, spec), g, q_max, n0).capacity_bits;
    }
    case method::haar_random:
        return capacity_with_theta(f, haar_unitary(link.m, derive_seed({seed, 0x4aa2u})), g, q_max, n0).capacity_bits;
    case method::diagonal_baseline:
        return diagonal_ris_baseline(f, g, q_max, n0, config.baseline_grid, config.baseline_sweeps).final_bits;
    }
    throw config_error("unknown method");
}

} // namespace detail

/// Runs every (M, SNR, method, trial) combination and returns rows ordered by
/// M, then SNR, then method (in config order), then trial.
inline std::vector<trial_result> run_sweep(const experiment_config &config)
{
    config.validate();
    const std::size_t n_snr = config.snr_db_grid.size();
    const std::size_t n_meth = config.methods.size();
    const auto n_trials = static_cast<std::size_t>(config.n_trials);

    std::vector<trial_result> rows;
    rows.reserve(config.m_grid.size() * n_snr * n_meth * n_trials);
    std::vector<trial_result> block(n_snr * n_meth * n_trials);

    for (int m : config.m_grid)
    {
        const channel_config cc =
            channel_config::standard(config.n_r, config.n_t, m, config.rician_k_db, config.n_clusters);
        for (std::size_t t = 0; t < n_trials; ++t)
        {
            const std::uint64_t seed = trial_seed(config.master_seed, m, static_cast<int>(t));
            channel_realization ch = generate_channel_pair(cc, seed);
            if (config.semi_unitary)
            {
                ch.f = to_semi_unitary(ch.f);
                ch.g = to_semi_unitary(ch.g);
            }
            const link_decomposition link = link_decomposition::of(ch.f, ch.g);
            for (std::size_t s = 0; s < n_snr; ++s)
            {
                const double n0 = noise_power_from_snr(config.snr_db_grid[s], config.q_max);
                for (std::size_t k = 0; k < n_meth; ++k)
                {
                    trial_result &r = block[(s * n_meth + k) * n_trials + t];
                    r.m = m;
                    r.snr_db = config.snr_db_grid[s];
                    r.meth = config.methods[k];
                    r.trial = static_cast<int>(t);
                    r.seed = seed;
                    r.capacity_bits = detail::evaluate_method(r.meth, ch.f, ch.g, link, config.q_max, n0, seed, config);
                }
            }
        }
        rows.insert(rows.end(), block.begin(), block.end());
    }
    return rows;
}

// 17 significant digits round-trip every double.
inline std::string format_double(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline constexpr std::string_view csv_header = "m,snr_db,method,trial,seed,capacity_bits";

inline void write_csv(std::ostream &os, std::span<const trial_result> rows)
{
    os << csv_header << '\n';
    for (const trial_result &r : rows)
        os << r.m << ',' << format_double(r.snr_db) << ',' << method_name(r.meth) << ',' << r.trial << ',' << r.seed
           << ',' << format_double(r.capacity_bits) << '\n';
}

struct curve_point
{
    int m = 0;
    double snr_db = 0.0;
    method meth = method::optimal;
    double mean_bits = 0.0;
    int n = 0;
};

/// Mean capacity per (M, SNR, method), in first-appearance order.
inline std::vector<curve_point> summarize(std::span<const trial_result> rows)
{
    std::vector<curve_point> out;
    std::map<std::tuple<int, double, int>, std::size_t> index;
    for (const trial_result &r : rows)
    {
        const auto key = std::make_tuple(r.m, r.snr_db, static_cast<int>(r.meth));
        auto it = index.find(key);
        if (it == index.end())
        {
            it = index.emplace(key, out.size()).first;
            out.push_back({r.m, r.snr_db, r.meth, 0.0, 0});
        }
        curve_point &p = out[it->second];
        p.mean_bits += r.capacity_bits;
        ++p.n;
    }
    for (curve_point &p : out)
        p.mean_bits /= p.n;
    return out;
}

/// Mean of one curve at (m, snr); throws if the point is missing.
inline double curve_mean(std::span<const curve_point> curve, int m, double snr_db, method meth)
{
    for (const curve_point &p : curve)
        if (p.m == m && p.snr_db == snr_db && p.meth == meth)
            return p.mean_bits;
    throw invalid_argument("curve_mean: point not in sweep");
}

namespace detail
{

inline void write_matrix(std::ostream &os, std::string_view name, const cmat &a)
{
    os << "[" << name << "] " << a.rows() << " x " << a.cols() << '\n';
    for (Eigen::Index r = 0; r < a.rows(); ++r)
    {
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            os << (c ? " " : "") << '(' << format_double(a(r, c).real()) << ',' << format_double(a(r, c).imag())
               << ')';
        os << '\n';
    }
}

inline void write_vector(std::ostream &os, std::string_view name, std::span<const double> v)
{
    os << "[" << name << "] " << v.size() << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? " " : "") << format_double(v[i]);
    os << '\n';
}

} // namespace detail

/// Text dump of one realization: channels, optimal reflection matrix and
/// covariance, singular values, gains and powers. Complex entries print as (re,im).
inline void dump_single(std::ostream &os, const channel_config &config, std::uint64_t seed, double q_max,
                        double snr_db)
{
    const double n0 = noise_power_from_snr(snr_db, q_max);
    const channel_realization ch = generate_channel_pair(config, seed);
    const link_decomposition link = link_decomposition::of(ch.f, ch.g);
    const reflection_matrix theta = optimal_theta(link);
    const capacity_report report = capacity_closed_form(link, q_max, n0);
    const cmat q = optimal_covariance(link, report.allocation);

    os << "# bdris single realization\n";
    os << "seed " << seed << '\n';
    os << "n_r " << config.n_r << "\nn_t " << config.n_t << "\nm " << config.m << '\n';
    os << "rician_kappa " << format_double(config.kappa) << "\nclusters " << config.n_clusters << '\n';
    os << "snr_db " << format_double(snr_db) << "\nq_max " << format_double(q_max) << "\nn0 " << format_double(n0)
       << '\n';
    os << "k " << report.k << '\n';
    os << "capacity_bits " << format_double(report.capacity_bits) << '\n';
    os << "water_level " << format_double(report.allocation.water_level) << '\n';
    os << "theta_unitarity_residual " << format_double(theta.residual()) << '\n';
    detail::write_vector(os, "sigma_F", std::span<const double>(link.f.s.data(), link.f.s.size()));
    detail::write_vector(os, "sigma_G", std::span<const double>(link.g.s.data(), link.g.s.size()));
    detail::write_vector(os, "gains", report.stream_gains);
    detail::write_vector(os, "powers", report.allocation.powers);
    detail::write_matrix(os, "F", ch.f);
    detail::write_matrix(os, "G", ch.g);
    detail::write_matrix(os, "Theta", theta.matrix());
    detail::write_matrix(os, "Q", q);
}

} // namespace bdris

#endif // BDRIS_HARNESS_HPP
