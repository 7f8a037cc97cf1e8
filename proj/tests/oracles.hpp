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

// Independent reference computations for the test suites. Nothing here calls the
// code path it is used to check.

#ifndef BDRIS_TESTS_ORACLES_HPP
#define BDRIS_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

namespace oracles
{

using cmat = Eigen::MatrixXcd;

struct bisection_fill
{
    std::vector<double> powers;
    double water_level;
};

/// Waterfilling by bisection on the water level mu until sum max(0, mu - N0/g) = q_max.
inline bisection_fill waterfill_bisection(const std::vector<double> &gains, double q_max, double n0)
{
    // bisect on the level above the lowest floor; mu itself may dwarf q_max
    double base = std::numeric_limits<double>::infinity();
    for (double g : gains)
        if (g > 0.0)
            base = std::min(base, n0 / g);
    const auto used = [&](double s) {
        double total = 0.0;
        for (double g : gains)
            if (g > 0.0)
                total += std::max(0.0, s - (n0 / g - base));
        return total;
    };
    double lo = 0.0;
    double hi = q_max;
    for (int it = 0; it < 400 && hi - lo > 0.0; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (used(mid) < q_max ? lo : hi) = mid;
    }
    const double s = 0.5 * (lo + hi);
    bisection_fill out{{}, base + s};
    for (double g : gains)
        out.powers.push_back(g > 0.0 ? std::max(0.0, s - (n0 / g - base)) : 0.0);
    return out;
}

/// sum_i log2(1 + sigma_i(H Q^{1/2})^2 / N0) from a plain SVD.
inline double capacity_svd(const cmat &h, const cmat &q, double n0)
{
    Eigen::SelfAdjointEigenSolver<cmat> eig(0.5 * (q + q.adjoint()));
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const cmat b = h * eig.eigenvectors() * root.asDiagonal();
    Eigen::JacobiSVD<cmat> svd(b);
    double c = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        c += std::log2(1.0 + svd.singularValues()(i) * svd.singularValues()(i) / n0);
    return c;
}

inline cmat gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64 &rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    cmat a(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            const double re = n(rng);
            const double im = n(rng);
            a(r, c) = std::complex<double>(re, im) * std::sqrt(0.5);
        }
    return a;
}

/// Kronecker product of two column vectors, a (x) b.
inline Eigen::VectorXcd kron(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

} // namespace oracles

#endif // BDRIS_TESTS_ORACLES_HPP
