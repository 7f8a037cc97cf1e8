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

#include "oracles.hpp"

#include <bdris/capacity.hpp>
#include <bdris/channel.hpp>
#include <bdris/configurator.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace bdris;
using Catch::Approx;

namespace
{

cmat diag2(double a, double b)
{
    cmat d = cmat::Zero(2, 2);
    d(0, 0) = a;
    d(1, 1) = b;
    return d;
}

// G^H = [[0, 2], [1, 0]]
cmat swap_channel_g()
{
    cmat gh = cmat::Zero(2, 2);
    gh(0, 1) = 2.0;
    gh(1, 0) = 1.0;
    return gh.adjoint();
}

} // namespace

TEST_CASE("effective_channel - identities and pass-through")
{
    const auto eye = reflection_matrix::certify(cmat::Identity(2, 2));
    CHECK(effective_channel(cmat::Identity(2, 2), eye, cmat::Identity(2, 2)).isApprox(cmat::Identity(2, 2)));

    const cmat g = swap_channel_g();
    const cmat h = effective_channel(cmat::Identity(2, 2), eye, g);
    CHECK(h.isApprox(g.adjoint()));
}

TEST_CASE("effective_channel - common phase leaves singular values unchanged")
{
    std::mt19937_64 rng(3);
    const cmat f = oracles::gaussian(3, 5, rng);
    const cmat g = oracles::gaussian(4, 5, rng);
    const auto eye = reflection_matrix::certify(cmat::Identity(5, 5));
    const auto rotated = reflection_matrix::certify(std::polar(1.0, 0.77) * cmat::Identity(5, 5));
    const rvec a = singular_values(effective_channel(f, eye, g));
    const rvec b = singular_values(effective_channel(f, rotated, g));
    CHECK((a - b).norm() < 1e-12 * a(0));
}

TEST_CASE("effective_channel - dimension mismatch and uncertified matrices")
{
    const auto eye = reflection_matrix::certify(cmat::Identity(3, 3));
    CHECK_THROWS_AS(effective_channel(cmat::Identity(2, 2), eye, cmat::Identity(2, 2)), invalid_argument);
    CHECK_THROWS_AS(reflection_matrix::certify(1.01 * cmat::Identity(3, 3)), contract_violation);
    CHECK_THROWS_AS(reflection_matrix::certify(cmat::Ones(2, 3)), contract_violation);
}

TEST_CASE("waterfill - hand examples")
{
    const std::vector<double> one{1.0};
    auto a = waterfill(one, 2.0, 1.0);
    CHECK(a.powers[0] == Approx(2.0));
    CHECK(a.water_level == Approx(3.0));

    const std::vector<double> two{1.0, 1.0};
    a = waterfill(two, 2.0, 1.0);
    CHECK(a.powers[0] == Approx(1.0));
    CHECK(a.powers[1] == Approx(1.0));

    // second stream sits exactly on the boundary N0/g = 4 = mu
    const std::vector<double> boundary{1.0, 0.25};
    a = waterfill(boundary, 3.0, 1.0);
    const auto oracle = oracles::waterfill_bisection(boundary, 3.0, 1.0);
    CHECK(oracle.water_level == Approx(4.0).epsilon(1e-12));
    CHECK(a.water_level == Approx(4.0).epsilon(1e-14));
    CHECK(a.powers[0] == Approx(3.0).epsilon(1e-14));
    CHECK(a.powers[1] == Approx(0.0).margin(1e-14));
}

TEST_CASE("waterfill - keeps input order and gives zero gains nothing")
{
    const std::vector<double> gains{0.0, 0.5, 4.0, 0.0, 4.0};
    const auto a = waterfill(gains, 1.0, 1.0);
    CHECK(a.powers[0] == 0.0);
    CHECK(a.powers[3] == 0.0);
    CHECK(a.powers[2] == Approx(a.powers[4]));
    CHECK(a.powers[2] >= a.powers[1]);
    CHECK(std::accumulate(a.powers.begin(), a.powers.end(), 0.0) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("waterfill - errors")
{
    const std::vector<double> zeros{0.0, 0.0};
    CHECK_THROWS_AS(waterfill(zeros, 1.0, 1.0), no_usable_stream);
    const std::vector<double> empty;
    CHECK_THROWS_AS(waterfill(empty, 1.0, 1.0), no_usable_stream);
    const std::vector<double> ok{1.0};
    CHECK_THROWS_AS(waterfill(ok, 0.0, 1.0), invalid_argument);
    CHECK_THROWS_AS(waterfill(ok, 1.0, 0.0), invalid_argument);
    const std::vector<double> negative{1.0, -1.0};
    CHECK_THROWS_AS(waterfill(negative, 1.0, 1.0), invalid_argument);
}

TEST_CASE("waterfill - KKT certificate and bisection agreement on random gains")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> len(1, 10);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial)
    {
        std::vector<double> gains(static_cast<std::size_t>(len(rng)));
        for (double &g : gains)
            g = unit(rng) < 0.15 ? 0.0 : std::pow(10.0, 6.0 * unit(rng) - 3.0);
        if (gains.size() > 2 && unit(rng) < 0.3)
            gains[2] = gains[0];
        if (std::all_of(gains.begin(), gains.end(), [](double g) { return g == 0.0; }))
            gains[0] = 0.3;
        const double q_max = std::pow(10.0, 4.0 * unit(rng) - 2.0);
        const double n0 = std::pow(10.0, 2.0 * unit(rng) - 1.0);

        const auto a = waterfill(gains, q_max, n0);
        CHECK(check_kkt(gains, a, n0).holds(1e-10));

        const auto ref = oracles::waterfill_bisection(gains, q_max, n0);
        CHECK(std::abs(a.water_level - ref.water_level) <= 1e-10 * ref.water_level);
        for (std::size_t i = 0; i < gains.size(); ++i)
        {
            CHECK(a.powers[i] >= 0.0);
            CHECK(std::abs(a.powers[i] - ref.powers[i]) <= 1e-10 * q_max);
        }
    }
}

TEST_CASE("waterfill - non-increasing powers for non-increasing gains")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> gains(6);
        for (double &g : gains)
            g = std::pow(10.0, 4.0 * unit(rng) - 2.0);
        std::sort(gains.rbegin(), gains.rend());
        const auto a = waterfill(gains, 0.5 + unit(rng), 1.0);
        for (std::size_t i = 1; i < gains.size(); ++i)
            CHECK(a.powers[i] <= a.powers[i - 1]);
    }
}

TEST_CASE("capacity_logdet - trivial values")
{
    CHECK(capacity_logdet(cmat::Zero(3, 2), cmat::Identity(2, 2), 1.0) == 0.0);
    CHECK(capacity_logdet(cmat::Identity(2, 2), cmat::Identity(2, 2), 1.0) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("capacity_logdet - matches an SVD evaluation")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial)
    {
        const cmat h = oracles::gaussian(3, 3, rng);
        double expected = 0.0;
        for (double s : singular_values(h))
            expected += std::log2(1.0 + s * s);
        CHECK(capacity_logdet(h, cmat::Identity(3, 3), 1.0) == Approx(expected).epsilon(1e-12));

        const cmat w = oracles::gaussian(4, 4, rng);
        const cmat q = w * w.adjoint() / 4.0;
        const cmat tall = oracles::gaussian(6, 4, rng);
        CHECK(capacity_logdet(tall, q, 0.3) == Approx(oracles::capacity_svd(tall, q, 0.3)).epsilon(1e-12));
    }
}

TEST_CASE("capacity_logdet - covariance checks")
{
    const cmat h = cmat::Identity(2, 2);
    CHECK_THROWS_AS(capacity_logdet(h, diag2(1.0, -0.1), 1.0), invalid_covariance);
    // rounding-level negative eigenvalue is clipped
    CHECK(capacity_logdet(h, diag2(1.0, -1e-12), 1.0) == Approx(1.0).epsilon(1e-11));
    CHECK_THROWS_AS(capacity_logdet(h, cmat::Identity(3, 3), 1.0), invalid_argument);
}

TEST_CASE("capacity_closed_form - identity link")
{
    const auto r = capacity_closed_form(cmat::Identity(2, 2), cmat::Identity(2, 2), 2.0, 1.0);
    CHECK(r.capacity_bits == Approx(2.0).epsilon(1e-14));
    CHECK(r.allocation.powers[0] == Approx(1.0));
    CHECK(r.allocation.powers[1] == Approx(1.0));
    CHECK(r.k == 2);
}

TEST_CASE("capacity_closed_form - diag(2,1) against swapped G")
{
    const cmat f = diag2(2.0, 1.0);
    const cmat g = swap_channel_g();
    const auto link = link_decomposition::of(f, g);
    const auto r = capacity_closed_form(link, 2.0, 1.0);
    REQUIRE(r.stream_gains.size() == 2);
    CHECK(r.stream_gains[0] == Approx(16.0).epsilon(1e-14));
    CHECK(r.stream_gains[1] == Approx(1.0).epsilon(1e-14));

    // mu = (2 + 1/16 + 1) / 2
    CHECK(r.allocation.water_level == Approx(1.53125).epsilon(1e-14));
    const double expected = std::log2(1.0 + 1.46875 * 16.0) + std::log2(1.0 + 0.53125);
    CHECK(r.capacity_bits == Approx(expected).epsilon(1e-14));

    const auto theta = optimal_theta(link);
    const cmat q = optimal_covariance(link, r.allocation);
    CHECK(std::abs(capacity_logdet(effective_channel(f, theta, g), q, 1.0) - r.capacity_bits) < 1e-10);
}

TEST_CASE("capacity_closed_form - equal gains reduce to K log2(1 + q sF^2 sG^2 / (K N0))")
{
    std::mt19937_64 rng(23);
    for (auto [n_r, n_t, m] : {std::tuple{4, 4, 2}, std::tuple{6, 3, 4}, std::tuple{3, 6, 8}, std::tuple{5, 5, 5}})
    {
        const cmat f = to_semi_unitary(oracles::gaussian(n_r, m, rng));
        const cmat g = to_semi_unitary(oracles::gaussian(n_t, m, rng));
        const double sf = singular_values(f)(0);
        const double sg = singular_values(g)(0);
        const int k = std::min({n_r, n_t, m});
        for (double n0 : {0.01, 1.0, 30.0})
        {
            const double expected = k * std::log2(1.0 + 2.0 * sf * sf * sg * sg / (k * n0));
            CHECK(capacity_closed_form(f, g, 2.0, n0).capacity_bits == Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("capacity_closed_form - rank-deficient channels")
{
    std::mt19937_64 rng(8);
    const cmat f = oracles::gaussian(4, 1, rng) * oracles::gaussian(1, 6, rng);
    const cmat g = oracles::gaussian(4, 6, rng);
    const auto r = capacity_closed_form(f, g, 1.0, 1.0);
    CHECK(r.k == 4);
    CHECK(r.stream_gains[1] == 0.0);
    CHECK(r.allocation.active_streams() == 1);
    CHECK_THROWS_AS(capacity_closed_form(cmat::Zero(2, 3), g.leftCols(3), 1.0, 1.0), no_usable_stream);
}

TEST_CASE("capacity_closed_form - monotone in power and noise")
{
    const auto ch = generate_channel_pair(channel_config::standard(4, 3, 8), 4);
    const auto link = link_decomposition::of(ch.f, ch.g);
    double prev = 0.0;
    for (double q = 0.01; q < 1e3; q *= 1.7)
    {
        const double c = capacity_closed_form(link, q, 1.0).capacity_bits;
        CHECK(c >= prev);
        prev = c;
    }
    prev = std::numeric_limits<double>::infinity();
    for (double n0 = 1e-3; n0 < 1e4; n0 *= 2.3)
    {
        const double c = capacity_closed_form(link, 1.0, n0).capacity_bits;
        CHECK(c <= prev);
        prev = c;
    }
}

TEST_CASE("capacity_closed_form - tied singular values")
{
    // F and G with a repeated singular value: capacity cannot depend on the order
    // the SVD picks among the ties.
    std::mt19937_64 rng(31);
    const cmat u = haar_unitary_matrix(4, rng);
    const cmat v = haar_unitary_matrix(6, rng);
    cmat d = cmat::Zero(4, 6);
    d(0, 0) = 3.0;
    d(1, 1) = 3.0;
    d(2, 2) = 1.0;
    d(3, 3) = 1.0;
    const cmat f = u * d * v.adjoint();
    const cmat g = oracles::gaussian(4, 6, rng);
    const auto a = link_decomposition::of(f, g, svd_method::jacobi);
    const auto b = link_decomposition::of(f, g, svd_method::divide_and_conquer);
    CHECK(capacity_closed_form(a, 1.0, 0.5).capacity_bits ==
          Approx(capacity_closed_form(b, 1.0, 0.5).capacity_bits).epsilon(1e-12));
    CHECK(capacity_with_theta(f, optimal_theta(a), g, 1.0, 0.5).capacity_bits ==
          Approx(capacity_with_theta(f, optimal_theta(b), g, 1.0, 0.5).capacity_bits).epsilon(1e-12));
}

TEST_CASE("capacity_for_channel - agrees with log-det at the waterfilled covariance")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial)
    {
        const cmat h = oracles::gaussian(5, 3, rng);
        const auto r = capacity_for_channel(h, 2.0, 0.7);
        Eigen::JacobiSVD<cmat> svd(h, Eigen::ComputeFullV);
        rvec q = rvec::Zero(3);
        for (std::size_t i = 0; i < r.allocation.powers.size(); ++i)
            q(static_cast<Eigen::Index>(i)) = r.allocation.powers[i];
        const cmat cov = svd.matrixV() * q.asDiagonal() * svd.matrixV().adjoint();
        CHECK(r.capacity_bits == Approx(capacity_logdet(h, cov, 0.7)).epsilon(1e-10));
    }
}
