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

#ifndef BDRIS_LINALG_HPP
#define BDRIS_LINALG_HPP

#include "errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace bdris
{

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

// Singular values below this fraction of the largest one count as zero for rank decisions.
inline constexpr double rank_floor = 1e-12;

enum class svd_method
{
    jacobi,
    divide_and_conquer
};

// Full SVD a = u * diag(s) * v^H with square u (rows x rows) and v (cols x cols).
// s has min(rows, cols) entries in decreasing order.
struct full_svd
{
    cmat u;
    rvec s;
    cmat v;
};

inline full_svd decompose(const cmat &a, svd_method method = svd_method::jacobi)
{
    if (a.size() == 0)
        throw invalid_argument("decompose: empty matrix");

    const auto finish = [](const auto &svd) {
        if (svd.info() != Eigen::Success)
            throw numerical_error("decompose: SVD did not converge");
        return full_svd{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    };
    if (method == svd_method::jacobi)
        return finish(Eigen::JacobiSVD<cmat>(a, Eigen::ComputeFullU | Eigen::ComputeFullV));
    return finish(Eigen::BDCSVD<cmat>(a, Eigen::ComputeFullU | Eigen::ComputeFullV));
}

inline rvec singular_values(const cmat &a)
{
    if (a.size() == 0)
        return rvec();
    Eigen::JacobiSVD<cmat> svd(a);
    return svd.singularValues();
}

/// Squared singular values of `a` in decreasing order, from the eigenvalues of the
/// smaller Gram matrix. Faster than an SVD and accurate enough wherever only the
/// squares enter (capacity gains); negative rounding noise is clamped to zero.
inline rvec squared_singular_values(const cmat &a)
{
    if (a.size() == 0)
        return rvec();
    const cmat gram = a.rows() <= a.cols() ? cmat(a * a.adjoint()) : cmat(a.adjoint() * a);
    Eigen::SelfAdjointEigenSolver<cmat> eig(gram, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success)
        throw numerical_error("squared_singular_values: eigensolver failed");
    rvec ev = eig.eigenvalues().reverse().cwiseMax(0.0);
    return ev;
}

// Number of singular values above rank_floor * s(0); s must be sorted decreasing.
inline Eigen::Index numerical_rank(const rvec &s)
{
    if (s.size() == 0 || !(s(0) > 0.0))
        return 0;
    const double cut = rank_floor * s(0);
    return static_cast<Eigen::Index>(std::count_if(s.begin(), s.end(), [cut](double x) { return x > cut; }));
}

// ||A^H A - I||_F
inline double unitarity_residual(const cmat &a)
{
    return (a.adjoint() * a - cmat::Identity(a.cols(), a.cols())).norm();
}

inline bool all_finite(const cmat &a)
{
    return a.allFinite();
}

} // namespace bdris

#endif // BDRIS_LINALG_HPP
