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

#ifndef BDRIS_REFLECTION_HPP
#define BDRIS_REFLECTION_HPP

#include "errors.hpp"
#include "linalg.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace bdris
{

enum class reflection_kind
{
    full_unitary,
    diagonal_phase
};

// Membership tolerance for the unitary group: ||T^H T - I||_F <= 1e-10 sqrt(M).
inline double membership_tolerance(Eigen::Index m)
{
    return 1e-10 * std::sqrt(static_cast<double>(m));
}

/// M x M reflection matrix whose membership in the unitary group has been checked.
/// The only way to obtain one is through certify() or diagonal(), so every
/// instance in circulation satisfies the feasibility constraint.
class reflection_matrix
{
  public:
    static reflection_matrix certify(cmat matrix, reflection_kind kind = reflection_kind::full_unitary)
    {
        if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
            throw contract_violation("reflection_matrix: matrix must be square and non-empty");
        if (!all_finite(matrix))
            throw contract_violation("reflection_matrix: non-finite entries");

        if (kind == reflection_kind::diagonal_phase)
        {
            for (Eigen::Index c = 0; c < matrix.cols(); ++c)
                for (Eigen::Index r = 0; r < matrix.rows(); ++r)
                {
                    if (r != c && matrix(r, c) != cplx(0.0, 0.0))
                        throw contract_violation("reflection_matrix: diagonal kind has off-diagonal entries");
                    if (r == c && std::abs(std::abs(matrix(r, c)) - 1.0) > 1e-12)
                        throw contract_violation("reflection_matrix: diagonal entry is not unit modulus");
                }
        }

        const double residual = unitarity_residual(matrix);
        if (!(residual <= membership_tolerance(matrix.rows())))
            throw contract_violation("reflection_matrix: unitarity residual " + std::to_string(residual) +
                                     " exceeds tolerance");
        return reflection_matrix(std::move(matrix), kind, residual);
    }

    // diag(exp(j phases))
    static reflection_matrix diagonal(const rvec &phases)
    {
        cmat d = cmat::Zero(phases.size(), phases.size());
        for (Eigen::Index i = 0; i < phases.size(); ++i)
            d(i, i) = std::polar(1.0, phases(i));
        return certify(std::move(d), reflection_kind::diagonal_phase);
    }

    const cmat &matrix() const { return matrix_; }
    reflection_kind kind() const { return kind_; }
    double residual() const { return residual_; }
    Eigen::Index size() const { return matrix_.rows(); }

  private:
    reflection_matrix(cmat matrix, reflection_kind kind, double residual)
        : matrix_(std::move(matrix)), kind_(kind), residual_(residual)
    {
    }

    cmat matrix_;
    reflection_kind kind_;
    double residual_;
};

} // namespace bdris

#endif // BDRIS_REFLECTION_HPP
