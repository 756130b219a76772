// SPDX-License-Identifier: Apache-2.0
//
// rdoa - covariance-fitting direction-of-arrival estimation on HPD geometry
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

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "rdoa/types.hpp"

namespace rdoa
{

// Relative eigenvalue floor for positive-definiteness checks. Eigenvalues
// at or below floor_ratio * lambda_max are an error, never clipped;
// callers needing regularization must add explicit diagonal loading.
inline constexpr double hpd_floor_ratio = 1e-12;

/// A covariance (or a matrix function of one) lost positive definiteness.
class DegenerateCovariance : public std::runtime_error
{
  public:
    explicit DegenerateCovariance(const std::string &what) : std::runtime_error(what) {}
};

/// Complex Hermitian matrix. Construction symmetrizes via (A + A^H)/2,
/// absorbing round-off from covariance accumulation.
class HermitianMatrix
{
  public:
    explicit HermitianMatrix(const Eigen::MatrixXcd &a);

    static HermitianMatrix identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return mat_; }

  private:
    Eigen::MatrixXcd mat_;
};

/// Hermitian positive-definite matrix with a cached eigendecomposition
/// (eigenvalues descending, unitary eigenvectors). Construction throws
/// DegenerateCovariance when any eigenvalue falls at or below the floor.
/// Immutable after construction; safe to share across threads.
class HpdMatrix
{
  public:
    explicit HpdMatrix(const HermitianMatrix &a);
    explicit HpdMatrix(const Eigen::MatrixXcd &a) : HpdMatrix(HermitianMatrix(a)) {}

    static HpdMatrix identity(int dim);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return mat_; }
    const Eigen::VectorXd &eigenvalues() const { return eval_; }   // descending
    const Eigen::MatrixXcd &eigenvectors() const { return evec_; } // columns

    HermitianMatrix log() const;
    HpdMatrix inverse() const;
    HpdMatrix inv_sqrt() const;
    double log_det() const;

    HermitianMatrix hermitian() const { return HermitianMatrix(mat_); }

  private:
    HpdMatrix(Eigen::MatrixXcd mat, Eigen::VectorXd eval, Eigen::MatrixXcd evec)
        : mat_(std::move(mat)), eval_(std::move(eval)), evec_(std::move(evec))
    {
    }

    Eigen::MatrixXcd mat_;
    Eigen::VectorXd eval_;
    Eigen::MatrixXcd evec_;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Throws std::runtime_error if the solver fails to converge.
std::pair<Eigen::VectorXd, Eigen::MatrixXcd> eig_hermitian(const HermitianMatrix &a);

// Distances between covariance matrices. The metric distances
// (Euclidean, affine-invariant, log-Euclidean) return the distance
// itself, not its square; the Kullback-Leibler and log-determinant
// divergences return the divergence value as defined.

/// Frobenius norm of the difference.
double dist_euclidean(const HermitianMatrix &a, const HermitianMatrix &b);

/// Affine-invariant distance sqrt(sum_m log^2 lambda_m{A^{-1/2} B A^{-1/2}}).
/// Invariant to inversion and congruence A -> W A W^H.
double dist_ai(const HpdMatrix &a, const HpdMatrix &b);

/// Log-Euclidean distance ||log A - log B||_F. Invariant to inversion.
double dist_le(const HpdMatrix &a, const HpdMatrix &b);

/// Kullback-Leibler divergence trace(B^{-1} A - I) - log det(B^{-1} A).
/// Asymmetric; order matters.
double dist_kl(const HpdMatrix &a, const HpdMatrix &b);

/// Log-determinant divergence log det((A+B)/2) - (1/2) log det(A B).
/// Symmetric and invariant to inversion.
double dist_ld(const HpdMatrix &a, const HpdMatrix &b);

/// Affine-invariant sum truncated to the `keep` largest eigenvalues of
/// A^{-1/2} B A^{-1/2}. B may be rank-deficient as long as the retained
/// eigenvalues stay above the floor; otherwise DegenerateCovariance.
double dist_truncated(const HpdMatrix &a, const HermitianMatrix &b, int keep);

} // namespace rdoa
