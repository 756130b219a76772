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
//
// Test-only helpers: random matrices and independent numeric oracles.
// Everything here must stay independent of the library paths it checks.

#pragma once

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "rdoa/hpd.hpp"

namespace rdoa::test
{

inline Eigen::MatrixXcd random_complex(int rows, int cols, std::mt19937_64 &gen)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = std::complex<double>(normal(gen), normal(gen));
    return m;
}

inline Eigen::VectorXcd random_unit_vector(int dim, std::mt19937_64 &gen)
{
    Eigen::VectorXcd v = random_complex(dim, 1, gen);
    return v / v.norm();
}

// Random Hermitian (not necessarily definite).
inline Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64 &gen)
{
    Eigen::MatrixXcd a = random_complex(dim, dim, gen);
    return 0.5 * (a + a.adjoint());
}

// Random well-conditioned HPD matrix: G G^H / dim + 0.1 I.
inline Eigen::MatrixXcd random_hpd(int dim, std::mt19937_64 &gen)
{
    Eigen::MatrixXcd g = random_complex(dim, dim, gen);
    Eigen::MatrixXcd a = (g * g.adjoint()) / static_cast<double>(dim);
    a += 0.1 * Eigen::MatrixXcd::Identity(dim, dim);
    return a;
}

// Random invertible matrix (for congruence tests).
inline Eigen::MatrixXcd random_invertible(int dim, std::mt19937_64 &gen)
{
    while (true)
    {
        Eigen::MatrixXcd w = random_complex(dim, dim, gen);
        if (std::abs(w.determinant()) > 1e-3)
            return w;
    }
}

// Matrix exponential of a Hermitian matrix via its own eigensystem;
// independent oracle for the matrix-logarithm round trip.
inline Eigen::MatrixXcd hermitian_exp(const Eigen::MatrixXcd &a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    const Eigen::VectorXd l = es.eigenvalues().array().exp().matrix();
    return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace rdoa::test
