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

#include "rdoa/hpd.hpp"

#include <cmath>
#include <sstream>

namespace rdoa
{

namespace
{

// Whitened spectrum lambda{A^{-1/2} B A^{-1/2}}, descending.
Eigen::VectorXd whitened_eigenvalues(const HpdMatrix &a, const Eigen::MatrixXcd &b)
{
    const Eigen::MatrixXcd s = a.inv_sqrt().matrix();
    return eig_hermitian(HermitianMatrix(s * b * s)).first;
}

} // namespace

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXcd &a)
{
    if (a.rows() != a.cols() || a.rows() < 1)
        throw std::invalid_argument("HermitianMatrix: input must be square and non-empty");
    mat_ = 0.5 * (a + a.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int dim)
{
    return HermitianMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

std::pair<Eigen::VectorXd, Eigen::MatrixXcd> eig_hermitian(const HermitianMatrix &a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.matrix());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigendecomposition did not converge");
    // Eigen returns ascending order; flip to descending.
    const int m = a.dim();
    Eigen::VectorXd eval(m);
    Eigen::MatrixXcd evec(m, m);
    for (int i = 0; i < m; ++i)
    {
        eval(i) = es.eigenvalues()(m - 1 - i);
        evec.col(i) = es.eigenvectors().col(m - 1 - i);
    }
    return {std::move(eval), std::move(evec)};
}

HpdMatrix::HpdMatrix(const HermitianMatrix &a) : mat_(a.matrix())
{
    auto [eval, evec] = eig_hermitian(a);
    const double floor = hpd_floor_ratio * eval(0);
    const double lambda_min = eval(a.dim() - 1);
    if (!(lambda_min > floor) || !(lambda_min > 0.0))
    {
        std::ostringstream msg;
        msg << "HpdMatrix: eigenvalue " << lambda_min << " at or below floor " << floor
            << " (lambda_max = " << eval(0) << ")";
        throw DegenerateCovariance(msg.str());
    }
    eval_ = std::move(eval);
    evec_ = std::move(evec);
}

HpdMatrix HpdMatrix::identity(int dim)
{
    return HpdMatrix(HermitianMatrix::identity(dim));
}

HermitianMatrix HpdMatrix::log() const
{
    const Eigen::VectorXd l = eval_.array().log().matrix();
    return HermitianMatrix(evec_ * l.asDiagonal() * evec_.adjoint());
}

HpdMatrix HpdMatrix::inverse() const
{
    const Eigen::VectorXd l = eval_.array().inverse().matrix();
    // Spectrum is known; reuse it (reversed to stay descending).
    Eigen::MatrixXcd m = evec_ * l.asDiagonal() * evec_.adjoint();
    m = 0.5 * (m + m.adjoint());
    const int n = dim();
    Eigen::VectorXd eval(n);
    Eigen::MatrixXcd evec(n, n);
    for (int i = 0; i < n; ++i)
    {
        eval(i) = l(n - 1 - i);
        evec.col(i) = evec_.col(n - 1 - i);
    }
    return HpdMatrix(std::move(m), std::move(eval), std::move(evec));
}

HpdMatrix HpdMatrix::inv_sqrt() const
{
    const Eigen::VectorXd l = eval_.array().rsqrt().matrix();
    Eigen::MatrixXcd m = evec_ * l.asDiagonal() * evec_.adjoint();
    m = 0.5 * (m + m.adjoint());
    const int n = dim();
    Eigen::VectorXd eval(n);
    Eigen::MatrixXcd evec(n, n);
    for (int i = 0; i < n; ++i)
    {
        eval(i) = l(n - 1 - i);
        evec.col(i) = evec_.col(n - 1 - i);
    }
    return HpdMatrix(std::move(m), std::move(eval), std::move(evec));
}

double HpdMatrix::log_det() const
{
    return eval_.array().log().sum();
}

double dist_euclidean(const HermitianMatrix &a, const HermitianMatrix &b)
{
    return (a.matrix() - b.matrix()).norm();
}

double dist_ai(const HpdMatrix &a, const HpdMatrix &b)
{
    return dist_truncated(a, b.hermitian(), a.dim());
}

double dist_le(const HpdMatrix &a, const HpdMatrix &b)
{
    return (a.log().matrix() - b.log().matrix()).norm();
}

double dist_kl(const HpdMatrix &a, const HpdMatrix &b)
{
    const double tr = (b.inverse().matrix() * a.matrix()).real().trace();
    const double m = static_cast<double>(a.dim());
    return tr - m - (a.log_det() - b.log_det());
}

double dist_ld(const HpdMatrix &a, const HpdMatrix &b)
{
    const HpdMatrix mid(HermitianMatrix(0.5 * (a.matrix() + b.matrix())));
    return mid.log_det() - 0.5 * (a.log_det() + b.log_det());
}

double dist_truncated(const HpdMatrix &a, const HermitianMatrix &b, int keep)
{
    if (keep < 1 || keep > a.dim())
        throw std::invalid_argument("dist_truncated: keep must be in [1, dim]");
    const Eigen::VectorXd lam = whitened_eigenvalues(a, b.matrix());
    const double floor = hpd_floor_ratio * lam(0);
    double sum = 0.0;
    for (int i = 0; i < keep; ++i)
    {
        if (!(lam(i) > floor) || !(lam(i) > 0.0))
        {
            std::ostringstream msg;
            msg << "dist_truncated: retained eigenvalue " << lam(i) << " at or below floor "
                << floor;
            throw DegenerateCovariance(msg.str());
        }
        const double l = std::log(lam(i));
        sum += l * l;
    }
    return std::sqrt(sum);
}

} // namespace rdoa
