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

#include "rdoa/signal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rdoa/rng.hpp"

namespace rdoa
{

namespace
{

// Coherent-group superpositions sum_{i in g} phasor_i sqrt(power_i) a_i,
// keyed by group id (ascending).
std::map<int, Eigen::VectorXcd> group_vectors(const Scenario &s)
{
    std::map<int, Eigen::VectorXcd> groups;
    for (const auto &src : s.sources)
    {
        Eigen::VectorXcd v = std::sqrt(src.power) * src.phasor * s.geometry.steering(src.direction);
        auto [it, inserted] = groups.emplace(src.coherence_group, v);
        if (!inserted)
            it->second += v;
    }
    return groups;
}

} // namespace

void validate_scenario(const Scenario &s)
{
    if (s.snapshots < 1)
        throw std::invalid_argument("Scenario: snapshots must be >= 1");
    if (!(s.noise_power > 0.0))
        throw std::invalid_argument("Scenario: noise power must be positive");
    for (const auto &src : s.sources)
    {
        if (!(src.power > 0.0))
            throw std::invalid_argument("Scenario: source power must be positive");
        if (std::abs(std::abs(src.phasor) - 1.0) > 1e-12)
            throw std::invalid_argument("Scenario: source phasor must have unit magnitude");
    }
}

Eigen::MatrixXcd simulate_snapshots(const Scenario &s)
{
    validate_scenario(s);
    const int m = s.geometry.size();
    const int k = s.snapshots;
    const auto groups = group_vectors(s);

    Rng rng(s.seed);
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(m, k);
    for (int col = 0; col < k; ++col)
    {
        for (const auto &[id, v] : groups)
        {
            std::complex<double> x;
            if (s.signal_model == SignalModel::ConstantModulus)
                x = rng.random_phasor();
            else
                x = rng.complex_gaussian(1.0);
            y.col(col) += v * x;
        }
        for (int row = 0; row < m; ++row)
            y(row, col) += rng.complex_gaussian(s.noise_power);
    }
    return y;
}

HermitianMatrix sample_covariance(const Eigen::MatrixXcd &snapshots)
{
    if (snapshots.cols() < 1)
        throw std::invalid_argument("sample_covariance: need at least one snapshot");
    const double k = static_cast<double>(snapshots.cols());
    return HermitianMatrix((snapshots * snapshots.adjoint()) / k);
}

HpdMatrix population_covariance(const Scenario &s)
{
    validate_scenario(s);
    const int m = s.geometry.size();
    Eigen::MatrixXcd r = s.noise_power * Eigen::MatrixXcd::Identity(m, m);
    for (const auto &[id, v] : group_vectors(s))
        r += v * v.adjoint();
    return HpdMatrix(HermitianMatrix(r));
}

HpdMatrix model_covariance(const ArrayGeometry &geom, Direction theta, double sigma2,
                           double noise_power)
{
    if (sigma2 < 0.0 || !(noise_power > 0.0))
        throw std::invalid_argument("model_covariance: need sigma2 >= 0 and noise_power > 0");
    const Eigen::VectorXcd a = geom.steering(theta);
    const int m = geom.size();
    Eigen::MatrixXcd r = sigma2 * (a * a.adjoint());
    r += noise_power * Eigen::MatrixXcd::Identity(m, m);
    return HpdMatrix(HermitianMatrix(r));
}

} // namespace rdoa
