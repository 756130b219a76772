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

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rdoa/array.hpp"
#include "rdoa/hpd.hpp"
#include "rdoa/types.hpp"

namespace rdoa
{

enum class SignalModel
{
    ConstantModulus, // e^{j phi}, phi uniform in [0, 2 pi)
    ComplexGaussian  // CN(0, 1)
};

/// One incident ray. Sources sharing a coherence group carry the same
/// latent unit-power waveform; each member scales it by sqrt(power) and
/// rotates it by its phasor (identity for the group leader).
struct Source
{
    Direction direction;
    double power = 1.0; // linear
    int coherence_group = 0;
    std::complex<double> phasor{1.0, 0.0};
};

struct Scenario
{
    ArrayGeometry geometry;
    std::vector<Source> sources;
    double noise_power = 1.0; // linear
    int snapshots = 1;
    std::uint64_t seed = 0;
    SignalModel signal_model = SignalModel::ConstantModulus;
};

/// Throws std::invalid_argument on inconsistent fields (power <= 0,
/// |phasor| != 1, snapshots < 1, noise_power <= 0).
void validate_scenario(const Scenario &s);

/// Draw the M x K snapshot matrix y_k = sum_g v_g x_{g,k} + n_k, with
/// v_g the coherent-group superposition of steering vectors and n_k ~
/// CN(0, noise_power I). Deterministic given the scenario seed: per
/// snapshot, group waveforms are drawn in ascending group order, then
/// the noise vector.
Eigen::MatrixXcd simulate_snapshots(const Scenario &s);

/// (1/K) Y Y^H, symmetrized. Singular when K < M; operations that need
/// positive definiteness fail downstream with DegenerateCovariance.
HermitianMatrix sample_covariance(const Eigen::MatrixXcd &snapshots);

/// E[sample covariance]: sum_g v_g v_g^H + noise_power I.
HpdMatrix population_covariance(const Scenario &s);

/// Single-direction model sigma2 a a^H + noise_power I.
HpdMatrix model_covariance(const ArrayGeometry &geom, Direction theta, double sigma2,
                           double noise_power);

} // namespace rdoa
