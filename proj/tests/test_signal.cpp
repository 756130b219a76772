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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rdoa/signal.hpp"

using namespace rdoa;

namespace
{

Direction deg(double d) { return Direction::from_degrees(d); }

Scenario single_source_scenario(int m, double power, double noise, int k, std::uint64_t seed)
{
    Scenario s;
    s.geometry = ArrayGeometry::ula(m, 0.5);
    s.sources = {{deg(30.0), power, 0, {1.0, 0.0}}};
    s.noise_power = noise;
    s.snapshots = k;
    s.seed = seed;
    return s;
}

} // namespace

TEST_CASE("snapshots are deterministic given the seed")
{
    const Scenario s = single_source_scenario(6, 1.0, 1.0, 32, 42);
    const Eigen::MatrixXcd y1 = simulate_snapshots(s);
    const Eigen::MatrixXcd y2 = simulate_snapshots(s);
    CHECK(y1 == y2); // bit identical

    Scenario other = s;
    other.seed = 43;
    CHECK((simulate_snapshots(other) - y1).norm() > 1e-3);
}

TEST_CASE("constant-modulus snapshots have fixed signal magnitude")
{
    // With negligible noise, ||y_k|| = sqrt(power) exactly per snapshot.
    const double power = 2.5;
    Scenario s = single_source_scenario(8, power, 1e-12, 50, 7);
    const Eigen::MatrixXcd y = simulate_snapshots(s);
    for (int k = 0; k < y.cols(); ++k)
        CHECK(y.col(k).norm() == doctest::Approx(std::sqrt(power)).epsilon(1e-5));
}

TEST_CASE("noise-free limit recovers the rank-1 covariance")
{
    const double power = 1.8;
    Scenario s = single_source_scenario(5, power, 1e-12, 256, 3);
    const HermitianMatrix r = sample_covariance(simulate_snapshots(s));
    const Eigen::VectorXcd a = s.geometry.steering(s.sources[0].direction);
    const Eigen::MatrixXcd expected = power * (a * a.adjoint());
    CHECK((r.matrix() - expected).norm() / expected.norm() < 1e-5);
}

TEST_CASE("single-column sample covariance is the outer product")
{
    Eigen::MatrixXcd y(3, 1);
    y << std::complex<double>(1.0, 2.0), std::complex<double>(0.0, -1.0),
        std::complex<double>(0.5, 0.5);
    const HermitianMatrix r = sample_covariance(y);
    CHECK((r.matrix() - y.col(0) * y.col(0).adjoint()).norm() < 1e-14);
}

TEST_CASE("sample covariance converges to the population covariance")
{
    Scenario s = single_source_scenario(4, 2.0, 1.0, 100000, 9);
    const HermitianMatrix r = sample_covariance(simulate_snapshots(s));
    const Eigen::MatrixXcd rbar = population_covariance(s).matrix();
    CHECK((r.matrix() - rbar).norm() / rbar.norm() < 0.01);

    // expected average element power: trace(Rbar)/M = power/M + noise
    const double tr = r.matrix().real().trace() / 4.0;
    CHECK(tr == doctest::Approx(2.0 / 4.0 + 1.0).epsilon(0.02));
}

TEST_CASE("gaussian signal model also converges")
{
    Scenario s = single_source_scenario(4, 1.5, 1.0, 100000, 11);
    s.signal_model = SignalModel::ComplexGaussian;
    const HermitianMatrix r = sample_covariance(simulate_snapshots(s));
    const Eigen::MatrixXcd rbar = population_covariance(s).matrix();
    CHECK((r.matrix() - rbar).norm() / rbar.norm() < 0.015);
}

TEST_CASE("sample covariance is positive semidefinite")
{
    Scenario s = single_source_scenario(8, 1.0, 1.0, 5, 21); // K < M: singular
    const HermitianMatrix r = sample_covariance(simulate_snapshots(s));
    const auto [eval, evec] = eig_hermitian(r);
    for (int i = 0; i < eval.size(); ++i)
        CHECK(eval(i) >= -1e-10 * eval(0));
    // and operations needing positive definiteness reject it
    CHECK_THROWS_AS(HpdMatrix{r}, DegenerateCovariance);
}

TEST_CASE("population covariance closed forms")
{
    const auto g = ArrayGeometry::ula(6, 0.5);

    SUBCASE("no sources: scaled identity")
    {
        Scenario s;
        s.geometry = g;
        s.noise_power = 2.0;
        s.snapshots = 1;
        const Eigen::MatrixXcd r = population_covariance(s).matrix();
        CHECK((r - 2.0 * Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);
    }

    SUBCASE("single source")
    {
        Scenario s;
        s.geometry = g;
        s.sources = {{deg(40.0), 3.0, 0, {1.0, 0.0}}};
        s.noise_power = 1.0;
        s.snapshots = 1;
        const Eigen::VectorXcd a = g.steering(deg(40.0));
        const Eigen::MatrixXcd expected =
            3.0 * (a * a.adjoint()) + Eigen::MatrixXcd::Identity(6, 6);
        CHECK((population_covariance(s).matrix() - expected).norm() < 1e-12);
    }

    SUBCASE("two coherent rays form one rank-1 term")
    {
        const std::complex<double> rho = std::polar(1.0, 1.1);
        Scenario s;
        s.geometry = g;
        s.sources = {{deg(90.0), 2.0, 0, {1.0, 0.0}}, {deg(60.0), 1.5, 0, rho}};
        s.noise_power = 1.0;
        s.snapshots = 1;
        const Eigen::VectorXcd v = std::sqrt(2.0) * g.steering(deg(90.0)) +
                                   rho * std::sqrt(1.5) * g.steering(deg(60.0));
        const Eigen::MatrixXcd expected =
            v * v.adjoint() + Eigen::MatrixXcd::Identity(6, 6);
        CHECK((population_covariance(s).matrix() - expected).norm() < 1e-12);
    }
}

TEST_CASE("model covariance")
{
    const auto g = ArrayGeometry::ula(5, 0.5);
    const HpdMatrix r = model_covariance(g, deg(70.0), 4.0, 1.0);
    CHECK(r.eigenvalues()(0) == doctest::Approx(5.0).epsilon(1e-12));
    for (int i = 1; i < 5; ++i)
        CHECK(r.eigenvalues()(i) == doctest::Approx(1.0).epsilon(1e-12));

    // zero signal power: pure noise
    const HpdMatrix n = model_covariance(g, deg(70.0), 0.0, 0.5);
    CHECK((n.matrix() - 0.5 * Eigen::MatrixXcd::Identity(5, 5)).norm() < 1e-14);

    // inverse closed form -s/(s+1) a a^H + I
    const Eigen::VectorXcd a = g.steering(deg(70.0));
    const Eigen::MatrixXcd expected_inv =
        -(4.0 / 5.0) * (a * a.adjoint()) + Eigen::MatrixXcd::Identity(5, 5);
    CHECK((r.inverse().matrix() - expected_inv).norm() < 1e-10);
}

TEST_CASE("coherent-pair sample covariance matches the two-ray model on average")
{
    // Monte Carlo mean over many short runs against the closed-form
    // population matrix.
    const std::complex<double> rho = std::polar(1.0, pi / 2.0);
    Scenario base;
    base.geometry = ArrayGeometry::ula(4, 0.5);
    base.sources = {{deg(90.0), 2.0, 0, {1.0, 0.0}}, {deg(60.0), 1.0, 0, rho}};
    base.noise_power = 1.0;
    base.snapshots = 20;

    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(4, 4);
    const int trials = 10000;
    for (int t = 0; t < trials; ++t)
    {
        Scenario s = base;
        s.seed = 1000 + static_cast<std::uint64_t>(t);
        mean += sample_covariance(simulate_snapshots(s)).matrix();
    }
    mean /= static_cast<double>(trials);
    const Eigen::MatrixXcd r2 = population_covariance(base).matrix();
    CHECK((mean - r2).norm() / r2.norm() < 0.02);
}

TEST_CASE("scenario validation")
{
    Scenario s = single_source_scenario(4, 1.0, 1.0, 8, 0);
    s.sources[0].power = 0.0;
    CHECK_THROWS_AS(simulate_snapshots(s), std::invalid_argument);
    s = single_source_scenario(4, 1.0, 1.0, 8, 0);
    s.sources[0].phasor = {2.0, 0.0};
    CHECK_THROWS_AS(simulate_snapshots(s), std::invalid_argument);
    s = single_source_scenario(4, 1.0, 1.0, 0, 0);
    CHECK_THROWS_AS(simulate_snapshots(s), std::invalid_argument);
    s = single_source_scenario(4, 1.0, -1.0, 8, 0);
    CHECK_THROWS_AS(simulate_snapshots(s), std::invalid_argument);
}
