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

#include "rdoa/array.hpp"

using namespace rdoa;

namespace
{

Direction deg(double d) { return Direction::from_degrees(d); }

// Central finite difference of the steering vector; oracle for the
// analytic ULA derivative.
Eigen::VectorXcd fd_derivative(const ArrayGeometry &g, double theta_rad, double h)
{
    return (g.steering(Direction::from_radians(theta_rad + h)) -
            g.steering(Direction::from_radians(theta_rad - h))) /
           (2.0 * h);
}

} // namespace

TEST_CASE("steering vectors are unit norm")
{
    for (int m : {2, 9, 16, 33})
    {
        const auto g = ArrayGeometry::ula(m, 0.5);
        for (double t : {0.0, 17.3, 30.0, 90.0, 141.2, 180.0})
            CHECK(std::abs(g.steering(deg(t)).norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("broadside two-element steering is phase aligned")
{
    const auto g = ArrayGeometry::ula(2, 0.5);
    const Eigen::VectorXcd a = g.steering(deg(90.0));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(a(0) - std::complex<double>(inv_sqrt2, 0.0)) < 1e-12);
    CHECK(std::abs(a(1) - std::complex<double>(inv_sqrt2, 0.0)) < 1e-12);
}

TEST_CASE("inner-product beampattern equals the Dirichlet closed form")
{
    const auto g = ArrayGeometry::ula(16, 0.5);
    const Direction theta1 = deg(30.0);
    for (double t = 0.0; t <= 180.0; t += 0.1)
    {
        const double via_vectors = beampattern(g, deg(t), theta1);
        const double closed = ula_beampattern(16, 0.5, deg(t), theta1);
        CHECK(std::abs(via_vectors - closed) < 1e-10);
    }
}

TEST_CASE("Dirichlet kernel limits")
{
    CHECK(ula_beampattern(16, 0.5, deg(90.0), deg(90.0)) == doctest::Approx(1.0));
    // first null: cos(t) - cos(t1) = 1 / (M d)
    const double c = 1.0 / (16.0 * 0.5);
    const Direction t = Direction::from_radians(std::acos(c));
    CHECK(ula_beampattern(16, 0.5, t, deg(90.0)) < 1e-20);
    // grating-lobe limit at delta = 1/d (endfire pair)
    CHECK(ula_beampattern(4, 0.5, deg(0.0), deg(180.0)) == doctest::Approx(1.0));
}

TEST_CASE("beampattern is bounded and peaks at the source")
{
    const auto g = ArrayGeometry::ula(9, 0.5);
    const Direction theta1 = deg(57.0);
    CHECK(beampattern(g, theta1, theta1) == doctest::Approx(1.0));
    for (double t = 0.0; t <= 180.0; t += 0.5)
    {
        const double b = beampattern(g, deg(t), theta1);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0 + 1e-12);
    }
}

TEST_CASE("ULA derivative matches the finite-difference oracle")
{
    const auto g = ArrayGeometry::ula(16, 0.5);
    for (double t : {20.0, 65.0, 90.0, 130.0})
    {
        const Eigen::VectorXcd analytic = g.steering_derivative(deg(t));
        const Eigen::VectorXcd fd = fd_derivative(g, deg(t).radians(), 1e-6);
        CHECK((analytic - fd).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("derivative norm at boresight matches the variance formula")
{
    // || a' ||^2 = (1/12) (2 pi d)^2 (M^2 - 1) at boresight.
    {
        const auto g = ArrayGeometry::ula(16, 0.5);
        const double n2 = g.steering_derivative(deg(90.0)).squaredNorm();
        const double expected = (1.0 / 12.0) * std::pow(2.0 * pi * 0.5, 2) * (16.0 * 16.0 - 1.0);
        CHECK(n2 == doctest::Approx(expected).epsilon(1e-10));
        CHECK(expected == doctest::Approx(209.729).epsilon(1e-4));
    }
    {
        const auto g = ArrayGeometry::ula(2, 0.5);
        const double n2 = g.steering_derivative(deg(90.0)).squaredNorm();
        CHECK(n2 == doctest::Approx(pi * pi / 4.0).epsilon(1e-12));
    }
}

TEST_CASE("derivative is orthogonal to the steering vector")
{
    const auto ula = ArrayGeometry::ula(12, 0.5);
    const auto generic = ArrayGeometry::generic({{0.0, 0.0}, {0.3, 0.1}, {0.9, -0.2}, {1.1, 0.7}});
    for (double t = 5.0; t < 180.0; t += 7.0)
    {
        for (const ArrayGeometry *g : {&ula, &generic})
        {
            const std::complex<double> ip = g->steering_derivative(deg(t)).dot(g->steering(deg(t)));
            CHECK(std::abs(ip.real()) < 1e-8);
        }
    }
}

TEST_CASE("second derivative identity a''^H a = -||a'||^2")
{
    const auto g = ArrayGeometry::ula(16, 0.5);
    const double h = 1e-5;
    for (double t : {35.0, 90.0, 120.0})
    {
        const double tr = deg(t).radians();
        const Eigen::VectorXcd a = g.steering(deg(t));
        const Eigen::VectorXcd app = (g.steering(Direction::from_radians(tr + h)) - 2.0 * a +
                                      g.steering(Direction::from_radians(tr - h))) /
                                     (h * h);
        const double lhs = app.dot(a).real();
        const double n2 = g.steering_derivative(deg(t)).squaredNorm();
        CHECK(std::abs(lhs + n2) < 1e-5 * (1.0 + n2));
    }
}

TEST_CASE("generic geometry reproduces the ULA")
{
    std::vector<std::array<double, 2>> pos;
    for (int m = 0; m < 9; ++m)
        pos.push_back({0.5 * m, 0.0});
    const auto generic = ArrayGeometry::generic(pos);
    const auto ula = ArrayGeometry::ula(9, 0.5);
    const Direction theta1 = deg(74.0);
    for (double t = 0.0; t <= 180.0; t += 2.5)
    {
        CHECK(std::abs(beampattern(generic, deg(t), theta1) -
                       beampattern(ula, deg(t), theta1)) < 1e-12);
        // finite-difference generic derivative vs analytic ULA derivative
        const Eigen::VectorXcd dg = generic.steering_derivative(deg(t));
        const Eigen::VectorXcd du = ula.steering_derivative(deg(t));
        CHECK((dg - du).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("fading directions null the beampattern")
{
    const auto dirs = lobe_directions(16, 0.5, deg(30.0), LobeKind::Fading, 4);
    REQUIRE(!dirs.empty());
    for (Direction d : dirs)
        CHECK(ula_beampattern(16, 0.5, d, deg(30.0)) < 1e-6);
}

TEST_CASE("boresight fading orders")
{
    // order 1 around boresight: arccos(+/- 0.125)
    const auto dirs = lobe_directions(16, 0.5, deg(90.0), LobeKind::Fading, 1);
    REQUIRE(dirs.size() == 2);
    CHECK(dirs[0].degrees() == doctest::Approx(82.8192).epsilon(1e-4));
    CHECK(dirs[1].degrees() == doctest::Approx(97.1808).epsilon(1e-4));

    // orders beyond M d leave the visible region
    const auto all = lobe_directions(16, 0.5, deg(90.0), LobeKind::Fading, 50);
    CHECK(all.size() == 16); // l = 1..8, both signs
}

TEST_CASE("sidelobe directions of a 30-degree source")
{
    const auto dirs = lobe_directions(16, 0.5, deg(30.0), LobeKind::Sidelobe, 20);
    auto contains_near = [&](double target, double tol) {
        for (Direction d : dirs)
            if (std::abs(d.degrees() - target) <= tol)
                return true;
        return false;
    };
    CHECK(contains_near(46.0, 1.5));
    CHECK(contains_near(162.0, 1.5));
}

TEST_CASE("closed-form sidelobes sit near true beampattern maxima")
{
    for (int m : {8, 16, 32})
    {
        const Direction theta1 = deg(90.0);
        // local maxima of the kernel on a fine grid
        std::vector<double> maxima_deg;
        const double step = 0.01;
        double prev = ula_beampattern(m, 0.5, deg(0.0), theta1);
        double cur = ula_beampattern(m, 0.5, deg(step), theta1);
        for (double t = 2.0 * step; t <= 180.0; t += step)
        {
            const double next = ula_beampattern(m, 0.5, deg(t), theta1);
            if (cur > prev && cur > next)
                maxima_deg.push_back(t - step);
            prev = cur;
            cur = next;
        }
        const auto dirs = lobe_directions(m, 0.5, theta1, LobeKind::Sidelobe, 2);
        REQUIRE(!dirs.empty());
        for (Direction d : dirs)
        {
            double best = 1e9;
            for (double t : maxima_deg)
                best = std::min(best, std::abs(t - d.degrees()));
            CHECK(best <= 1.5);
        }
    }
}

TEST_CASE("first sidelobe height is near the small-angle estimate")
{
    // grid-searched first sidelobe vs 1 / (M sin(3 pi / 2M))^2; the
    // closed form is approximate, so allow 5%.
    const int m = 16;
    // bracket between the first two nulls around boresight
    const auto nulls = lobe_directions(m, 0.5, deg(90.0), LobeKind::Fading, 2);
    REQUIRE(nulls.size() == 4);
    const double lo = nulls[2].degrees(), hi = nulls[3].degrees();
    double best = 0.0;
    for (double t = lo; t <= hi; t += 0.002)
        best = std::max(best, ula_beampattern(m, 0.5, deg(t), deg(90.0)));
    const double approx = 1.0 / std::pow(m * std::sin(3.0 * pi / (2.0 * m)), 2);
    CHECK(approx == doctest::Approx(0.0464).epsilon(2e-3));
    CHECK(std::abs(best - approx) / approx < 0.05);
}

TEST_CASE("geometry validation")
{
    CHECK_THROWS_AS(ArrayGeometry::ula(1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry::ula(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry::generic({{0.0, 0.0}}), std::invalid_argument);
}
