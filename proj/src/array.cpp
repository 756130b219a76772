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

#include "rdoa/array.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace rdoa
{

namespace
{
constexpr double fd_step_rad = 1e-6;
}

ArrayGeometry::ArrayGeometry(Kind kind, std::vector<std::array<double, 2>> positions, double spacing)
    : kind_(kind), positions_(std::move(positions)), spacing_(spacing)
{
    // Shift the phase reference to the centroid.
    double cx = 0.0, cy = 0.0;
    for (const auto &p : positions_)
    {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<double>(positions_.size());
    cy /= static_cast<double>(positions_.size());
    for (auto &p : positions_)
    {
        p[0] -= cx;
        p[1] -= cy;
    }
}

ArrayGeometry ArrayGeometry::ula(int elements, double spacing_wl)
{
    if (elements < 2)
        throw std::invalid_argument("ArrayGeometry::ula: need at least 2 elements");
    if (!(spacing_wl > 0.0))
        throw std::invalid_argument("ArrayGeometry::ula: spacing must be positive");
    std::vector<std::array<double, 2>> pos(static_cast<std::size_t>(elements));
    for (int m = 0; m < elements; ++m)
        pos[static_cast<std::size_t>(m)] = {spacing_wl * static_cast<double>(m), 0.0};
    return ArrayGeometry(Kind::Ula, std::move(pos), spacing_wl);
}

ArrayGeometry ArrayGeometry::generic(std::vector<std::array<double, 2>> positions_wl)
{
    if (positions_wl.size() < 2)
        throw std::invalid_argument("ArrayGeometry::generic: need at least 2 elements");
    return ArrayGeometry(Kind::Generic, std::move(positions_wl), 0.0);
}

Eigen::VectorXcd ArrayGeometry::steering(Direction theta) const
{
    const int m = size();
    const double ct = std::cos(theta.radians());
    const double st = std::sin(theta.radians());
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::VectorXcd a(m);
    for (int i = 0; i < m; ++i)
    {
        const auto &p = positions_[static_cast<std::size_t>(i)];
        const double phase = 2.0 * pi * (p[0] * ct + p[1] * st);
        a(i) = std::polar(scale, phase);
    }
    return a;
}

Eigen::VectorXcd ArrayGeometry::steering_derivative(Direction theta) const
{
    const int m = size();
    if (kind_ == Kind::Ula)
    {
        // Entrywise factor -i 2 pi d m' sin(theta), m' centroid-referenced.
        const double st = std::sin(theta.radians());
        Eigen::VectorXcd a = steering(theta);
        for (int i = 0; i < m; ++i)
        {
            const double x = positions_[static_cast<std::size_t>(i)][0];
            a(i) *= std::complex<double>(0.0, -2.0 * pi * x * st);
        }
        return a;
    }
    const double t = theta.radians();
    Eigen::VectorXcd hi = steering(Direction::from_radians(t + fd_step_rad));
    Eigen::VectorXcd lo = steering(Direction::from_radians(t - fd_step_rad));
    return (hi - lo) / (2.0 * fd_step_rad);
}

double beampattern(const ArrayGeometry &geom, Direction theta, Direction theta1)
{
    const std::complex<double> ip = geom.steering(theta).dot(geom.steering(theta1));
    return std::norm(ip);
}

double ula_beampattern(int elements, double spacing_wl, Direction theta, Direction theta1)
{
    const double delta = std::cos(theta.radians()) - std::cos(theta1.radians());
    const double psi = pi * spacing_wl * delta;
    const double den = std::sin(psi);
    if (std::abs(den) < 1e-12)
        return 1.0; // D -> k/d limit of the Dirichlet kernel
    const double num = std::sin(static_cast<double>(elements) * psi);
    const double r = num / (static_cast<double>(elements) * den);
    return r * r;
}

std::vector<Direction> lobe_directions(int elements, double spacing_wl, Direction theta1,
                                       LobeKind kind, int max_order)
{
    const double zeta = (kind == LobeKind::Fading) ? 0.0 : 0.5;
    const double c1 = std::cos(theta1.radians());
    const double md = static_cast<double>(elements) * spacing_wl;
    std::vector<Direction> out;
    for (int order = 1; order <= max_order; ++order)
    {
        const double off = (static_cast<double>(order) + zeta) / md;
        for (double sign : {+1.0, -1.0})
        {
            const double c = c1 + sign * off;
            if (c < -1.0 || c > 1.0)
                continue; // not in visible space
            out.push_back(Direction::from_radians(std::acos(c)));
        }
    }
    std::sort(out.begin(), out.end(),
              [](Direction a, Direction b) { return a.radians() < b.radians(); });
    return out;
}

} // namespace rdoa
