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

#include "rdoa/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rdoa
{

namespace
{

double steering_derivative_norm(const ArrayGeometry &geom, Direction theta1)
{
    return geom.steering_derivative(theta1).norm();
}

std::size_t nearest_index(const Spectrum &s, Direction d)
{
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.grid.size(); ++i)
    {
        const double dist = std::abs(s.grid[i].radians() - d.radians());
        if (dist < best_dist)
        {
            best_dist = dist;
            best = i;
        }
    }
    return best;
}

// Hill-climb from a starting index to the enclosing local maximum.
std::size_t climb_to_max(const Spectrum &s, std::size_t i)
{
    const std::size_t n = s.power.size();
    while (true)
    {
        if (i + 1 < n && s.power[i + 1] > s.power[i])
            ++i;
        else if (i > 0 && s.power[i - 1] > s.power[i])
            --i;
        else
            return i;
    }
}

struct InterpolatedPeak
{
    double theta_rad;
    double power;
    std::size_t index;
};

InterpolatedPeak interpolate_peak(const Spectrum &s, Direction near)
{
    const std::size_t i = climb_to_max(s, nearest_index(s, near));
    InterpolatedPeak p{s.grid[i].radians(), s.power[i], i};
    if (i > 0 && i + 1 < s.power.size())
    {
        const double pl = s.power[i - 1], pc = s.power[i], pr = s.power[i + 1];
        const double denom = pl - 2.0 * pc + pr;
        if (denom != 0.0)
        {
            const double shift = 0.5 * (pl - pr) / denom;
            const double step = s.grid[i].radians() - s.grid[i - 1].radians();
            p.theta_rad += shift * step;
            p.power = pc - 0.25 * (pl - pr) * shift;
        }
    }
    return p;
}

} // namespace

double hpbw_generic(double b_bw, const ArrayGeometry &geom, Direction theta1)
{
    if (b_bw < 0.0 || b_bw > 1.0)
        throw std::invalid_argument("hpbw_generic: b_bw must be in [0, 1]");
    return std::sqrt(1.0 - b_bw) / steering_derivative_norm(geom, theta1);
}

double hpbw_analytic(Beamformer beamformer, double sigma2, const ArrayGeometry &geom,
                     Direction theta1)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("hpbw_analytic: sigma2 must be positive");
    const double na = steering_derivative_norm(geom, theta1);
    switch (beamformer)
    {
    case Beamformer::Le:
        return std::sqrt(1.0 - std::log(sigma2 / 2.0 + 1.0) / std::log(sigma2 + 1.0)) / na;
    case Beamformer::Cb:
        if (sigma2 < 1.0)
            throw HalfPowerUndefined("CB mainlobe never drops to half power for sigma2 < 1");
        return std::sqrt(0.5 + 0.5 / sigma2) / na;
    case Beamformer::Mv:
        if (sigma2 < 1.0)
            throw HalfPowerUndefined("MVDR mainlobe never drops to half power for sigma2 < 1");
        return std::sqrt(1.0 / sigma2) / na;
    default:
        throw std::invalid_argument("hpbw_analytic: closed form exists for LE, CB, MV only");
    }
}

double hpbw_analytic_two_sided(Beamformer beamformer, double sigma2, const ArrayGeometry &geom,
                               Direction theta1)
{
    return 2.0 * hpbw_analytic(beamformer, sigma2, geom, theta1);
}

double pslr_analytic(Beamformer beamformer, double sigma2, double b_sl)
{
    if (!(sigma2 > 0.0) || b_sl < 0.0 || b_sl > 1.0)
        throw std::invalid_argument("pslr_analytic: need sigma2 > 0 and b_sl in [0, 1]");
    switch (beamformer)
    {
    case Beamformer::Le:
        return sigma2 / (std::pow(sigma2 + 1.0, b_sl) - 1.0);
    case Beamformer::Cb:
        return (sigma2 + 1.0) / (b_sl * sigma2 + 1.0);
    case Beamformer::Mv:
        return (1.0 - b_sl) * sigma2 + 1.0;
    default:
        throw std::invalid_argument("pslr_analytic: closed form exists for LE, CB, MV only");
    }
}

double multipath_power_estimate(Beamformer beamformer, double sigma1_sq, double sigma2_sq,
                                double noise_power)
{
    if (!(sigma1_sq > 0.0) || sigma2_sq < 0.0 || !(noise_power > 0.0))
        throw std::invalid_argument("multipath_power_estimate: invalid powers");
    const double total = sigma1_sq + sigma2_sq + noise_power;
    switch (beamformer)
    {
    case Beamformer::Le:
        return std::pow(total, sigma1_sq / (sigma1_sq + sigma2_sq)) - noise_power;
    case Beamformer::Mv:
        return total / (sigma2_sq + noise_power);
    case Beamformer::Cb:
        return sigma1_sq + noise_power;
    default:
        throw std::invalid_argument("multipath_power_estimate: defined for LE, MV, CB only");
    }
}

double first_sidelobe_level(int elements, double spacing_wl, Direction theta1,
                            SidelobeSource source)
{
    if (source == SidelobeSource::ClosedFormAngle)
    {
        const auto dirs = lobe_directions(elements, spacing_wl, theta1, LobeKind::Sidelobe, 1);
        if (dirs.empty())
            throw std::invalid_argument("first_sidelobe_level: no visible sidelobe");
        double best = 0.0;
        for (Direction d : dirs)
            best = std::max(best, ula_beampattern(elements, spacing_wl, d, theta1));
        return best;
    }
    // Bracket the first sidelobe of the kernel between the first and the
    // second null (in psi = pi d (cos t - cos t1) space) and refine by
    // ternary search.
    const double md = static_cast<double>(elements) * spacing_wl;
    const double lo = pi * spacing_wl / md; // first null: delta = 1/(M d)
    const double hi = 2.0 * lo;             // second null
    const auto level = [&](double psi) {
        const double den = static_cast<double>(elements) * std::sin(psi);
        const double num = std::sin(static_cast<double>(elements) * psi);
        const double r = num / den;
        return r * r;
    };
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it)
    {
        const double m1 = a + (b - a) / 3.0;
        const double m2 = b - (b - a) / 3.0;
        if (level(m1) < level(m2))
            a = m1;
        else
            b = m2;
    }
    return level(0.5 * (a + b));
}

double measure_hpbw(const Spectrum &spectrum, Direction peak)
{
    const InterpolatedPeak p = interpolate_peak(spectrum, peak);
    const double half = 0.5 * p.power;
    const std::size_t n = spectrum.power.size();

    double sum = 0.0;
    int sides = 0;
    // Walk right, then left, for the first strict crossing below half.
    for (int dir : {+1, -1})
    {
        std::size_t i = p.index;
        bool found = false;
        while (true)
        {
            const std::size_t next = i + static_cast<std::size_t>(dir);
            if (dir > 0 ? (next >= n) : (i == 0))
                break;
            if (spectrum.power[next] < half)
            {
                const double p0 = spectrum.power[i], p1 = spectrum.power[next];
                const double t0 = spectrum.grid[i].radians(), t1 = spectrum.grid[next].radians();
                const double frac = (p0 - half) / (p0 - p1);
                const double cross = t0 + frac * (t1 - t0);
                sum += std::abs(cross - p.theta_rad);
                ++sides;
                found = true;
                break;
            }
            i = next;
        }
        (void)found;
    }
    if (sides == 0)
        throw HalfPowerUndefined("measure_hpbw: no half-power crossing within the grid");
    return sum / static_cast<double>(sides);
}

double measure_pslr(const Spectrum &spectrum, Direction peak, const ArrayGeometry *ula_fallback,
                    std::optional<Direction> theta1)
{
    const InterpolatedPeak p = interpolate_peak(spectrum, peak);
    const std::size_t n = spectrum.power.size();

    // Mainlobe bounds: first strict local minima flanking the peak.
    std::optional<std::size_t> left, right;
    for (std::size_t i = p.index; i-- > 1;)
    {
        if (spectrum.power[i] < spectrum.power[i - 1] && spectrum.power[i] < spectrum.power[i + 1])
        {
            left = i;
            break;
        }
    }
    for (std::size_t i = p.index + 1; i + 1 < n; ++i)
    {
        if (spectrum.power[i] < spectrum.power[i - 1] && spectrum.power[i] < spectrum.power[i + 1])
        {
            right = i;
            break;
        }
    }
    if ((!left || !right) && ula_fallback != nullptr && ula_fallback->is_ula() && theta1)
    {
        const auto fad =
            lobe_directions(ula_fallback->size(), ula_fallback->spacing(), *theta1,
                            LobeKind::Fading, 1);
        for (Direction d : fad)
        {
            const std::size_t i = nearest_index(spectrum, d);
            if (d.radians() < p.theta_rad && !left)
                left = i;
            if (d.radians() > p.theta_rad && !right)
                right = i;
        }
    }

    // Strongest candidate per side is the nearest sidelobe maximum; take
    // the closer of the two sides.
    double best = -std::numeric_limits<double>::infinity();
    bool found = false;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        const bool inside_mainlobe =
            (left && i >= *left && right && i <= *right) ||
            (!left && right && i <= *right) || (left && !right && i >= *left) ||
            (!left && !right);
        if (inside_mainlobe)
            continue;
        if (spectrum.power[i] > spectrum.power[i - 1] && spectrum.power[i] > spectrum.power[i + 1])
        {
            const double dist = std::abs(spectrum.grid[i].radians() - p.theta_rad);
            if (dist < best_dist)
            {
                best_dist = dist;
                best = spectrum.power[i];
                found = true;
            }
        }
    }
    if (!found)
        return std::numeric_limits<double>::infinity();
    return p.power / best;
}

} // namespace rdoa
