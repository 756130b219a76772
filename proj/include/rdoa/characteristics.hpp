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

#include <optional>
#include <stdexcept>
#include <string>

#include "rdoa/array.hpp"
#include "rdoa/beamformer.hpp"
#include "rdoa/types.hpp"

namespace rdoa
{

/// A spectrum never drops to half its peak, so the half-power beamwidth
/// does not exist.
class HalfPowerUndefined : public std::runtime_error
{
  public:
    explicit HalfPowerUndefined(const std::string &what) : std::runtime_error(what) {}
};

/// First-order half-power beamwidth sqrt(1 - b_bw) / ||a'(theta1)||,
/// one-sided, radians. `b_bw` is the beampattern value at the half-power
/// direction.
double hpbw_generic(double b_bw, const ArrayGeometry &geom, Direction theta1);

/// Closed-form one-sided HPBW of the LE, CB, or MVDR spectrum on the
/// single-source population covariance with source power sigma2 (linear).
/// CB and MVDR require sigma2 >= 1, else the mainlobe never falls 3 dB
/// above the unit noise floor and HalfPowerUndefined is thrown.
double hpbw_analytic(Beamformer beamformer, double sigma2, const ArrayGeometry &geom,
                     Direction theta1);

/// Two-sided convenience (2x the one-sided value).
double hpbw_analytic_two_sided(Beamformer beamformer, double sigma2, const ArrayGeometry &geom,
                               Direction theta1);

/// Closed-form peak-to-sidelobe ratio (linear) of the LE, CB, or MVDR
/// spectrum on the single-source population covariance; `b_sl` is the
/// beampattern value at the sidelobe direction.
double pslr_analytic(Beamformer beamformer, double sigma2, double b_sl);

/// Power estimate (linear) read at the source direction when a fully
/// coherent ray of power sigma2_2 arrives from a direction well outside
/// the mainlobe. First-order approximations; the caller is responsible
/// for the lobes being separated.
double multipath_power_estimate(Beamformer beamformer, double sigma1_sq, double sigma2_sq,
                                double noise_power = 1.0);

enum class SidelobeSource
{
    GridSearch,     // local-maximum search of the Dirichlet kernel (most accurate)
    ClosedFormAngle // kernel value at the closed-form sidelobe direction (order 1)
};

/// Beampattern height b_sl of the first sidelobe of a ULA.
double first_sidelobe_level(int elements, double spacing_wl, Direction theta1,
                            SidelobeSource source = SidelobeSource::GridSearch);

/// One-sided half-power width measured on a sampled spectrum: linear
/// interpolation of the crossings at half the (parabolic-interpolated)
/// peak power, averaged over the sides where a crossing exists. Throws
/// HalfPowerUndefined when neither side crosses within the grid.
double measure_hpbw(const Spectrum &spectrum, Direction peak);

/// Peak power over the power of the nearest local maximum outside the
/// mainlobe (bounded by the first flanking local minima). Returns +inf
/// when no sidelobe exists. When the mainlobe has no flanking minima
/// (very small arrays), `ula_fallback` + `theta1` supply order-1 fading
/// directions as mainlobe bounds.
double measure_pslr(const Spectrum &spectrum, Direction peak,
                    const ArrayGeometry *ula_fallback = nullptr,
                    std::optional<Direction> theta1 = std::nullopt);

/// Analytic and (optionally) measured spatial characteristics of one
/// beamformer at one SNR. Measured fields are present only when a
/// spectrum was supplied; undefined half-power widths stay empty.
struct CharacteristicsReport
{
    std::string beamformer;
    double sigma2 = 0.0; // linear source power
    double b_sl = 0.0;
    std::optional<double> hpbw_analytic_rad;
    std::optional<double> hpbw_measured_rad;
    std::optional<double> pslr_analytic; // linear
    std::optional<double> pslr_measured; // linear
    std::optional<double> multipath_estimate;
};

} // namespace rdoa
