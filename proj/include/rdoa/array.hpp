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

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "rdoa/types.hpp"

namespace rdoa
{

/// Sensor array layout with positions in wavelengths.
///
/// Steering vectors are unit-norm and phase-referenced to the array
/// centroid. The centroid reference makes the steering derivative
/// orthogonal to the steering vector (a'^H a = 0), which the analytic
/// beamwidth expressions rely on; beampatterns |a_t^H a_1|^2 are
/// independent of the reference choice.
class ArrayGeometry
{
  public:
    enum class Kind
    {
        Ula,
        Generic
    };

    /// Default: two-element half-wavelength ULA (placeholder so that
    /// scenario/config aggregates are default-constructible).
    ArrayGeometry() : ArrayGeometry(Kind::Ula, {{0.0, 0.0}, {0.5, 0.0}}, 0.5) {}

    /// Uniform linear array of `elements` sensors, `spacing_wl` apart.
    /// Throws std::invalid_argument unless elements >= 2 and spacing > 0.
    static ArrayGeometry ula(int elements, double spacing_wl);

    /// Arbitrary planar array from 2-D element positions (wavelengths).
    static ArrayGeometry generic(std::vector<std::array<double, 2>> positions_wl);

    Kind kind() const { return kind_; }
    int size() const { return static_cast<int>(positions_.size()); }
    bool is_ula() const { return kind_ == Kind::Ula; }
    double spacing() const { return spacing_; } // ULA only

    /// Unit-norm response vector for a plane wave from `theta`.
    Eigen::VectorXcd steering(Direction theta) const;

    /// d/d(theta) of the steering vector. Analytic for ULAs; central
    /// finite difference (step 1e-6 rad) for generic layouts.
    Eigen::VectorXcd steering_derivative(Direction theta) const;

  private:
    ArrayGeometry(Kind kind, std::vector<std::array<double, 2>> positions, double spacing);

    Kind kind_;
    std::vector<std::array<double, 2>> positions_; // centroid-referenced
    double spacing_ = 0.0;
};

/// Normalized power response |a_theta^H a_theta1|^2, in [0, 1].
double beampattern(const ArrayGeometry &geom, Direction theta, Direction theta1);

/// Dirichlet-kernel beampattern of a ULA,
/// sin^2(M pi d D) / (M^2 sin^2(pi d D)) with D = cos(theta) - cos(theta1).
/// Removable singularities (D at a multiple of 1/d) evaluate to 1.
double ula_beampattern(int elements, double spacing_wl, Direction theta, Direction theta1);

enum class LobeKind
{
    Fading,
    Sidelobe
};

/// Closed-form fading (nulls) or sidelobe directions of a ULA beampattern
/// around a source at `theta1`: arccos(cos theta1 +/- (l + z) / (M d)),
/// z = 0 for fadings and 1/2 for sidelobes, l = 1..max_order. Orders whose
/// arccos argument leaves [-1, 1] are not visible and are skipped. Result
/// sorted ascending; may be empty.
std::vector<Direction> lobe_directions(int elements, double spacing_wl, Direction theta1,
                                       LobeKind kind, int max_order);

} // namespace rdoa
