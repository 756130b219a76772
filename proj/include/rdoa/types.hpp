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

#include <cmath>
#include <numbers>

namespace rdoa
{

inline constexpr double pi = std::numbers::pi;

// Power level at which non-positive linear values are floored when
// converting to dB. Offset-corrected spectra can dip below zero in
// noise-only directions; the linear values are kept untouched and only
// the dB view is clamped.
inline constexpr double db_floor = -80.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// dB conversion with a floor for non-positive inputs. `clipped`, when
// given, is set if the floor was applied.
inline double linear_to_db_floored(double x, bool *clipped = nullptr)
{
    if (!(x > 0.0))
    {
        if (clipped != nullptr)
            *clipped = true;
        return db_floor;
    }
    double v = linear_to_db(x);
    if (v < db_floor)
    {
        if (clipped != nullptr)
            *clipped = true;
        return db_floor;
    }
    return v;
}

// Angle of arrival. Radians internally; degrees at every external
// interface (files, CLI, reports).
class Direction
{
  public:
    Direction() = default;

    static Direction from_radians(double rad) { return Direction(rad); }
    static Direction from_degrees(double deg) { return Direction(deg * pi / 180.0); }

    double radians() const { return rad_; }
    double degrees() const { return rad_ * 180.0 / pi; }

  private:
    explicit Direction(double rad) : rad_(rad) {}
    double rad_ = 0.0;
};

} // namespace rdoa
