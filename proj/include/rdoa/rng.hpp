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
#include <complex>
#include <cstdint>
#include <random>

#include "rdoa/types.hpp"

namespace rdoa
{

/// Seeded random stream for Monte Carlo runs.
///
/// The core generator is std::mt19937_64, whose output sequence is fixed
/// by the standard, and all variates are derived from it explicitly
/// (std::uniform_real_distribution etc. are implementation-defined and
/// would break bit-reproducibility across standard libraries). Trials
/// derive their stream as seed + trial_index.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform()
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; two fresh uniforms per call.
    double gaussian()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    /// Circularly-symmetric complex Gaussian CN(0, variance):
    /// independent N(0, variance/2) real and imaginary parts.
    std::complex<double> complex_gaussian(double variance)
    {
        const double s = std::sqrt(variance / 2.0);
        const double re = gaussian();
        const double im = gaussian();
        return {s * re, s * im};
    }

    /// Unit-magnitude phasor with phase uniform in [0, 2 pi).
    std::complex<double> random_phasor()
    {
        return std::polar(1.0, 2.0 * pi * uniform());
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace rdoa
