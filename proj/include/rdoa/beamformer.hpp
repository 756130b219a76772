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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rdoa/array.hpp"
#include "rdoa/hpd.hpp"
#include "rdoa/types.hpp"

namespace rdoa
{

enum class Beamformer
{
    Cb,    // conventional (Bartlett): a^H R a
    Mv,    // minimum-variance (Capon): 1 / (a^H R^{-1} a)
    Le,    // log-Euclidean fit, closed form: exp(a^H log R a) - noise
    Ai,    // affine-invariant fit, 1-D numeric search
    Kl1,   // Kullback-Leibler fit of (sample, model): a^H R a - noise
    Kl2,   // Kullback-Leibler fit of (model, sample): 1/(a^H R^{-1} a) - noise
    Ld,    // log-determinant fit: 1/(a^H (R + noise I)^{-1} a) - 2 noise
    Ref38, // truncated rank-1 affine-invariant benchmark, 1/log^2(a^H R^{-1} a)
};

std::string beamformer_name(Beamformer b);
Beamformer beamformer_from_name(const std::string &name); // throws std::invalid_argument

/// Log-spaced candidate powers (dB endpoints inclusive) for search-based
/// covariance fitting.
struct PowerGrid
{
    double min_db = -30.0;
    double max_db = 50.0;
    int points = 161;
};

/// Conventional spectrum a^H R a. Valid for any Hermitian R.
double p_cb(const HermitianMatrix &r, const Eigen::VectorXcd &a);

/// Capon spectrum 1 / (a^H R^{-1} a). The covariance must be HPD; no
/// silent pseudo-inverse.
double p_mv(const HpdMatrix &r, const Eigen::VectorXcd &a);

/// Log-Euclidean spectrum exp(a^H log(R) a) - noise_power.
double p_le(const HpdMatrix &r, const Eigen::VectorXcd &a, double noise_power = 1.0);

/// Kullback-Leibler spectra; identical to CB resp. MVDR up to the
/// -noise_power offset.
double p_kl1(const HermitianMatrix &r, const Eigen::VectorXcd &a, double noise_power = 1.0);
double p_kl2(const HpdMatrix &r, const Eigen::VectorXcd &a, double noise_power = 1.0);

/// Log-determinant spectrum 1/(a^H (R + noise I)^{-1} a) - 2 noise.
/// Defined even for singular R (the loading restores invertibility).
double p_ld(const HermitianMatrix &r, const Eigen::VectorXcd &a, double noise_power = 1.0);

/// Rank-1 truncated affine-invariant benchmark 1 / log^2(a^H R^{-1} a).
/// Dimensionless (not in power units). Returns +inf when a^H R^{-1} a
/// is exactly 1.
double p_ref38(const HpdMatrix &r, const Eigen::VectorXcd &a);

/// Affine-invariant spectrum: minimizer over sigma^2 of the AI distance
/// between R and sigma^2 a a^H + noise_power I, grid search plus one
/// golden-section refinement pass. `boundary`, when given, is set if the
/// best grid point sits on the grid edge.
double p_ai(const HpdMatrix &r, const Eigen::VectorXcd &a, const PowerGrid &grid = {},
            double noise_power = 1.0, bool *boundary = nullptr);

enum class EigenvalueMap
{
    Identity,      // g(l) = l            -> CB
    NegReciprocal, // g(l) = -1/l         -> MVDR
    Log,           // g(l) = log l        -> LE + noise offset
    LdReciprocal,  // g(l) = -1/(l+noise) -> LD + noise offset
};

/// Generic eigenvalue-transform spectrum
/// g^{-1}( sum_m |a^H u_m|^2 g(lambda_m) ).
double shrinkage_spectrum(const HpdMatrix &r, const Eigen::VectorXcd &a, EigenvalueMap g,
                          double noise_power = 1.0);

enum class FitDistance
{
    Euclidean,        // || R - model ||_F
    EuclideanInverse, // || R^{-1} - model^{-1} ||_F
    AffineInvariant,
    LogEuclidean,
    KlSampleModel, // d_KL(R, model)
    KlModelSample, // d_KL(model, R)
    LogDet,
};

struct FitResult
{
    double power = 0.0;    // fitted sigma^2
    bool boundary = false; // best grid point on a grid edge
};

/// Direct covariance-fitting minimizer: argmin over sigma^2 in `grid` of
/// d(R, sigma^2 a a^H + noise_power I), refined by golden section around
/// the best cell. Search oracle for the closed-form spectra; shares no
/// code with them beyond the distance definitions.
FitResult cf_grid_fit(const HermitianMatrix &r, const Eigen::VectorXcd &a, FitDistance distance,
                      const PowerGrid &grid = {}, double noise_power = 1.0);

struct Spectrum
{
    std::vector<Direction> grid;
    std::vector<double> power; // linear; offset spectra may be negative
    std::string label;
};

struct SpectrumOptions
{
    double noise_power = 1.0;
    PowerGrid ai_grid{};
};

/// Evaluate one beamformer over a direction grid. Shared factors
/// (log R, R^{-1}, R^{-1/2}) are computed once; per-direction values are
/// filled concurrently.
Spectrum compute_spectrum(const HermitianMatrix &r, const ArrayGeometry &geom,
                          const std::vector<Direction> &grid, Beamformer beamformer,
                          const SpectrumOptions &options = {});

/// Inclusive degree range [start, stop] with the given step.
std::vector<Direction> make_direction_grid(double start_deg, double stop_deg, double step_deg);

struct Peak
{
    Direction direction; // 3-point parabolic interpolation around the maximum
    double power = 0.0;  // interpolated height
};

/// Strict interior local maxima, strongest first, at most `count`.
std::vector<Peak> find_peaks(const Spectrum &spectrum, int count);

} // namespace rdoa
