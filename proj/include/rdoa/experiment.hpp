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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdoa/beamformer.hpp"
#include "rdoa/signal.hpp"
#include "rdoa/types.hpp"

namespace rdoa
{

enum class ExperimentKind
{
    Spectrum,
    Sleeve,
    RmseSweep,
    CharacteristicsSweep,
    MultipathGrid
};

std::string experiment_kind_name(ExperimentKind k);
ExperimentKind experiment_kind_from_name(const std::string &name);

/// Inclusive range start..stop in steps of `step`.
struct SweepRange
{
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
    std::vector<double> values() const;
};

enum class Association
{
    Nearest,  // min-total-distance matching of estimates to sources
    PowerRank // strongest estimate to strongest source
};

struct RmseOptions
{
    SweepRange snr_db{-10.0, 50.0, 5.0}; // swept power of the reference source
    Association association = Association::Nearest;
};

struct CharacteristicsOptions
{
    SweepRange snr_db{0.0, 20.0, 1.0};
};

struct MultipathOptions
{
    SweepRange sigma1_db{0.0, 10.0, 1.0};
    SweepRange sigma2_db{0.0, 10.0, 1.0};
    bool include_exact = false; // add population-spectrum values at theta1
};

struct ExperimentConfig
{
    ExperimentKind kind = ExperimentKind::Spectrum;
    Scenario scenario; // sources' power_db act as offsets in swept experiments
    std::vector<Beamformer> beamformers;
    double grid_start_deg = 0.0;
    double grid_stop_deg = 180.0;
    double grid_step_deg = 0.2;
    int trials = 1;
    bool population = false;
    PowerGrid ai_grid{};
    RmseOptions rmse{};
    CharacteristicsOptions characteristics{};
    MultipathOptions multipath{};
};

/// One spectrum per configured beamformer, from a fresh simulated sample
/// covariance or (population flag) the scenario's population covariance.
std::vector<Spectrum> run_spectrum(const ExperimentConfig &config);

struct SleeveRow
{
    double theta_deg = 0.0;
    std::string beamformer;
    double p05 = 0.0, p50 = 0.0, p95 = 0.0; // linear power percentiles
};

/// Pointwise 5/50/95 power percentiles over `trials` independent sample
/// covariances. Trials use seeds scenario.seed + trial index and may run
/// concurrently; results do not depend on the worker count.
std::vector<SleeveRow> run_sleeve(const ExperimentConfig &config);

struct RmseResult
{
    double snr_db = 0.0; // swept reference power
    std::string beamformer;
    int source_index = 0;
    double rmse_deg = 0.0;
    int trials = 0;
    int failures = 0; // trials skipped (degenerate covariance / missing peaks)
};

/// DoA RMSE per source and beamformer across the swept SNR. Estimates are
/// the largest spectrum peaks (parabolic-interpolated), matched to the
/// sources without double assignment. Trials where a beamformer fails
/// (e.g. MVDR on a singular covariance) are recorded, not fatal.
std::vector<RmseResult> run_rmse_sweep(const ExperimentConfig &config);

struct CharacteristicsRow
{
    double snr_db = 0.0;
    std::string beamformer;
    double b_sl = 0.0;
    std::optional<double> hpbw_analytic_deg;
    std::optional<double> hpbw_measured_deg;
    std::optional<double> pslr_analytic_db;
    std::optional<double> pslr_measured_db;
};

/// Analytic and population-spectrum-measured HPBW / PSLR per SNR for the
/// LE, CB, and MVDR beamformers.
std::vector<CharacteristicsRow> run_characteristics_sweep(const ExperimentConfig &config);

struct MultipathRow
{
    double sigma1_db = 0.0;
    double sigma2_db = 0.0;
    std::string beamformer;
    double approx_db = 0.0;
    std::optional<double> exact_db;
};

/// Closed-form two-ray power estimates over a (sigma1, sigma2) dB grid,
/// optionally with the exact population-spectrum value at theta1.
std::vector<MultipathRow> run_multipath_grid(const ExperimentConfig &config);

} // namespace rdoa
