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

#include "rdoa/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rdoa/characteristics.hpp"
#include "rdoa/parallel.hpp"

namespace rdoa
{

namespace
{

std::vector<Direction> config_grid(const ExperimentConfig &c)
{
    return make_direction_grid(c.grid_start_deg, c.grid_stop_deg, c.grid_step_deg);
}

SpectrumOptions spectrum_options(const ExperimentConfig &c)
{
    SpectrumOptions o;
    o.noise_power = c.scenario.noise_power;
    o.ai_grid = c.ai_grid;
    return o;
}

HermitianMatrix covariance_for_trial(const ExperimentConfig &c, const Scenario &scenario,
                                     std::uint64_t trial)
{
    if (c.population)
        return population_covariance(scenario).hermitian();
    Scenario s = scenario;
    s.seed = scenario.seed + trial;
    return sample_covariance(simulate_snapshots(s));
}

// Linear-interpolated percentile of an unsorted sample.
double percentile(std::vector<double> values, double p)
{
    std::sort(values.begin(), values.end());
    if (values.size() == 1)
        return values[0];
    const double h = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

// Assignment of estimates to sources minimizing the total angular error,
// one estimate per source. Source counts are small; permutations are fine.
std::vector<int> assign_nearest(const std::vector<double> &est_deg,
                                const std::vector<double> &src_deg)
{
    const std::size_t n = src_deg.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do
    {
        double cost = 0.0;
        for (std::size_t s = 0; s < n; ++s)
            cost += std::abs(est_deg[static_cast<std::size_t>(perm[s])] - src_deg[s]);
        if (cost < best_cost)
        {
            best_cost = cost;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

std::string experiment_kind_name(ExperimentKind k)
{
    switch (k)
    {
    case ExperimentKind::Spectrum:
        return "spectrum";
    case ExperimentKind::Sleeve:
        return "sleeve";
    case ExperimentKind::RmseSweep:
        return "rmse";
    case ExperimentKind::CharacteristicsSweep:
        return "characteristics";
    case ExperimentKind::MultipathGrid:
        return "multipath";
    }
    return "?";
}

ExperimentKind experiment_kind_from_name(const std::string &name)
{
    if (name == "spectrum")
        return ExperimentKind::Spectrum;
    if (name == "sleeve")
        return ExperimentKind::Sleeve;
    if (name == "rmse")
        return ExperimentKind::RmseSweep;
    if (name == "characteristics")
        return ExperimentKind::CharacteristicsSweep;
    if (name == "multipath")
        return ExperimentKind::MultipathGrid;
    throw std::invalid_argument("unknown experiment kind: " + name);
}

std::vector<double> SweepRange::values() const
{
    if (!(step > 0.0) || !(stop >= start))
        throw std::invalid_argument("SweepRange: need step > 0 and stop >= start");
    std::vector<double> out;
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(start + step * i);
    return out;
}

std::vector<Spectrum> run_spectrum(const ExperimentConfig &config)
{
    const auto grid = config_grid(config);
    const HermitianMatrix r = covariance_for_trial(config, config.scenario, 0);
    std::vector<Spectrum> out;
    out.reserve(config.beamformers.size());
    for (Beamformer b : config.beamformers)
        out.push_back(compute_spectrum(r, config.scenario.geometry, grid, b,
                                       spectrum_options(config)));
    return out;
}

std::vector<SleeveRow> run_sleeve(const ExperimentConfig &config)
{
    const auto grid = config_grid(config);
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t nb = config.beamformers.size();

    // spectra[b][t] filled concurrently; trial t owns its slot.
    std::vector<std::vector<Spectrum>> spectra(nb, std::vector<Spectrum>(trials));
    parallel_for(trials, [&](std::size_t t) {
        const HermitianMatrix r = covariance_for_trial(config, config.scenario, t);
        for (std::size_t b = 0; b < nb; ++b)
            spectra[b][t] = compute_spectrum(r, config.scenario.geometry, grid,
                                             config.beamformers[b], spectrum_options(config));
    });

    std::vector<SleeveRow> rows;
    rows.reserve(grid.size() * nb);
    for (std::size_t b = 0; b < nb; ++b)
    {
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            std::vector<double> vals(trials);
            for (std::size_t t = 0; t < trials; ++t)
                vals[t] = spectra[b][t].power[i];
            SleeveRow row;
            row.theta_deg = grid[i].degrees();
            row.beamformer = beamformer_name(config.beamformers[b]);
            row.p05 = percentile(vals, 0.05);
            row.p50 = percentile(vals, 0.50);
            row.p95 = percentile(vals, 0.95);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<RmseResult> run_rmse_sweep(const ExperimentConfig &config)
{
    const auto grid = config_grid(config);
    const std::vector<double> snrs = config.rmse.snr_db.values();
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t nb = config.beamformers.size();
    const std::size_t ns = config.scenario.sources.size();
    if (ns < 1)
        throw std::invalid_argument("run_rmse_sweep: scenario needs at least one source");

    std::vector<double> src_deg(ns);
    std::vector<double> src_offset_db(ns);
    for (std::size_t s = 0; s < ns; ++s)
    {
        src_deg[s] = config.scenario.sources[s].direction.degrees();
        src_offset_db[s] = linear_to_db(config.scenario.sources[s].power);
    }

    std::vector<RmseResult> results;
    for (std::size_t p = 0; p < snrs.size(); ++p)
    {
        Scenario base = config.scenario;
        for (std::size_t s = 0; s < ns; ++s)
            base.sources[s].power = db_to_linear(snrs[p] + src_offset_db[s]);

        // err[b][t][s]; NaN marks a failed trial.
        std::vector<std::vector<std::vector<double>>> err(
            nb, std::vector<std::vector<double>>(
                    trials, std::vector<double>(ns, std::numeric_limits<double>::quiet_NaN())));

        parallel_for(trials, [&](std::size_t t) {
            const std::uint64_t trial_index = p * trials + t;
            const HermitianMatrix r = covariance_for_trial(config, base, trial_index);
            for (std::size_t b = 0; b < nb; ++b)
            {
                try
                {
                    const Spectrum spec = compute_spectrum(r, base.geometry, grid,
                                                           config.beamformers[b],
                                                           spectrum_options(config));
                    const auto peaks = find_peaks(spec, static_cast<int>(ns));
                    if (peaks.size() < ns)
                        continue; // too few peaks; trial recorded as failure
                    std::vector<double> est_deg(ns);
                    for (std::size_t s = 0; s < ns; ++s)
                        est_deg[s] = peaks[s].direction.degrees();
                    if (config.rmse.association == Association::PowerRank)
                    {
                        // Peaks are strongest-first; sources ranked by power.
                        std::vector<std::size_t> rank(ns);
                        std::iota(rank.begin(), rank.end(), std::size_t{0});
                        std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t c) {
                            return base.sources[a].power > base.sources[c].power;
                        });
                        for (std::size_t k = 0; k < ns; ++k)
                            err[b][t][rank[k]] = est_deg[k] - src_deg[rank[k]];
                    }
                    else
                    {
                        const auto match = assign_nearest(est_deg, src_deg);
                        for (std::size_t s = 0; s < ns; ++s)
                            err[b][t][s] = est_deg[static_cast<std::size_t>(match[s])] - src_deg[s];
                    }
                }
                catch (const DegenerateCovariance &)
                {
                    // leave NaN
                }
            }
        });

        for (std::size_t b = 0; b < nb; ++b)
        {
            for (std::size_t s = 0; s < ns; ++s)
            {
                double sum_sq = 0.0;
                int ok = 0;
                for (std::size_t t = 0; t < trials; ++t)
                {
                    const double e = err[b][t][s];
                    if (std::isnan(e))
                        continue;
                    sum_sq += e * e;
                    ++ok;
                }
                RmseResult res;
                res.snr_db = snrs[p];
                res.beamformer = beamformer_name(config.beamformers[b]);
                res.source_index = static_cast<int>(s);
                res.trials = static_cast<int>(trials);
                res.failures = static_cast<int>(trials) - ok;
                res.rmse_deg =
                    ok > 0 ? std::sqrt(sum_sq / ok) : std::numeric_limits<double>::quiet_NaN();
                results.push_back(std::move(res));
            }
        }
    }
    return results;
}

std::vector<CharacteristicsRow> run_characteristics_sweep(const ExperimentConfig &config)
{
    if (config.scenario.sources.size() != 1)
        throw std::invalid_argument("run_characteristics_sweep: scenario needs exactly one source");
    if (!config.scenario.geometry.is_ula())
        throw std::invalid_argument("run_characteristics_sweep: ULA geometry required");
    const ArrayGeometry &geom = config.scenario.geometry;
    const Direction theta1 = config.scenario.sources[0].direction;
    const auto grid = config_grid(config);
    const double b_sl = first_sidelobe_level(geom.size(), geom.spacing(), theta1);

    std::vector<CharacteristicsRow> rows;
    for (double snr : config.characteristics.snr_db.values())
    {
        const double sigma2 = db_to_linear(snr);
        Scenario s = config.scenario;
        s.sources[0].power = sigma2;
        const HermitianMatrix r = population_covariance(s).hermitian();
        for (Beamformer b : config.beamformers)
        {
            if (b != Beamformer::Le && b != Beamformer::Cb && b != Beamformer::Mv)
                continue;
            CharacteristicsRow row;
            row.snr_db = snr;
            row.beamformer = beamformer_name(b);
            row.b_sl = b_sl;
            try
            {
                row.hpbw_analytic_deg =
                    hpbw_analytic(b, sigma2, geom, theta1) * 180.0 / pi;
            }
            catch (const HalfPowerUndefined &)
            {
            }
            row.pslr_analytic_db = linear_to_db(pslr_analytic(b, sigma2, b_sl));

            const Spectrum spec =
                compute_spectrum(r, geom, grid, b, spectrum_options(config));
            try
            {
                row.hpbw_measured_deg = measure_hpbw(spec, theta1) * 180.0 / pi;
            }
            catch (const HalfPowerUndefined &)
            {
            }
            const double pslr = measure_pslr(spec, theta1, &geom, theta1);
            if (std::isfinite(pslr))
                row.pslr_measured_db = linear_to_db(pslr);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<MultipathRow> run_multipath_grid(const ExperimentConfig &config)
{
    const bool exact = config.multipath.include_exact;
    if (exact && config.scenario.sources.size() < 2)
        throw std::invalid_argument(
            "run_multipath_grid: exact columns need a two-ray scenario");

    std::vector<MultipathRow> rows;
    for (double s1_db : config.multipath.sigma1_db.values())
    {
        for (double s2_db : config.multipath.sigma2_db.values())
        {
            const double s1 = db_to_linear(s1_db);
            const double s2 = db_to_linear(s2_db);

            std::optional<HermitianMatrix> r2;
            std::optional<Eigen::VectorXcd> a1;
            if (exact)
            {
                Scenario s = config.scenario;
                s.sources[0].power = s1;
                s.sources[1].power = s2;
                r2 = population_covariance(s).hermitian();
                a1 = s.geometry.steering(s.sources[0].direction);
            }

            for (Beamformer b : config.beamformers)
            {
                if (b != Beamformer::Le && b != Beamformer::Mv && b != Beamformer::Cb)
                    continue;
                MultipathRow row;
                row.sigma1_db = s1_db;
                row.sigma2_db = s2_db;
                row.beamformer = beamformer_name(b);
                row.approx_db = linear_to_db(
                    multipath_power_estimate(b, s1, s2, config.scenario.noise_power));
                if (exact)
                {
                    double v = 0.0;
                    switch (b)
                    {
                    case Beamformer::Le:
                        v = p_le(HpdMatrix(*r2), *a1, config.scenario.noise_power);
                        break;
                    case Beamformer::Mv:
                        v = p_mv(HpdMatrix(*r2), *a1);
                        break;
                    default:
                        v = p_cb(*r2, *a1);
                        break;
                    }
                    row.exact_db = linear_to_db(v);
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

} // namespace rdoa
