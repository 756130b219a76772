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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rdoa/io.hpp"

namespace
{

struct CliOptions
{
    std::string config_path;
    std::string out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool population = false;
};

void add_common_flags(CLI::App *cmd, CliOptions &opt)
{
    cmd->add_option("--config", opt.config_path, "experiment configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opt.out_dir, "output directory (default: current)");
    cmd->add_option("--format", opt.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", opt.seed, "override the config seed")
        ->each([&opt](const std::string &) { opt.seed_set = true; });
    cmd->add_flag("--population", opt.population,
                  "use the population covariance instead of a simulated sample");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"covariance-fitting DoA estimation experiments"};
    app.require_subcommand(1);

    CliOptions opt;
    const char *kinds[] = {"spectrum", "sleeve", "rmse", "characteristics", "multipath"};
    const char *descr[] = {
        "spatial spectra for the configured beamformers",
        "5/50/95 power percentile bands over repeated trials",
        "DoA RMSE across an SNR sweep",
        "analytic and measured beamwidth / sidelobe-ratio sweep",
        "two-ray power-estimate grid",
    };
    for (int i = 0; i < 5; ++i)
        add_common_flags(app.add_subcommand(kinds[i], descr[i]), opt);

    CLI11_PARSE(app, argc, argv);

    const std::string requested = app.get_subcommands().front()->get_name();
    try
    {
        rdoa::ExperimentConfig config = rdoa::load_config(opt.config_path);
        const auto kind = rdoa::experiment_kind_from_name(requested);
        if (config.kind != kind)
            throw std::invalid_argument("config is for experiment \"" +
                                        rdoa::experiment_kind_name(config.kind) +
                                        "\" but subcommand \"" + requested + "\" was given");
        if (opt.seed_set)
            config.scenario.seed = opt.seed;
        if (opt.population)
            config.population = true;
        const auto format =
            opt.format == "json" ? rdoa::OutputFormat::Json : rdoa::OutputFormat::Csv;
        const auto written = rdoa::run_and_write(config, opt.out_dir, format);
        for (const auto &p : written)
            std::cout << p.string() << "\n";
        return 0;
    }
    catch (const rdoa::DegenerateCovariance &e)
    {
        std::cerr << rdoa::error_record("degenerate_covariance", e.what()).dump() << "\n";
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << rdoa::error_record("invalid_argument", e.what()).dump() << "\n";
    }
    catch (const std::exception &e)
    {
        std::cerr << rdoa::error_record("runtime_error", e.what()).dump() << "\n";
    }
    return 1;
}
