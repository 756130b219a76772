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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "rdoa/experiment.hpp"
#include "rdoa/signal.hpp"

namespace rdoa
{

/// Scenario from its JSON form (degrees, dB at the interface):
/// {
///   "geometry": {"kind": "ula", "elements": 9, "spacing_wl": 0.5}
///             | {"kind": "generic", "positions_wl": [[x, y], ...]},
///   "sources": [{"direction_deg": 30.0, "power_db": 0.0,
///                "coherence_group": 0, "phase_rad": 0.0}, ...],
///   "noise_power_db": 0.0,
///   "snapshots": 10,
///   "seed": 1,
///   "signal_model": "constant_modulus" | "complex_gaussian"
/// }
Scenario scenario_from_json(const nlohmann::json &j);
nlohmann::json scenario_to_json(const Scenario &s);

/// Full experiment configuration; see README for the schema.
ExperimentConfig config_from_json(const nlohmann::json &j);
ExperimentConfig load_config(const std::filesystem::path &path);

/// Column-ordered result table; cells carry JSON values so one table
/// serves both the CSV and the JSON emitters.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
};

std::string format_double(double v); // %.12g, fixed across runs

void write_table_csv(const Table &t, const std::filesystem::path &path);
void write_table_json(const Table &t, const std::filesystem::path &path);

/// Machine-readable failure record for the CLI.
nlohmann::json error_record(const std::string &kind, const std::string &message);

enum class OutputFormat
{
    Csv,
    Json
};

/// Run the configured experiment and write its result table(s) under
/// `out_dir` (one file named after the experiment kind). Returns the
/// written paths. Same config and seed produce byte-identical files.
std::vector<std::filesystem::path> run_and_write(const ExperimentConfig &config,
                                                 const std::filesystem::path &out_dir,
                                                 OutputFormat format);

} // namespace rdoa
