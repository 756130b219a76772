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

#include "rdoa/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rdoa
{

namespace
{

ArrayGeometry geometry_from_json(const nlohmann::json &j)
{
    const std::string kind = j.value("kind", "ula");
    if (kind == "ula")
        return ArrayGeometry::ula(j.at("elements").get<int>(), j.at("spacing_wl").get<double>());
    if (kind == "generic")
    {
        std::vector<std::array<double, 2>> pos;
        for (const auto &p : j.at("positions_wl"))
            pos.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        return ArrayGeometry::generic(std::move(pos));
    }
    throw std::invalid_argument("geometry kind must be \"ula\" or \"generic\"");
}

nlohmann::json geometry_to_json(const ArrayGeometry &g)
{
    nlohmann::json j;
    if (g.is_ula())
    {
        j["kind"] = "ula";
        j["elements"] = g.size();
        j["spacing_wl"] = g.spacing();
    }
    else
    {
        j["kind"] = "generic";
        j["elements"] = g.size();
    }
    return j;
}

SweepRange sweep_from_json(const nlohmann::json &j, SweepRange fallback)
{
    SweepRange r = fallback;
    if (j.contains("start"))
        r.start = j.at("start").get<double>();
    if (j.contains("stop"))
        r.stop = j.at("stop").get<double>();
    if (j.contains("step"))
        r.step = j.at("step").get<double>();
    return r;
}

} // namespace

Scenario scenario_from_json(const nlohmann::json &j)
{
    Scenario s{geometry_from_json(j.at("geometry")), {}, 1.0, 1, 0,
               SignalModel::ConstantModulus};
    for (const auto &js : j.at("sources"))
    {
        Source src;
        src.direction = Direction::from_degrees(js.at("direction_deg").get<double>());
        src.power = db_to_linear(js.at("power_db").get<double>());
        src.coherence_group = js.value("coherence_group", static_cast<int>(s.sources.size()));
        src.phasor = std::polar(1.0, js.value("phase_rad", 0.0));
        s.sources.push_back(src);
    }
    s.noise_power = db_to_linear(j.value("noise_power_db", 0.0));
    s.snapshots = j.value("snapshots", 1);
    s.seed = j.value("seed", std::uint64_t{0});
    const std::string model = j.value("signal_model", "constant_modulus");
    if (model == "constant_modulus")
        s.signal_model = SignalModel::ConstantModulus;
    else if (model == "complex_gaussian")
        s.signal_model = SignalModel::ComplexGaussian;
    else
        throw std::invalid_argument("signal_model must be constant_modulus or complex_gaussian");
    validate_scenario(s);
    return s;
}

nlohmann::json scenario_to_json(const Scenario &s)
{
    nlohmann::json j;
    j["geometry"] = geometry_to_json(s.geometry);
    j["sources"] = nlohmann::json::array();
    for (const auto &src : s.sources)
    {
        nlohmann::json js;
        js["direction_deg"] = src.direction.degrees();
        js["power_db"] = linear_to_db(src.power);
        js["coherence_group"] = src.coherence_group;
        js["phase_rad"] = std::arg(src.phasor);
        j["sources"].push_back(js);
    }
    j["noise_power_db"] = linear_to_db(s.noise_power);
    j["snapshots"] = s.snapshots;
    j["seed"] = s.seed;
    j["signal_model"] =
        s.signal_model == SignalModel::ConstantModulus ? "constant_modulus" : "complex_gaussian";
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json &j)
{
    ExperimentConfig c;
    c.kind = experiment_kind_from_name(j.at("experiment").get<std::string>());
    c.scenario = scenario_from_json(j.at("scenario"));
    if (j.contains("seed"))
        c.scenario.seed = j.at("seed").get<std::uint64_t>();
    for (const auto &name : j.at("beamformers"))
        c.beamformers.push_back(beamformer_from_name(name.get<std::string>()));
    if (c.beamformers.empty())
        throw std::invalid_argument("config: at least one beamformer required");
    if (j.contains("grid"))
    {
        const auto &g = j.at("grid");
        c.grid_start_deg = g.value("start_deg", 0.0);
        c.grid_stop_deg = g.value("stop_deg", 180.0);
        c.grid_step_deg = g.value("step_deg", 0.2);
    }
    c.trials = j.value("trials", 1);
    if (c.trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    c.population = j.value("population", false);
    if (j.contains("ai_grid"))
    {
        const auto &g = j.at("ai_grid");
        c.ai_grid.min_db = g.value("min_db", c.ai_grid.min_db);
        c.ai_grid.max_db = g.value("max_db", c.ai_grid.max_db);
        c.ai_grid.points = g.value("points", c.ai_grid.points);
    }
    if (j.contains("rmse"))
    {
        const auto &r = j.at("rmse");
        c.rmse.snr_db = sweep_from_json(r.value("snr_db", nlohmann::json::object()),
                                        c.rmse.snr_db);
        const std::string assoc = r.value("association", "nearest");
        if (assoc == "nearest")
            c.rmse.association = Association::Nearest;
        else if (assoc == "power_rank")
            c.rmse.association = Association::PowerRank;
        else
            throw std::invalid_argument("rmse.association must be nearest or power_rank");
    }
    if (j.contains("characteristics"))
        c.characteristics.snr_db =
            sweep_from_json(j.at("characteristics").value("snr_db", nlohmann::json::object()),
                            c.characteristics.snr_db);
    if (j.contains("multipath"))
    {
        const auto &m = j.at("multipath");
        c.multipath.sigma1_db = sweep_from_json(m.value("sigma1_db", nlohmann::json::object()),
                                                c.multipath.sigma1_db);
        c.multipath.sigma2_db = sweep_from_json(m.value("sigma2_db", nlohmann::json::object()),
                                                c.multipath.sigma2_db);
        c.multipath.include_exact = m.value("include_exact", false);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace
{
std::string cell_to_csv(const nlohmann::json &cell)
{
    if (cell.is_null())
        return "";
    if (cell.is_string())
        return cell.get<std::string>();
    if (cell.is_number_float())
        return format_double(cell.get<double>());
    return cell.dump();
}
} // namespace

void write_table_csv(const Table &t, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto &row : t.rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << cell_to_csv(row[i]);
        out << "\n";
    }
}

void write_table_json(const Table &t, const std::filesystem::path &path)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : t.rows)
    {
        nlohmann::json obj;
        for (std::size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
            obj[t.columns[i]] = row[i];
        rows.push_back(std::move(obj));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path.string());
    out << rows.dump(2) << "\n";
}

nlohmann::json error_record(const std::string &kind, const std::string &message)
{
    return nlohmann::json{{"error", kind}, {"message", message}};
}

namespace
{

nlohmann::json opt_cell(const std::optional<double> &v)
{
    if (!v)
        return nullptr;
    return *v;
}

Table spectrum_table(const std::vector<Spectrum> &spectra)
{
    Table t;
    t.columns = {"theta_deg", "power_linear", "power_db", "beamformer"};
    for (const auto &s : spectra)
        for (std::size_t i = 0; i < s.grid.size(); ++i)
            t.rows.push_back({s.grid[i].degrees(), s.power[i],
                              linear_to_db_floored(s.power[i]), s.label});
    return t;
}

Table sleeve_table(const std::vector<SleeveRow> &rows)
{
    Table t;
    t.columns = {"theta_deg", "beamformer", "p05_linear", "p50_linear", "p95_linear",
                 "p05_db",    "p50_db",     "p95_db"};
    for (const auto &r : rows)
        t.rows.push_back({r.theta_deg, r.beamformer, r.p05, r.p50, r.p95,
                          linear_to_db_floored(r.p05), linear_to_db_floored(r.p50),
                          linear_to_db_floored(r.p95)});
    return t;
}

Table rmse_table(const std::vector<RmseResult> &rows)
{
    Table t;
    t.columns = {"snr_db", "beamformer", "source_index", "rmse_deg", "trials", "failures"};
    for (const auto &r : rows)
        t.rows.push_back({r.snr_db, r.beamformer, r.source_index, r.rmse_deg, r.trials,
                          r.failures});
    return t;
}

Table characteristics_table(const std::vector<CharacteristicsRow> &rows)
{
    Table t;
    t.columns = {"snr_db",           "beamformer",        "b_sl",
                 "hpbw_analytic_deg", "hpbw_measured_deg", "pslr_analytic_db",
                 "pslr_measured_db"};
    for (const auto &r : rows)
        t.rows.push_back({r.snr_db, r.beamformer, r.b_sl, opt_cell(r.hpbw_analytic_deg),
                          opt_cell(r.hpbw_measured_deg), opt_cell(r.pslr_analytic_db),
                          opt_cell(r.pslr_measured_db)});
    return t;
}

Table multipath_table(const std::vector<MultipathRow> &rows)
{
    Table t;
    t.columns = {"sigma1_db", "sigma2_db", "beamformer", "approx_db", "exact_db"};
    for (const auto &r : rows)
        t.rows.push_back({r.sigma1_db, r.sigma2_db, r.beamformer, r.approx_db,
                          opt_cell(r.exact_db)});
    return t;
}

} // namespace

std::vector<std::filesystem::path> run_and_write(const ExperimentConfig &config,
                                                 const std::filesystem::path &out_dir,
                                                 OutputFormat format)
{
    Table table;
    switch (config.kind)
    {
    case ExperimentKind::Spectrum:
        table = spectrum_table(run_spectrum(config));
        break;
    case ExperimentKind::Sleeve:
        table = sleeve_table(run_sleeve(config));
        break;
    case ExperimentKind::RmseSweep:
        table = rmse_table(run_rmse_sweep(config));
        break;
    case ExperimentKind::CharacteristicsSweep:
        table = characteristics_table(run_characteristics_sweep(config));
        break;
    case ExperimentKind::MultipathGrid:
        table = multipath_table(run_multipath_grid(config));
        break;
    }
    std::filesystem::create_directories(out_dir);
    const std::string base = experiment_kind_name(config.kind);
    const std::filesystem::path path =
        out_dir / (base + (format == OutputFormat::Csv ? ".csv" : ".json"));
    if (format == OutputFormat::Csv)
        write_table_csv(table, path);
    else
        write_table_json(table, path);
    return {path};
}

} // namespace rdoa
