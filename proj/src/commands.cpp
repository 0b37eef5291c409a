// SPDX-License-Identifier: Apache-2.0
//
// cirsim: conformal metasurface relays for mmWave V2V links
// Copyright (C) 2026 cirsim developers
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

#include "cirsim/commands.hpp"

#include <cstdio>
#include <system_error>

#include "cirsim/phase.hpp"
#include "cirsim/types.hpp"

namespace cirsim
{

namespace
{

namespace fs = std::filesystem;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

const char *side_name(Side s) { return s == Side::left ? "left" : "right"; }

struct Writer
{
    const SimConfig &config;
    std::string_view subcommand;
    fs::path dir;
    std::vector<fs::path> written;

    void csv(const std::string &name, const Table &t)
    {
        const fs::path p = dir / name;
        write_csv(p, t);
        write_sidecar(p, config, subcommand);
        written.push_back(p);
    }
    void json(const std::string &name, const nlohmann::ordered_json &j)
    {
        const fs::path p = dir / name;
        write_text(p, j.dump(2) + "\n");
        write_sidecar(p, config, subcommand);
        written.push_back(p);
    }
};

} // namespace

std::vector<std::string> command_names()
{
    return {"gain-elevation", "gain-azimuth", "gain-frequency", "blockage",     "snr-ecdf",
            "angle-pdf",      "phase-dump",   "scenario-dump",  "geometry-dump"};
}

Table gain_table(const std::vector<GainCurve> &curves, bool with_frequency)
{
    Table t;
    if (with_frequency)
        t.columns.push_back("freq_ghz");
    for (const char *c : {"angle_deg", "gain_db_cirs", "gain_db_flat", "gain_db_bare"})
        t.columns.emplace_back(c);
    for (const auto &c : curves)
        for (std::size_t i = 0; i < c.angle_deg.size(); ++i)
        {
            std::vector<Cell> row;
            if (with_frequency)
                row.emplace_back(c.freq_ghz);
            row.insert(row.end(), {c.angle_deg[i], c.cirs_db[i], c.flat_db[i], c.bare_db[i]});
            t.add(std::move(row));
        }
    return t;
}

Table gain_summary_table(const std::vector<GainCurve> &curves)
{
    Table t{{"radius_m", "freq_ghz", "M", "N", "peak_angle_deg", "peak_db_cirs", "width_deg"}, {}};
    for (const auto &c : curves)
        t.add({c.radius_m, c.freq_ghz, (long long)c.M, (long long)c.N, c.peak_angle_deg, c.peak_db, c.width_deg});
    return t;
}

Table blockage_table(const std::vector<BlockagePoint> &points)
{
    Table t{{"rho", "r_d", "mode", "p_block", "ci_low", "ci_high", "trials"}, {}};
    for (const auto &p : points)
        t.add({p.rho, p.r_d, std::string(mode_name(p.mode)), p.probability.p, p.probability.ci.lo,
               p.probability.ci.hi, (long long)p.trials});
    return t;
}

Table snr_summary_table(const std::vector<SnrSeries> &series)
{
    Table t{{"mode", "radius_m", "rho", "r_d", "median_db", "median_ci_low", "median_ci_high", "p10_db", "p90_db",
             "relay_selected", "direct_blocked", "trials"},
            {}};
    for (const auto &s : series)
        t.add({std::string(mode_name(s.mode)), s.radius_m, s.rho, s.r_d, s.ecdf.median(), s.median_ci.lo,
               s.median_ci.hi, s.ecdf.quantile(0.1), s.ecdf.quantile(0.9), (long long)s.relay_selected,
               (long long)s.direct_blocked, (long long)s.snr_db.size()});
    return t;
}

Table phase_table(const CirsGeometry &geometry, const PhaseProfile &profile)
{
    Table t{{"m", "n", "psi_m", "phase_rad", "amplitude"}, {}};
    for (int row = 0; row < geometry.rows(); ++row)
        for (int n = 0; n < geometry.cols(); ++n)
        {
            const std::size_t ell = geometry.flat_index(row, n);
            t.add({(long long)geometry.m_of_row(row), (long long)n, geometry.psi(row), profile.phase(ell),
                   profile.amplitude(ell)});
        }
    return t;
}

Table geometry_table(const CirsGeometry &geometry)
{
    Table t{{"m", "n", "psi_m", "x", "y", "z", "nx", "ny", "nz"}, {}};
    for (int row = 0; row < geometry.rows(); ++row)
        for (int n = 0; n < geometry.cols(); ++n)
        {
            const Element e = geometry.element(row, n);
            t.add({(long long)geometry.m_of_row(row), (long long)n, e.psi, e.position.x, e.position.y, e.position.z,
                   e.normal.x, e.normal.y, e.normal.z});
        }
    return t;
}

nlohmann::ordered_json scenario_json(const Scenario &s, const CandidateRules &rules)
{
    nlohmann::ordered_json j;
    j["road"] = {{"lanes", s.road.lanes}, {"lane_width", s.road.lane_width}, {"road_length", s.road.road_length}};
    j["vehicle_box"] = {{"length", s.vehicle.length}, {"width", s.vehicle.width}, {"height", s.vehicle.height}};
    j["txv"] = s.txv;
    j["rxv"] = s.rxv;
    j["saturated"] = s.saturated;
    j["lane_draws"] = s.lane_draws;
    auto &vs = j["vehicles"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < s.vehicles.size(); ++i)
        vs.push_back({{"index", i}, {"lane", s.vehicles[i].lane}, {"x", s.vehicles[i].x}, {"y", s.vehicles[i].y}});
    auto relays = [&](const std::vector<RelayCandidate> &cands) {
        const BlockageReport rep = blockage_report(s, cands);
        auto arr = nlohmann::ordered_json::array();
        for (const auto &r : rep.relays)
            arr.push_back({{"vehicle", r.relay.vehicle},
                           {"side", side_name(r.relay.side)},
                           {"blockers_tx", r.first},
                           {"blockers_rx", r.second}});
        return arr;
    };
    j["direct_blockers"] = count_blockers(s, s.p_t(), s.p_r());
    j["cirs_candidates"] = relays(candidate_relays_irs(s, rules.door_length));
    j["cris_candidates"] = relays(candidate_relays_ris(s, rules.max_range));
    j["blocked"] = {{"direct", blockage_event(s, BlockageMode::direct, rules)},
                    {"cirs", blockage_event(s, BlockageMode::with_irs, rules)},
                    {"cris", blockage_event(s, BlockageMode::with_ris, rules)}};
    return j;
}

CirsGeometry geometry_from_config(const SimConfig &config)
{
    const double d = config.element_spacing_lambda * config.lambda();
    return CirsGeometry::build(config.Mx, config.Ny, config.R_m, d, d);
}

PhaseProfile phase_profile_from_config(const SimConfig &config, const CirsGeometry &g)
{
    const double lambda = config.lambda();
    const AnglePair inc{deg2rad(config.theta_i_deg), deg2rad(config.phi_i_deg)};
    const AnglePair refl{deg2rad(config.theta_o_deg), deg2rad(config.phi_o_deg)};
    const std::string &k = config.phase_kind;
    if (k == "optimal")
        return optimal_phase(g, inc, refl, lambda);
    if (k == "planar")
        return planar_phase(g.rows(), g.cols(), g.spacing_m(), g.spacing_n(), inc, refl, lambda);
    if (k == "elevation")
        return elevation_phase(g, inc.phi, refl.phi, lambda);
    if (k == "perpendicular")
        return perpendicular_phase(g, lambda);
    if (k == "preconfigured")
        return preconfigured_phase(g, deg2rad(config.theta_bar_deg), lambda);
    if (k == "azimuth")
        return azimuth_phase(g, inc.theta, refl.theta, lambda);
    fail("unknown phase_kind '" + k + "'");
}

std::vector<fs::path> run_command(const SimConfig &config, std::string_view subcommand, const fs::path &out_dir)
{
    config.validate();
    const auto names = command_names();
    if (std::find(names.begin(), names.end(), subcommand) == names.end())
        fail("unknown subcommand '" + std::string(subcommand) + "'");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        fail("cannot create output directory '" + out_dir.string() + "': " + ec.message(), ErrorCode::io);

    Writer w{config, subcommand, out_dir, {}};
    if (subcommand == "gain-elevation" || subcommand == "gain-azimuth")
    {
        const bool elev = subcommand == "gain-elevation";
        const auto curves = elev ? run_gain_elevation(config) : run_gain_azimuth(config);
        const std::string stem = elev ? "gain_elevation" : "gain_azimuth";
        for (const auto &c : curves)
            w.csv(stem + "_R" + num(c.radius_m) + ".csv", gain_table({c}, false));
        w.csv(stem + "_summary.csv", gain_summary_table(curves));
    }
    else if (subcommand == "gain-frequency")
    {
        const auto curves = run_gain_frequency(config);
        w.csv("gain_frequency.csv", gain_table(curves, true));
        w.csv("gain_frequency_summary.csv", gain_summary_table(curves));
    }
    else if (subcommand == "blockage")
    {
        w.csv("blockage.csv", blockage_table(run_blockage_sweep(config)));
    }
    else if (subcommand == "snr-ecdf")
    {
        const auto series = run_snr_ecdf(config);
        for (const auto &s : series)
        {
            Table t{{"snr_db", "ecdf"}, {}};
            const auto v = s.ecdf.values();
            for (std::size_t i = 0; i < v.size(); ++i)
                t.add({v[i], double(i + 1) / double(v.size())});
            w.csv("snr_ecdf_" + std::string(mode_name(s.mode)) + "_R" + num(s.radius_m) + "_rho" + num(s.rho) +
                      "_rd" + num(s.r_d) + ".csv",
                  t);
        }
        w.csv("snr_summary.csv", snr_summary_table(series));
    }
    else if (subcommand == "angle-pdf")
    {
        const AnglePdf pdf = run_angle_pdf(config);
        Table t{{"angle", "bin_center_deg", "density"}, {}};
        for (std::size_t i = 0; i < pdf.elevation.density.size(); ++i)
            t.add({std::string("elevation"), pdf.elevation.center(i), pdf.elevation.density[i]});
        for (std::size_t i = 0; i < pdf.azimuth.density.size(); ++i)
            t.add({std::string("azimuth"), pdf.azimuth.center(i), pdf.azimuth.density[i]});
        w.csv("angle_pdf.csv", t);
        w.csv("angle_pdf_summary.csv",
              Table{{"samples", "elevation_mean_deg", "elevation_std_deg", "azimuth_mean_abs_deg"},
                    {{(long long)pdf.samples, pdf.elevation_mean_deg, pdf.elevation_std_deg,
                      pdf.azimuth_mean_abs_deg}}});
    }
    else if (subcommand == "phase-dump")
    {
        const auto g = geometry_from_config(config);
        w.csv("phase.csv", phase_table(g, phase_profile_from_config(config, g)));
    }
    else if (subcommand == "geometry-dump")
    {
        w.csv("geometry.csv", geometry_table(geometry_from_config(config)));
    }
    else if (subcommand == "scenario-dump")
    {
        Rng rng = trial_rng(config.seed, Purpose::traffic, config.rho, config.r_d, 0);
        const Scenario s = generate_traffic(traffic_config(config, config.rho, config.r_d), rng);
        w.json("scenario.json", scenario_json(s, candidate_rules(config)));
    }
    return w.written;
}

} // namespace cirsim
