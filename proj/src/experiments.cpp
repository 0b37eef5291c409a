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

#include "cirsim/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "cirsim/link.hpp"
#include "cirsim/parallel.hpp"
#include "cirsim/phase.hpp"

namespace cirsim
{

namespace
{

constexpr double kFlatRadius = 1e6; // stand-in for a planar surface

std::uint64_t milli(double v) { return static_cast<std::uint64_t>(std::llround(v * 1000.0)); }

std::vector<double> angle_grid(double lo, double hi, double step)
{
    std::vector<double> g;
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i)
        g.push_back(lo + step * double(i));
    return g;
}

void finish_curve(GainCurve &c)
{
    const auto peak = std::max_element(c.cirs_db.begin(), c.cirs_db.end()) - c.cirs_db.begin();
    c.peak_db = c.cirs_db[static_cast<std::size_t>(peak)];
    c.peak_angle_deg = c.angle_deg[static_cast<std::size_t>(peak)];
    c.width_deg = angular_width(c.angle_deg, c.cirs_db);
}

Vec3 plan_unit(const Vec3 &from, const Vec3 &to) { return Vec3{to.x - from.x, to.y - from.y, 0.0}.normalized(); }

} // namespace

Rng trial_rng(std::uint64_t master, Purpose purpose, double rho, double r_d, long trial, std::uint64_t extra)
{
    return make_rng(master, {static_cast<std::uint64_t>(purpose), milli(rho), milli(r_d),
                             static_cast<std::uint64_t>(trial), extra});
}

TrafficConfig traffic_config(const SimConfig &config, double rho, double r_d)
{
    TrafficConfig t;
    t.road = {config.lanes, config.lane_width, config.road_length};
    t.vehicle = {config.vehicle_length, config.vehicle_width, config.vehicle_height, config.door_height};
    t.rho = rho;
    t.r_d = r_d;
    t.placement = config.tx_placement == "center" ? TxPlacement::road_center : TxPlacement::road_start;
    return t;
}

PathLossParams pathloss_params(const SimConfig &config)
{
    return {config.sigma_sh_db, config.mu_b1_db, config.mu_b_step_db, config.sigma_b_db};
}

CandidateRules candidate_rules(const SimConfig &config)
{
    return {config.Ny * config.element_spacing_lambda * config.lambda(), config.max_range};
}

int elements_for_area(double area_m2, double spacing)
{
    int n = static_cast<int>(std::ceil(std::sqrt(area_m2) / spacing - 1e-9));
    return n % 2 == 0 ? n : n + 1;
}

double GainCurve::at(const std::vector<double> &grid, const std::vector<double> &values, double angle)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (std::abs(grid[i] - angle) < std::abs(grid[best] - angle))
            best = i;
    return values.at(best);
}

GainCurve gain_elevation_curve(double radius, double freq_ghz, double area_m2, double spacing_lambda,
                               double step_deg, double q)
{
    const double lambda = wavelength_from_frequency(freq_ghz * 1e9);
    const double d = spacing_lambda * lambda;
    GainCurve c;
    c.radius_m = radius;
    c.freq_ghz = freq_ghz;
    c.M = c.N = elements_for_area(area_m2, d);
    const auto curved = CirsGeometry::build(c.M, c.N, radius, d, d);
    const auto flat = CirsGeometry::build(c.M, c.N, kFlatRadius, d, d);
    const auto cirs = perpendicular_phase(curved, lambda);
    const auto zero = PhaseProfile::zeros(c.M, c.N);
    c.angle_deg = angle_grid(0.0, 180.0, step_deg);
    for (double a : c.angle_deg)
    {
        const double phi_i = deg2rad(a), phi_o = kPi - phi_i;
        c.cirs_db.push_back(channel_gain_elevation(curved, cirs, phi_i, phi_o, lambda, q));
        c.flat_db.push_back(channel_gain_elevation(flat, zero, phi_i, phi_o, lambda, q));
        c.bare_db.push_back(channel_gain_elevation(curved, zero, phi_i, phi_o, lambda, q));
    }
    finish_curve(c);
    return c;
}

GainCurve gain_azimuth_curve(double radius, double freq_ghz, double area_m2, double spacing_lambda,
                             double theta_bar, double step_deg, double q)
{
    const double lambda = wavelength_from_frequency(freq_ghz * 1e9);
    const double d = spacing_lambda * lambda;
    GainCurve c;
    c.radius_m = radius;
    c.freq_ghz = freq_ghz;
    c.M = c.N = elements_for_area(area_m2, d);
    const auto curved = CirsGeometry::build(c.M, c.N, radius, d, d);
    const auto flat = CirsGeometry::build(c.M, c.N, kFlatRadius, d, d);
    const auto cirs = preconfigured_phase(curved, theta_bar, lambda);
    const auto zero = PhaseProfile::zeros(c.M, c.N);
    c.angle_deg = angle_grid(0.0, 90.0, step_deg);
    for (double a : c.angle_deg)
    {
        const double theta_i = deg2rad(a);
        c.cirs_db.push_back(channel_gain_azimuth(curved, cirs, theta_i, lambda, q));
        c.flat_db.push_back(channel_gain_azimuth(flat, zero, theta_i, lambda, q));
        c.bare_db.push_back(channel_gain_azimuth(curved, zero, theta_i, lambda, q));
    }
    finish_curve(c);
    return c;
}

std::vector<GainCurve> run_gain_elevation(const SimConfig &config)
{
    config.validate();
    std::vector<GainCurve> out(config.radii_m.size());
    parallel_for(out.size(), static_cast<unsigned>(config.threads), [&](std::size_t i) {
        out[i] = gain_elevation_curve(config.radii_m[i], config.freq_ghz, config.area_m2,
                                      config.element_spacing_lambda, config.gain_step_deg, config.q);
    });
    return out;
}

std::vector<GainCurve> run_gain_azimuth(const SimConfig &config)
{
    config.validate();
    std::vector<GainCurve> out(config.radii_m.size());
    parallel_for(out.size(), static_cast<unsigned>(config.threads), [&](std::size_t i) {
        out[i] = gain_azimuth_curve(config.radii_m[i], config.freq_ghz, config.area_m2, config.element_spacing_lambda,
                                    deg2rad(config.gain_theta_bar_deg), config.gain_step_deg, config.q);
    });
    return out;
}

std::vector<GainCurve> run_gain_frequency(const SimConfig &config)
{
    config.validate();
    std::vector<GainCurve> out(config.gain_freqs_ghz.size());
    parallel_for(out.size(), static_cast<unsigned>(config.threads), [&](std::size_t i) {
        out[i] = gain_elevation_curve(config.radii_m.front(), config.gain_freqs_ghz[i], config.area_m2,
                                      config.element_spacing_lambda, config.gain_step_deg, config.q);
    });
    return out;
}

const char *mode_name(BlockageMode mode)
{
    switch (mode)
    {
    case BlockageMode::direct:
        return "direct";
    case BlockageMode::with_irs:
        return "cirs";
    case BlockageMode::with_ris:
        return "cris";
    }
    return "?";
}

std::vector<BlockagePoint> run_blockage_sweep(const SimConfig &config)
{
    config.validate();
    const CandidateRules rules = candidate_rules(config);
    constexpr BlockageMode modes[] = {BlockageMode::direct, BlockageMode::with_irs, BlockageMode::with_ris};
    std::vector<BlockagePoint> out;
    for (double r_d : config.rd_list)
        for (double rho : config.rho_list)
        {
            const TrafficConfig tc = traffic_config(config, rho, r_d);
            struct Slot
            {
                bool event[3];
                bool saturated;
            };
            std::vector<Slot> slots(static_cast<std::size_t>(config.trials));
            parallel_for(slots.size(), static_cast<unsigned>(config.threads), [&](std::size_t t) {
                Rng rng = trial_rng(config.seed, Purpose::traffic, rho, r_d, static_cast<long>(t));
                const Scenario s = generate_traffic(tc, rng);
                for (int m = 0; m < 3; ++m)
                    slots[t].event[m] = blockage_event(s, modes[m], rules);
                slots[t].saturated = s.saturated > 0;
            });
            for (int m = 0; m < 3; ++m)
            {
                BlockagePoint p;
                p.rho = rho;
                p.r_d = r_d;
                p.mode = modes[m];
                p.trials = config.trials;
                for (const auto &s : slots)
                {
                    p.events += s.event[m];
                    p.saturated_scenes += s.saturated;
                }
                p.probability = wilson_interval(p.events, p.trials);
                out.push_back(p);
            }
        }
    return out;
}

int snr_elements_m(const SimConfig &config) { return config.reduced_elements > 0 ? config.reduced_elements : config.Mx; }
int snr_elements_n(const SimConfig &config) { return config.reduced_elements > 0 ? config.reduced_elements : config.Ny; }

double reduced_amplitude_scale(const SimConfig &config)
{
    // Coherent cascaded amplitude grows linearly with the element count.
    return double(config.Mx) * double(config.Ny) / (double(snr_elements_m(config)) * double(snr_elements_n(config)));
}

SceneSnr evaluate_scene(const SimConfig &config, const Scenario &scenario, double radius, double rho, double r_d,
                        long trial)
{
    const double lambda = config.lambda();
    const double d = config.element_spacing_lambda * lambda;
    const int M = snr_elements_m(config), N = snr_elements_n(config);
    const double scale = reduced_amplitude_scale(config);
    const PathLossParams plp = pathloss_params(config);
    const CandidateRules rules = candidate_rules(config);
    LinkParams params;
    params.lambda = lambda;
    params.K = config.K;
    params.q = config.q;
    params.antenna_spacing = config.antenna_spacing_lambda * lambda;

    const Vec3 p_t = scenario.p_t(), p_r = scenario.p_r();
    const Endpoint tx{p_t, plan_unit(p_t, p_r)}, rx{p_r, plan_unit(p_r, p_t)};

    SceneSnr out;
    Rng ch = trial_rng(config.seed, Purpose::channel, rho, r_d, trial);
    const int b_direct = count_blockers(scenario, p_t, p_r);
    out.direct_blocked = b_direct > 0;
    const PathLossSample pl = sample_direct_pathloss((p_r - p_t).norm(), config.freq_ghz, b_direct, plp, ch);
    const ComplexMatrix H_d = direct_channel(tx, rx, params, pl, ch);

    const auto irs_profile = preconfigured_phase(CirsGeometry::build(M, N, radius, d, d),
                                                 deg2rad(config.theta_bar_deg), lambda);

    auto evaluate = [&](const std::vector<RelayCandidate> &cands, bool reconfigurable, int &winner) {
        std::vector<Vec3> doors;
        for (const auto &c : cands)
            doors.push_back(scenario.door_center(c.vehicle, c.side));
        const Codebook cb = build_codebooks(p_t, p_r, doors, config.K);
        std::vector<double> powers;
        powers.push_back(received_power(H_d, cb.entries[0].f, cb.entries[0].w));
        for (std::size_t i = 0; i < cands.size(); ++i)
        {
            const RelayCandidate &c = cands[i];
            const auto geometry =
                CirsGeometry::build(M, N, radius, d, d, scenario.door_pose(c.vehicle, c.side, N, d));
            Rng rr = trial_rng(config.seed, Purpose::relay, rho, r_d, trial,
                               2u * static_cast<std::uint64_t>(c.vehicle) + (c.side == Side::right ? 1u : 0u));
            const double xi_t = uniform_phase(rr);
            const double xi_r = uniform_phase(rr);
            const double a1 = sample_blockage_db(count_blockers(scenario, p_t, doors[i], {c.vehicle}), plp, rr);
            const double a2 = sample_blockage_db(count_blockers(scenario, doors[i], p_r, {c.vehicle}), plp, rr);
            PhaseProfile ris_profile;
            if (reconfigurable)
            {
                const AnglePair inc = angles_of(geometry.to_door_frame(p_t - doors[i]));
                const AnglePair refl = angles_of(geometry.to_door_frame(p_r - doors[i]));
                ris_profile = optimal_phase(geometry, inc, refl, lambda);
            }
            const auto &e = cb.entries[i + 1];
            const cplx casc = cascaded_response(geometry, reconfigurable ? ris_profile : irs_profile, tx, rx, params,
                                                xi_t, xi_r, e.f, e.w);
            const cplx direct = e.w.dot(H_d * e.f);
            powers.push_back(std::norm(direct + casc * (scale * std::pow(10.0, -(a1 + a2) / 20.0))));
        }
        const LinkResult r = select_from_powers(cb, std::move(powers));
        winner = r.relay;
        return snr_db_from_power(r.power, config.signal_power_dbm, config.noise_power_dbm, config.K);
    };

    int unused = SceneSnr::kNoRelay;
    out.direct_db = evaluate({}, false, unused);
    out.irs_db = evaluate(candidate_relays_irs(scenario, rules.door_length), false, out.irs_relay);
    out.ris_db = evaluate(candidate_relays_ris(scenario, rules.max_range), true, out.ris_relay);
    return out;
}

std::vector<SnrSeries> run_snr_ecdf(const SimConfig &config)
{
    config.validate();
    constexpr BlockageMode modes[] = {BlockageMode::direct, BlockageMode::with_irs, BlockageMode::with_ris};
    std::vector<SnrSeries> out;
    for (double r_d : config.rd_list)
        for (double rho : config.snr_rho_list)
        {
            const TrafficConfig tc = traffic_config(config, rho, r_d);
            const std::size_t nR = config.radii_m.size();
            const auto trials = static_cast<std::size_t>(config.snr_trials);
            std::vector<SceneSnr> slots(trials * nR);
            parallel_for(trials, static_cast<unsigned>(config.threads), [&](std::size_t t) {
                Rng rng = trial_rng(config.seed, Purpose::traffic, rho, r_d, static_cast<long>(t));
                const Scenario s = generate_traffic(tc, rng);
                for (std::size_t k = 0; k < nR; ++k)
                    slots[t * nR + k] = evaluate_scene(config, s, config.radii_m[k], rho, r_d, static_cast<long>(t));
            });
            for (std::size_t k = 0; k < nR; ++k)
                for (int m = 0; m < 3; ++m)
                {
                    SnrSeries series;
                    series.mode = modes[m];
                    series.radius_m = config.radii_m[k];
                    series.rho = rho;
                    series.r_d = r_d;
                    for (std::size_t t = 0; t < trials; ++t)
                    {
                        const SceneSnr &s = slots[t * nR + k];
                        series.snr_db.push_back(m == 0 ? s.direct_db : (m == 1 ? s.irs_db : s.ris_db));
                        series.direct_blocked += s.direct_blocked;
                        series.relay_selected +=
                            (m == 1 && s.irs_relay != SceneSnr::kNoRelay) || (m == 2 && s.ris_relay != SceneSnr::kNoRelay);
                    }
                    series.ecdf = Ecdf(series.snr_db);
                    Rng boot = trial_rng(config.seed, Purpose::bootstrap, rho, r_d, 0,
                                         milli(series.radius_m) * 4 + static_cast<std::uint64_t>(m));
                    series.median_ci = bootstrap_median_ci(series.snr_db, config.bootstrap_resamples, boot);
                    out.push_back(std::move(series));
                }
        }
    return out;
}

AnglePdf run_angle_pdf(const SimConfig &config)
{
    config.validate();
    const TrafficConfig tc = traffic_config(config, config.rho, config.r_d);
    const CandidateRules rules = candidate_rules(config);
    const double d = config.element_spacing_lambda * config.lambda();
    struct Slot
    {
        std::vector<double> elevation, azimuth;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(config.trials));
    parallel_for(slots.size(), static_cast<unsigned>(config.threads), [&](std::size_t t) {
        Rng rng = trial_rng(config.seed, Purpose::traffic, config.rho, config.r_d, static_cast<long>(t));
        const Scenario s = generate_traffic(tc, rng);
        for (const auto &c : candidate_relays_ris(s, rules.max_range))
        {
            const MountPose pose = s.door_pose(c.vehicle, c.side, config.Ny, d);
            const Vec3 local = rotate_z(s.p_t() - s.door_center(c.vehicle, c.side), -pose.yaw);
            const AnglePair a = angles_of(local);
            slots[t].elevation.push_back(rad2deg(a.phi));
            slots[t].azimuth.push_back(rad2deg(a.theta));
        }
    });
    std::vector<double> elevation, azimuth;
    for (const auto &s : slots)
    {
        elevation.insert(elevation.end(), s.elevation.begin(), s.elevation.end());
        azimuth.insert(azimuth.end(), s.azimuth.begin(), s.azimuth.end());
    }
    AnglePdf pdf;
    pdf.samples = static_cast<long>(elevation.size());
    pdf.elevation = histogram_density(elevation, 0.0, 180.0, config.pdf_bins);
    pdf.azimuth = histogram_density(azimuth, -90.0, 90.0, config.pdf_bins);
    pdf.elevation_mean_deg = mean(elevation);
    pdf.elevation_std_deg = stddev(elevation);
    double abs_sum = 0.0;
    for (double a : azimuth)
        abs_sum += std::abs(a);
    pdf.azimuth_mean_abs_deg = azimuth.empty() ? 0.0 : abs_sum / double(azimuth.size());
    return pdf;
}

} // namespace cirsim
