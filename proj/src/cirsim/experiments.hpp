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

#ifndef CIRSIM_EXPERIMENTS_HPP
#define CIRSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cirsim/channel.hpp"
#include "cirsim/config.hpp"
#include "cirsim/scenario.hpp"
#include "cirsim/stats.hpp"

namespace cirsim
{

// Substream purposes; part of the seeding contract, never renumber.
enum class Purpose : std::uint64_t
{
    traffic = 1,
    channel = 2,
    relay = 3,
    bootstrap = 4
};

Rng trial_rng(std::uint64_t master, Purpose purpose, double rho, double r_d, long trial, std::uint64_t extra = 0);

TrafficConfig traffic_config(const SimConfig &config, double rho, double r_d);
PathLossParams pathloss_params(const SimConfig &config);
CandidateRules candidate_rules(const SimConfig &config);

// Elements per axis covering sqrt(area) at spacing d, rounded up to even.
int elements_for_area(double area_m2, double spacing);

struct GainCurve
{
    double radius_m = 0.0;
    double freq_ghz = 0.0;
    int M = 0;
    int N = 0;
    std::vector<double> angle_deg;
    std::vector<double> cirs_db;
    std::vector<double> flat_db;
    std::vector<double> bare_db;
    double peak_db = 0.0;   // C-IRS curve maximum
    double width_deg = 0.0; // C-IRS -3 dB width around the peak
    double peak_angle_deg = 0.0;

    // Value of a curve at the grid point closest to `angle`.
    static double at(const std::vector<double> &grid, const std::vector<double> &values, double angle);
};

// G_phi(phi_i), phi_o = pi - phi_i, one curve per radius.
std::vector<GainCurve> run_gain_elevation(const SimConfig &config);
// G_theta(theta_i), theta_o = -theta_i, C-IRS designed for gain_theta_bar_deg.
std::vector<GainCurve> run_gain_azimuth(const SimConfig &config);
// Elevation sweep at the first radius for every gain frequency.
std::vector<GainCurve> run_gain_frequency(const SimConfig &config);

GainCurve gain_elevation_curve(double radius, double freq_ghz, double area_m2, double spacing_lambda,
                               double step_deg, double q);
GainCurve gain_azimuth_curve(double radius, double freq_ghz, double area_m2, double spacing_lambda,
                             double theta_bar, double step_deg, double q);

const char *mode_name(BlockageMode mode);

struct BlockagePoint
{
    double rho = 0.0;
    double r_d = 0.0;
    BlockageMode mode = BlockageMode::direct;
    long events = 0;
    long trials = 0;
    Proportion probability;
    long saturated_scenes = 0;
};

std::vector<BlockagePoint> run_blockage_sweep(const SimConfig &config);

struct SnrSeries
{
    BlockageMode mode = BlockageMode::direct;
    double radius_m = 0.0;
    double rho = 0.0;
    double r_d = 0.0;
    std::vector<double> snr_db; // trial order
    Ecdf ecdf;
    Interval median_ci;
    long relay_selected = 0; // trials where a relay entry won
    long direct_blocked = 0;
};

// Per-scene link evaluation shared by run_snr_ecdf and the tests.
struct SceneSnr
{
    double direct_db = 0.0;
    double irs_db = 0.0;
    double ris_db = 0.0;
    bool direct_blocked = false;
    int irs_relay = kNoRelay;
    int ris_relay = kNoRelay;
    static constexpr int kNoRelay = -1;
};

SceneSnr evaluate_scene(const SimConfig &config, const Scenario &scenario, double radius, double rho, double r_d,
                        long trial);

// Elements per axis used by SNR runs and the matching amplitude correction.
int snr_elements_m(const SimConfig &config);
int snr_elements_n(const SimConfig &config);
double reduced_amplitude_scale(const SimConfig &config);

std::vector<SnrSeries> run_snr_ecdf(const SimConfig &config);

struct AnglePdf
{
    Histogram elevation; // deg
    Histogram azimuth;   // deg
    long samples = 0;
    double elevation_mean_deg = 0.0;
    double elevation_std_deg = 0.0;
    double azimuth_mean_abs_deg = 0.0;
};

// Incidence angles (door frame) from TxV at every C-RIS candidate door.
AnglePdf run_angle_pdf(const SimConfig &config);

} // namespace cirsim

#endif
