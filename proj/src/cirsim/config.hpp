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

#ifndef CIRSIM_CONFIG_HPP
#define CIRSIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cirsim
{

/// Every tunable of the simulator. Field names double as config keys.
struct SimConfig
{
    // radio
    double freq_ghz = 28.0;
    int K = 8;
    int Mx = 400;
    int Ny = 400;
    double element_spacing_lambda = 0.25;
    double antenna_spacing_lambda = 0.5;
    std::vector<double> radii_m{2.0, 8.0};
    double R_m = 2.0;
    double theta_bar_deg = 75.0;
    double signal_power_dbm = 10.0;
    double noise_power_dbm = -88.0;
    double q = 0.285;

    // propagation
    double sigma_sh_db = 3.0;
    double mu_b1_db = 15.0;
    double mu_b_step_db = 6.0;
    double sigma_b_db = 4.0;

    // road and vehicles
    int lanes = 5;
    double lane_width = 5.0;
    double road_length = 500.0;
    double vehicle_length = 5.0;
    double vehicle_width = 1.8;
    double vehicle_height = 1.5;
    double door_height = 0.75;
    std::string tx_placement = "start";
    double max_range = 150.0;

    // Monte-Carlo
    double rho = 10.0;
    double r_d = 50.0;
    std::vector<double> rho_list{10.0, 20.0, 30.0, 40.0};
    std::vector<double> rd_list{50.0, 100.0};
    std::vector<double> snr_rho_list{10.0, 40.0};
    long trials = 10000;
    long snr_trials = 200;
    int reduced_elements = 0;
    int bootstrap_resamples = 1000;
    int pdf_bins = 90;

    // gain figures
    double area_m2 = 1.0;
    double gain_step_deg = 0.25;
    double gain_theta_bar_deg = 60.0;
    std::vector<double> gain_freqs_ghz{28.0, 60.0, 120.0};

    // phase-dump
    std::string phase_kind = "optimal";
    double theta_i_deg = 0.0;
    double phi_i_deg = 90.0;
    double theta_o_deg = 0.0;
    double phi_o_deg = 90.0;

    std::uint64_t seed = 1;
    int threads = 0;

    // Throws Error naming the offending field.
    void validate() const;

    double lambda() const;
};

inline constexpr const char *kEnvPrefix = "CIRSIM_";

std::vector<std::string> config_keys();
std::string config_key_help(std::string_view key);

// `value` is the textual form used by flags and environment variables. dB
// quantities need an explicit unit ("3 dB", "-88 dBm"); lists are comma
// separated.
void config_set(SimConfig &config, std::string_view key, std::string_view value);
std::string config_get(const SimConfig &config, std::string_view key);

void config_merge_json(SimConfig &config, const nlohmann::json &doc);
void config_load_file(SimConfig &config, const std::string &path);
// Applies CIRSIM_<KEY> variables (key upper-cased) from `environ`.
void config_apply_env(SimConfig &config);
nlohmann::ordered_json config_to_json(const SimConfig &config);

} // namespace cirsim

#endif
