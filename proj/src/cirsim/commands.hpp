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

#ifndef CIRSIM_COMMANDS_HPP
#define CIRSIM_COMMANDS_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cirsim/config.hpp"
#include "cirsim/experiments.hpp"
#include "cirsim/output.hpp"

namespace cirsim
{

std::vector<std::string> command_names();

// Validates `config`, runs the subcommand and writes its CSV/JSON files (each
// with a sidecar) into `out_dir`, which is created if needed. Returns the data
// files written, in a fixed order.
std::vector<std::filesystem::path> run_command(const SimConfig &config, std::string_view subcommand,
                                               const std::filesystem::path &out_dir);

Table gain_table(const std::vector<GainCurve> &curves, bool with_frequency);
Table gain_summary_table(const std::vector<GainCurve> &curves);
Table blockage_table(const std::vector<BlockagePoint> &points);
Table snr_summary_table(const std::vector<SnrSeries> &series);
Table phase_table(const CirsGeometry &geometry, const PhaseProfile &profile);
Table geometry_table(const CirsGeometry &geometry);
nlohmann::ordered_json scenario_json(const Scenario &scenario, const CandidateRules &rules);

// Profile selected by config.phase_kind on a door built from the config.
PhaseProfile phase_profile_from_config(const SimConfig &config, const CirsGeometry &geometry);
CirsGeometry geometry_from_config(const SimConfig &config);

} // namespace cirsim

#endif
